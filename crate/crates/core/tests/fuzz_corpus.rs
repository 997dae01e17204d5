//! Replays the fuzz corpus seeds through the same round-trip checks as the
//! fuzz targets, so the parsers' contracts are exercised on stable.

use std::fs;
use std::path::PathBuf;

use qpalg_core::catalog::CatalogSpec;
use qpalg_core::grassmann::GrassmannElement;
use qpalg_core::qp::{export_json, import_json};
use qpalg_core::Scalar;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

/// Returns how many seeds parsed.
fn replay(target: &str, check: impl Fn(&str, &[u8]) -> bool) -> usize {
    seeds(target).iter().filter(|(name, data)| check(name, data)).count()
}

#[test]
fn scalar_seeds() {
    let ok = replay("parse_scalar", |_, data| {
        let Ok(text) = std::str::from_utf8(data) else { return false };
        let _ = Scalar::parse_prefix(text);
        match text.parse::<Scalar>() {
            Ok(v) => {
                assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{text:?}");
                true
            }
            Err(_) => false,
        }
    });
    assert!(ok >= 10);
}

#[test]
fn grassmann_seeds() {
    let ok = replay("parse_grassmann", |_, data| {
        let Some((&n, rest)) = data.split_first() else { return false };
        let Ok(text) = std::str::from_utf8(rest) else { return false };
        let n = (n % 9) as usize;
        match GrassmannElement::parse(n, text) {
            Ok(e) => {
                assert_eq!(GrassmannElement::parse(n, &e.to_string()).unwrap(), e, "{text:?}");
                true
            }
            Err(_) => false,
        }
    });
    assert!(ok >= 5);
}

#[test]
fn catalog_spec_seeds() {
    let ok = replay("parse_catalog_spec", |_, data| {
        let Ok(text) = std::str::from_utf8(data) else { return false };
        match text.parse::<CatalogSpec>() {
            Ok(spec) => {
                assert_eq!(spec.to_string().parse::<CatalogSpec>().unwrap(), spec, "{text:?}");
                if spec.n <= 3 {
                    spec.build().unwrap();
                }
                true
            }
            Err(_) => false,
        }
    });
    assert!(ok >= 8);
}

#[test]
fn algebra_json_seeds() {
    let ok = replay("import_algebra_json", |name, data| {
        let Ok(text) = std::str::from_utf8(data) else { return false };
        match import_json(text) {
            Ok(a) => {
                assert_eq!(import_json(&export_json(&a)).unwrap(), a, "{name}");
                true
            }
            Err(_) => false,
        }
    });
    assert_eq!(ok, 3);
}
