use qpalg_core::catalog::standard_sweep;
use qpalg_core::locality::{
    example_oracle, extract_kth_products, lemmas, locality_order, nth_products_agreement, single, witt_oracle,
    BracketOracle, CatalogOracle, Verdict,
};
use qpalg_core::{Error, Scalar};

#[test]
fn witt_products() {
    let o = witt_oracle();
    let r = locality_order(&o, 0, 0, 8, 4).unwrap();
    assert_eq!(r.verdict, Verdict::Local { order: 2, certified: true });
    let t = extract_kth_products(&o, 0, 0, 8, 4).unwrap();
    for m in t.offsets(1) {
        assert_eq!(t.component(1, m).unwrap(), single(0, m + 1, Scalar::int(2)));
    }
    for s in t.offsets(0) {
        assert_eq!(t.component(0, s).unwrap(), single(0, s, Scalar::int(-s)));
    }
    assert_eq!(t.component(2, 0).unwrap(), Default::default());
}

#[test]
fn heisenberg_is_order_two_but_uncertified() {
    let o = example_oracle("heisenberg_5_5", None).unwrap();
    let r = locality_order(&o, 0, 0, 6, 4).unwrap();
    assert_eq!(r.order(), Some(2));
    assert_eq!(r.label(), "window evidence");
    let t = extract_kth_products(&o, 0, 0, 6, 4).unwrap();
    for s in t.offsets(1) {
        let want = if s == -1 { single(1, 0, Scalar::one()) } else { Default::default() };
        assert_eq!(t.component(1, s).unwrap(), want);
    }
    assert!(t.offsets(0).iter().all(|&s| t.component(0, s).unwrap().is_empty()));
}

#[test]
fn nonlocal_family_verdicts() {
    let o = example_oracle("nonlocal_2_7", None).unwrap();
    let idx = |n: &str| o.index_of(n).unwrap();
    let naive = locality_order(&o, idx("L"), idx("G"), 10, 6).unwrap();
    assert_eq!(naive.label(), "not local up to 10");
    assert!(naive.witness.is_some());
    assert!(matches!(extract_kth_products(&o, idx("L"), idx("G"), 10, 6), Err(Error::Extraction(_))));
    for x in ["L", "F", "G_tilde"] {
        for y in ["L", "F", "G_tilde"] {
            let r = locality_order(&o, idx(x), idx(y), 8, 6).unwrap();
            assert!(r.certified(), "{x} {y}: {r:?}");
            assert!(r.order().unwrap() <= 3);
        }
    }
}

#[test]
fn small_windows_are_rejected() {
    let o = witt_oracle();
    assert!(matches!(locality_order(&o, 0, 0, 10, 4), Err(Error::Window(_))));
    assert!(matches!(locality_order(&o, 0, 3, 2, 4), Err(Error::Index(_))));
}

#[test]
fn extraction_round_trips() {
    let o = example_oracle("nonfinite_5_6", Some(Scalar::frac(2, 3))).unwrap();
    let n = o.distributions().len();
    for x in 0..n {
        for y in 0..n {
            let t = extract_kth_products(&o, x, y, 8, 5).unwrap();
            for p in -5..=5 {
                for q in -5..=5 {
                    if let Some(v) = t.synthesize(p, q) {
                        assert_eq!(v, o.bracket(x, p, y, q));
                    }
                }
            }
        }
    }
}

#[test]
fn catalog_fields_match_nth_products() {
    for spec in standard_sweep() {
        let a = spec.build().unwrap();
        let r = nth_products_agreement(&a, 4).unwrap();
        assert!(r.passed(), "{spec}: {r:?}");
        assert!(r.max_order <= 2);
    }
}

#[test]
fn catalog_fields_are_t_covariant() {
    for spec in ["K:2", "S:2:alpha=i", "CK6"] {
        let a = spec.parse::<qpalg_core::catalog::CatalogSpec>().unwrap().build().unwrap();
        let o = CatalogOracle::new(&a).unwrap();
        for x in 0..a.dim() {
            assert!(qpalg_core::locality::t_covariance(&o, &o.l_minus_one(), x, 4).is_none(), "{spec} {x}");
        }
    }
}

#[test]
fn lemma_suites_at_full_size() {
    for r in lemmas::all_suites(100, 2024).unwrap() {
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.cases, 100);
    }
}
