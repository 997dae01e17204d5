#![no_main]

use libfuzzer_sys::fuzz_target;
use qpalg_core::catalog::CatalogSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = text.parse::<CatalogSpec>() {
        let again: CatalogSpec = spec.to_string().parse().expect("printed spec parses");
        assert_eq!(again, spec);
        if spec.n <= 3 {
            spec.build().expect("small valid specs build");
        }
    }
});
