#![no_main]

use libfuzzer_sys::fuzz_target;
use qpalg_core::Scalar;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text.parse::<Scalar>() {
        let again: Scalar = v.to_string().parse().expect("printed scalar parses");
        assert_eq!(again, v);
    }
    let _ = Scalar::parse_prefix(text);
});
