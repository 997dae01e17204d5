#![no_main]

use libfuzzer_sys::fuzz_target;
use qpalg_core::qp::{export_json, import_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = import_json(text) {
        let again = import_json(&export_json(&a)).expect("exported algebra imports");
        assert_eq!(again, a);
    }
});
