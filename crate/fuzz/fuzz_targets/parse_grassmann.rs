#![no_main]

use libfuzzer_sys::fuzz_target;
use qpalg_core::grassmann::GrassmannElement;

// First byte picks the generator count, the rest is the element text.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let n = (n % 9) as usize;
    if let Ok(e) = GrassmannElement::parse(n, text) {
        let again = GrassmannElement::parse(n, &e.to_string()).expect("printed element parses");
        assert_eq!(again, e);
    }
});
