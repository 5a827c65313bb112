//! Laurent text either fails to parse or prints back to an equal value.
#![no_main]

use grasstwist::laurent::LaurentExpr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(e) = text.parse::<LaurentExpr>() {
        let again: LaurentExpr = e.to_string().parse().expect("own output parses");
        assert_eq!(again, e);
    }
});
