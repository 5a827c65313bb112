//! Web files either fail to load or round-trip; small webs also reduce.
#![no_main]

use grasstwist::web::Web;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = Web::from_json(text) {
        let again = Web::from_json(&w.to_json()).expect("own output loads");
        assert_eq!(again, w);
        if w.internal_count() <= 12 {
            let _ = w.reduce();
        }
    }
});
