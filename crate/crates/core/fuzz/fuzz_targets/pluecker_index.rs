//! Index sets either fail to parse or print back to the same set.
#![no_main]

use grasstwist::algebra::PlueckerIndex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(j) = text.parse::<PlueckerIndex>() {
        assert_eq!(j.to_string().parse::<PlueckerIndex>(), Ok(j));
    }
});
