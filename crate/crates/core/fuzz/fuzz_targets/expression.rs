//! Expression strings either fail to parse or print back to equal values.
#![no_main]

use grasstwist::algebra::ClusterExpression;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(e) = text.parse::<ClusterExpression>() {
        let again: ClusterExpression = e.to_string().parse().expect("own output parses");
        assert_eq!(again, e);
        let _ = e.canonical();
    }
});
