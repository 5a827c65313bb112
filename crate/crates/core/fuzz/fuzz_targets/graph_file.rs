//! Graph files either fail to load or round-trip through JSON.
#![no_main]

use grasstwist::plabic::PlabicGraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = PlabicGraph::from_json(text) {
        let again = PlabicGraph::from_json(&g.to_json()).expect("own output loads");
        assert_eq!(again.to_json(), g.to_json());
        let _ = g.face_labels();
    }
});
