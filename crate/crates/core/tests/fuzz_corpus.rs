//! Replays the checked-in fuzz corpus through the round-trip properties the
//! fuzz targets assert, so the seeds stay meaningful on stable toolchains.

use std::fs;
use std::path::PathBuf;

use grasstwist::algebra::{ClusterExpression, PlueckerIndex};
use grasstwist::laurent::LaurentExpr;
use grasstwist::plabic::PlabicGraph;
use grasstwist::web::Web;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "{target} has no seeds");
    out
}

#[test]
fn graph_seeds_round_trip() {
    let mut loaded = 0;
    for (name, text) in seeds("graph_file") {
        if let Ok(g) = PlabicGraph::from_json(&text) {
            assert_eq!(PlabicGraph::from_json(&g.to_json()).unwrap().to_json(), g.to_json(), "{name}");
            loaded += 1;
        }
    }
    assert!(loaded >= 2);
}

#[test]
fn web_seeds_round_trip() {
    for (name, text) in seeds("web_file") {
        let w = Web::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Web::from_json(&w.to_json()).unwrap(), w, "{name}");
        assert!(!w.reduce().is_empty(), "{name}");
    }
}

#[test]
fn laurent_seeds_round_trip() {
    for (name, text) in seeds("laurent_text") {
        let e: LaurentExpr = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(e.to_string().parse::<LaurentExpr>().unwrap(), e, "{name}");
    }
}

#[test]
fn expression_seeds_round_trip() {
    for (name, text) in seeds("expression") {
        let e: ClusterExpression = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(e.to_string().parse::<ClusterExpression>().unwrap(), e, "{name}");
    }
}

#[test]
fn index_seeds_round_trip() {
    for (name, text) in seeds("pluecker_index") {
        let j: PlueckerIndex = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(j.to_string().parse::<PlueckerIndex>().unwrap(), j, "{name}");
    }
}
