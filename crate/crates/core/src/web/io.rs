//! JSON file format for webs.

use serde::{Deserialize, Serialize};

use super::{BoundaryColor, Slot, Web, WebError};
use crate::plabic::Color;

pub const WEB_FORMAT: &str = "grasstwist-web";
const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    color: Color,
    /// Clockwise neighbors: a boundary label such as `"3"` or a corner of
    /// another vertex such as `"v2.1"`.
    slots: [String; 3],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WebFile {
    format: String,
    version: u32,
    boundary: Vec<BoundaryColor>,
    vertices: Vec<VertexEntry>,
    /// Boundary-to-boundary edges by label.
    #[serde(default)]
    paths: Vec<(usize, usize)>,
    #[serde(default)]
    loops: usize,
}

impl Web {
    fn slot_name(&self, s: usize) -> String {
        match self.slot(s) {
            Slot::Boundary(i) => (i + 1).to_string(),
            Slot::Internal { vertex, corner } => format!("v{vertex}.{corner}"),
        }
    }

    pub fn to_json(&self) -> String {
        let n = self.n();
        let file = WebFile {
            format: WEB_FORMAT.into(),
            version: VERSION,
            boundary: self.boundary.clone(),
            vertices: self
                .colors
                .iter()
                .enumerate()
                .map(|(v, &color)| VertexEntry {
                    color,
                    slots: std::array::from_fn(|c| self.slot_name(self.link[n + 3 * v + c])),
                })
                .collect(),
            paths: self.paths().into_iter().map(|(a, b)| (a + 1, b + 1)).collect(),
            loops: self.loops,
        };
        serde_json::to_string_pretty(&file).expect("web serializes")
    }

    pub fn from_json(text: &str) -> Result<Web, WebError> {
        let f: WebFile = serde_json::from_str(text).map_err(|e| WebError::Malformed(e.to_string()))?;
        if f.format != WEB_FORMAT || f.version != VERSION {
            return Err(WebError::Malformed(format!("unsupported format {} v{}", f.format, f.version)));
        }
        let n = f.boundary.len();
        let nv = f.vertices.len();
        let parse = |r: &str| -> Result<usize, WebError> {
            let bad = || WebError::Malformed(format!("bad slot reference {r:?}"));
            if let Some(rest) = r.strip_prefix('v') {
                let (v, c) = rest.split_once('.').ok_or_else(bad)?;
                let (v, c): (usize, usize) = (v.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?);
                (v < nv && c < 3).then(|| n + 3 * v + c).ok_or_else(bad)
            } else {
                let i: usize = r.parse().map_err(|_| bad())?;
                (1..=n).contains(&i).then(|| i - 1).ok_or_else(bad)
            }
        };
        let mut link = vec![usize::MAX; n + 3 * nv];
        let mut set = |a: usize, b: usize| -> Result<(), WebError> {
            for (x, y) in [(a, b), (b, a)] {
                if link[x] != usize::MAX && link[x] != y {
                    return Err(WebError::Malformed(format!("slot {x} linked twice")));
                }
                link[x] = y;
            }
            Ok(())
        };
        for (v, entry) in f.vertices.iter().enumerate() {
            for (c, r) in entry.slots.iter().enumerate() {
                set(n + 3 * v + c, parse(r)?)?;
            }
        }
        for &(a, b) in &f.paths {
            if !(1..=n).contains(&a) || !(1..=n).contains(&b) || a == b {
                return Err(WebError::Malformed(format!("bad path {a}-{b}")));
            }
            set(a - 1, b - 1)?;
        }
        for i in 0..n {
            if link[i] == usize::MAX {
                link[i] = i;
            }
        }
        if link.contains(&usize::MAX) {
            return Err(WebError::Malformed("unlinked slot".into()));
        }
        let colors = f.vertices.iter().map(|v| v.color).collect();
        Web::new(f.boundary, colors, link, f.loops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let t = super::super::tests::tripod();
        assert_eq!(Web::from_json(&t.to_json()).unwrap(), t);
        let path = Web::new(vec![BoundaryColor::Black, BoundaryColor::White], vec![], vec![1, 0], 1).unwrap();
        assert_eq!(Web::from_json(&path.to_json()).unwrap(), path);
    }

    #[test]
    fn malformed() {
        assert!(Web::from_json("{}").is_err());
        let t = super::super::tests::tripod().to_json().replace("v0", "v7");
        let t = t.replace("\"1\"", "\"9\"");
        assert!(Web::from_json(&t).is_err());
        let t = super::super::tests::tripod().to_json().replace("\"2\"", "\"1\"");
        assert!(Web::from_json(&t).is_err());
    }
}
