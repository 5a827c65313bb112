//! JSON graph files.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Color, PlabicError, PlabicGraph, Vertex};

pub const GRAPH_FORMAT: &str = "grasstwist-plabic";
const GRAPH_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub format: String,
    pub version: u32,
    pub k: usize,
    pub n: usize,
    pub vertices: Vec<VertexEntry>,
    /// Endpoints by vertex id; the position is the edge id.
    pub edges: Vec<(String, String)>,
    /// Clockwise edge ids around each vertex.
    pub rotations: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_label: Option<u8>,
}

impl PlabicGraph {
    pub fn to_file(&self) -> GraphFile {
        let vertices = self
            .vertices
            .iter()
            .map(|v| VertexEntry { id: v.id.clone(), color: v.color, boundary_label: v.boundary })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].id.clone(), self.vertices[b].id.clone()))
            .collect();
        let rotations =
            self.vertices.iter().zip(&self.rotation).map(|(v, r)| (v.id.clone(), r.clone())).collect();
        GraphFile { format: GRAPH_FORMAT.into(), version: GRAPH_VERSION, k: self.k, n: self.n, vertices, edges, rotations }
    }

    pub fn from_file(file: GraphFile) -> Result<PlabicGraph, PlabicError> {
        if file.format != GRAPH_FORMAT {
            return Err(PlabicError::Format(format!("unknown format {:?}", file.format)));
        }
        if file.version != GRAPH_VERSION {
            return Err(PlabicError::Format(format!("unsupported version {}", file.version)));
        }
        let mut index = HashMap::new();
        let mut vertices = Vec::with_capacity(file.vertices.len());
        for (i, v) in file.vertices.into_iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(PlabicError::DuplicateVertex(v.id));
            }
            vertices.push(Vertex { id: v.id, color: v.color, boundary: v.boundary_label });
        }
        let lookup = |id: &String| index.get(id).copied().ok_or_else(|| PlabicError::UnknownVertex(id.clone()));
        let edges = file
            .edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, PlabicError>>()?;
        let mut rotation = vec![None; vertices.len()];
        for (id, r) in file.rotations {
            let v = lookup(&id)?;
            if r.iter().any(|&e| e >= edges.len()) {
                return Err(PlabicError::Rotation(id));
            }
            rotation[v] = Some(r);
        }
        let rotation = rotation
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| PlabicError::Rotation(vertices[v].id.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        PlabicGraph::new(file.k, file.n, vertices, edges, rotation)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<PlabicGraph, PlabicError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| PlabicError::Format(e.to_string()))?;
        PlabicGraph::from_file(file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_preserves_labels() {
        let g = PlabicGraph::top_cell(3, 7);
        let h = PlabicGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g.label_set().unwrap(), h.label_set().unwrap());
        assert_eq!(h.to_json(), g.to_json());
    }

    #[test]
    fn rejects_malformed_files() {
        for bad in [
            "",
            "{}",
            r#"{"format":"x","version":1,"k":1,"n":2,"vertices":[],"edges":[],"rotations":{}}"#,
            r#"{"format":"grasstwist-plabic","version":1,"k":1,"n":2,"vertices":[],"edges":[["a","b"]],"rotations":{}}"#,
        ] {
            assert!(PlabicGraph::from_json(bad).is_err(), "{bad}");
        }
    }
}
