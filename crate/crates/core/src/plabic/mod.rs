//! Plabic graphs: bipartite graphs embedded in a disk with black boundary
//! vertices labeled clockwise.

mod build;
mod io;
mod moves;

pub use io::{GraphFile, GRAPH_FORMAT};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::PlueckerIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlabicError {
    #[error("malformed graph file: {0}")]
    Format(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("edge {0} joins vertices of the same color")]
    NotBipartite(usize),
    #[error("boundary problem: {0}")]
    Boundary(String),
    #[error("rotation at {0:?} is not a cyclic order of its edges")]
    Rotation(String),
    #[error("embedding is not planar in a disk: V - E + F = {0}")]
    NotPlanar(i64),
    #[error("vertex {0:?} is not connected to the boundary")]
    Disconnected(String),
    #[error("white minus black internal vertices is {found}, expected k = {expected}")]
    WrongRank { expected: usize, found: i64 },
    #[error("graph is not reduced: {0}")]
    NotReduced(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("trip from {0} does not reach the boundary")]
    ClosedTrip(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub color: Color,
    pub boundary: Option<u8>,
}

/// Half-edge: `2 * edge + direction`; direction 0 runs from the first
/// endpoint to the second. Ids at or above `2 * edge_count` are boundary arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn reverse(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

/// Faces of the disk embedding, traced with the face on the left.
#[derive(Clone, Debug)]
pub struct Faces {
    pub walks: Vec<Vec<Dart>>,
    pub face_of_dart: Vec<usize>,
    pub exterior: usize,
}

/// An embedded plabic graph together with its derived faces.
#[derive(Clone, Debug)]
pub struct PlabicGraph {
    k: usize,
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
    boundary: Vec<usize>,
    faces: Faces,
}

/// A boundary-to-boundary walk following the turning rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trip {
    pub source: u8,
    pub target: u8,
    pub darts: Vec<Dart>,
}

impl PlabicGraph {
    /// Assembles a graph and checks it: bipartite, black univalent boundary,
    /// consistent rotations, planar and connected, with `k` matching the
    /// vertex count difference.
    pub fn new(
        k: usize,
        n: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, PlabicError> {
        if n < 2 || k == 0 || k >= n || n > 31 {
            return Err(PlabicError::Format(format!("need 1 <= k < n <= 31, got k={k}, n={n}")));
        }
        if rotation.len() != vertices.len() {
            return Err(PlabicError::Format("one rotation per vertex".into()));
        }
        let mut boundary = vec![usize::MAX; n];
        for (v, vx) in vertices.iter().enumerate() {
            if let Some(b) = vx.boundary {
                let slot = (b as usize).checked_sub(1).filter(|&i| i < n).ok_or_else(|| {
                    PlabicError::Boundary(format!("label {b} outside 1..={n}"))
                })?;
                if boundary[slot] != usize::MAX {
                    return Err(PlabicError::Boundary(format!("label {b} used twice")));
                }
                if vx.color != Color::Black {
                    return Err(PlabicError::Boundary(format!("boundary vertex {:?} is white", vx.id)));
                }
                boundary[slot] = v;
            }
        }
        if let Some(i) = boundary.iter().position(|&v| v == usize::MAX) {
            return Err(PlabicError::Boundary(format!("label {} missing", i + 1)));
        }
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(PlabicError::Format(format!("edge {e} has a bad endpoint")));
            }
            if vertices[a].color == vertices[b].color {
                return Err(PlabicError::NotBipartite(e));
            }
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            incident[a].push(e);
            incident[b].push(e);
        }
        for (v, r) in rotation.iter().enumerate() {
            let mut a = r.clone();
            a.sort_unstable();
            let mut b = incident[v].clone();
            b.sort_unstable();
            if a != b {
                return Err(PlabicError::Rotation(vertices[v].id.clone()));
            }
            if vertices[v].boundary.is_some() && r.len() != 1 {
                return Err(PlabicError::Boundary(format!(
                    "boundary vertex {:?} has degree {}",
                    vertices[v].id,
                    r.len()
                )));
            }
        }
        let whites = vertices.iter().filter(|v| v.color == Color::White).count() as i64;
        let blacks = vertices.iter().filter(|v| v.color == Color::Black && v.boundary.is_none()).count()
            as i64;
        if whites - blacks != k as i64 {
            return Err(PlabicError::WrongRank { expected: k, found: whites - blacks });
        }
        let mut g = PlabicGraph {
            k,
            n,
            vertices,
            edges,
            rotation,
            boundary,
            faces: Faces { walks: Vec::new(), face_of_dart: Vec::new(), exterior: 0 },
        };
        g.check_connected()?;
        g.faces = g.trace_faces();
        let chi = g.vertices.len() as i64 - (g.edges.len() + n) as i64 + g.faces.walks.len() as i64;
        if chi != 2 {
            return Err(PlabicError::NotPlanar(chi));
        }
        Ok(g)
    }

    fn check_connected(&self) -> Result<(), PlabicError> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack: Vec<usize> = self.boundary.clone();
        for &b in &self.boundary {
            seen[b] = true;
        }
        while let Some(v) = stack.pop() {
            for &e in &self.rotation[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(PlabicError::Disconnected(self.vertices[v].id.clone())),
            None => Ok(()),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Clockwise incident edges of a vertex.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Vertex carrying boundary label `i` (1-based).
    pub fn boundary_vertex(&self, i: u8) -> usize {
        self.boundary[i as usize - 1]
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.vertices[v].boundary.is_some()
    }

    pub fn color(&self, v: usize) -> Color {
        self.vertices[v].color
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    fn arc_base(&self) -> usize {
        2 * self.edges.len()
    }

    /// Is this dart a boundary arc rather than a graph half-edge?
    pub fn is_arc(&self, d: Dart) -> bool {
        d.0 >= self.arc_base()
    }

    pub fn tail(&self, d: Dart) -> usize {
        if self.is_arc(d) {
            let i = (d.0 - self.arc_base()) / 2;
            // arc i runs from label i+1 to label i+2
            if d.0.is_multiple_of(2) {
                self.boundary[i]
            } else {
                self.boundary[(i + 1) % self.n]
            }
        } else {
            let (a, b) = self.edges[d.edge()];
            if d.0.is_multiple_of(2) {
                a
            } else {
                b
            }
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.reverse())
    }

    /// Outgoing dart along edge `e` from `v`.
    pub fn dart_from(&self, e: usize, v: usize) -> Dart {
        if self.edges[e].0 == v {
            Dart(2 * e)
        } else {
            Dart(2 * e + 1)
        }
    }

    /// Clockwise outgoing darts at `v`, including boundary arcs.
    fn full_rotation(&self, v: usize) -> Vec<Dart> {
        match self.vertices[v].boundary {
            Some(b) => {
                let i = b as usize - 1;
                let base = self.arc_base();
                let next_arc = Dart(base + 2 * i);
                let prev_arc = Dart(base + 2 * ((i + self.n - 1) % self.n) + 1);
                let mut r = vec![next_arc];
                r.extend(self.rotation[v].iter().map(|&e| self.dart_from(e, v)));
                r.push(prev_arc);
                r
            }
            None => self.rotation[v].iter().map(|&e| self.dart_from(e, v)).collect(),
        }
    }

    fn trace_faces(&self) -> Faces {
        let total = self.arc_base() + 2 * self.n;
        let rots: Vec<Vec<Dart>> = (0..self.vertices.len()).map(|v| self.full_rotation(v)).collect();
        let mut pos: HashMap<Dart, (usize, usize)> = HashMap::new();
        for (v, r) in rots.iter().enumerate() {
            for (i, d) in r.iter().enumerate() {
                pos.insert(*d, (v, i));
            }
        }
        let mut face_of_dart = vec![usize::MAX; total];
        let mut walks = Vec::new();
        for start in 0..total {
            if face_of_dart[start] != usize::MAX {
                continue;
            }
            let f = walks.len();
            let mut walk = Vec::new();
            let mut d = Dart(start);
            while face_of_dart[d.0] == usize::MAX {
                face_of_dart[d.0] = f;
                walk.push(d);
                let (v, i) = pos[&d.reverse()];
                let r = &rots[v];
                d = r[(i + 1) % r.len()];
            }
            walks.push(walk);
        }
        let exterior = face_of_dart[self.arc_base()];
        Faces { walks, face_of_dart, exterior }
    }

    /// Inner faces, i.e. every face but the one outside the disk.
    pub fn inner_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.walks.len()).filter(move |&f| f != self.faces.exterior)
    }

    /// Faces touching the boundary circle.
    pub fn is_boundary_face(&self, f: usize) -> bool {
        f != self.faces.exterior && self.faces.walks[f].iter().any(|&d| self.is_arc(d))
    }

    /// Face to the left of a dart.
    pub fn face_left(&self, d: Dart) -> usize {
        self.faces.face_of_dart[d.0]
    }

    /// Vertices met along a face, one per graph half-edge.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces.walks[f].iter().filter(|&&d| !self.is_arc(d)).map(|&d| self.tail(d)).collect()
    }

    /// White vertex occurrences around a face.
    pub fn white_count(&self, f: usize) -> usize {
        self.face_vertices(f).into_iter().filter(|&v| self.color(v) == Color::White).count()
    }

    /// The trip starting at boundary label `i`: maximal right turns at black
    /// vertices, maximal left turns at white ones.
    pub fn trip(&self, i: u8) -> Result<Trip, PlabicError> {
        let start = self.boundary_vertex(i);
        let mut d = self.dart_from(self.rotation[start][0], start);
        let mut darts = vec![d];
        for _ in 0..=2 * self.edges.len() {
            let b = self.head(d);
            if let Some(t) = self.vertices[b].boundary {
                return Ok(Trip { source: i, target: t, darts });
            }
            let r = &self.rotation[b];
            let at = r.iter().position(|&e| e == d.edge()).expect("incident");
            let len = r.len();
            let next = match self.vertices[b].color {
                Color::Black => r[(at + len - 1) % len],
                Color::White => r[(at + 1) % len],
            };
            d = self.dart_from(next, b);
            darts.push(d);
        }
        Err(PlabicError::ClosedTrip(i))
    }

    pub fn trips(&self) -> Result<Vec<Trip>, PlabicError> {
        (1..=self.n as u8).map(|i| self.trip(i)).collect()
    }

    /// Trip permutation: `perm[i - 1]` is where the trip from `i` ends.
    pub fn trip_permutation(&self) -> Result<Vec<u8>, PlabicError> {
        Ok(self.trips()?.into_iter().map(|t| t.target).collect())
    }

    /// Faces on the left of a trip: those reachable from the faces directly
    /// left of its darts without crossing the trip.
    fn left_region(&self, trip: &Trip) -> Result<Vec<bool>, PlabicError> {
        let nf = self.faces.walks.len();
        let mut on_trip = vec![false; self.edges.len()];
        for d in &trip.darts {
            on_trip[d.edge()] = true;
        }
        let mut left = vec![false; nf];
        let mut stack = Vec::new();
        for &d in &trip.darts {
            let f = self.face_left(d);
            if !left[f] {
                left[f] = true;
                stack.push(f);
            }
        }
        while let Some(f) = stack.pop() {
            for &d in &self.faces.walks[f] {
                if self.is_arc(d) || on_trip[d.edge()] {
                    continue;
                }
                let g = self.face_left(d.reverse());
                if !left[g] {
                    left[g] = true;
                    stack.push(g);
                }
            }
        }
        if trip.darts.iter().any(|&d| left[self.face_left(d.reverse())]) {
            return Err(PlabicError::NotReduced(format!(
                "trip {} -> {} has a face on both sides",
                trip.source, trip.target
            )));
        }
        Ok(left)
    }

    /// Label of each face (`None` outside the disk): targets of the trips
    /// having the face on their left. Errors unless the labels are distinct
    /// `k`-sets, one per face of a reduced graph.
    pub fn face_labels(&self) -> Result<Vec<Option<PlueckerIndex>>, PlabicError> {
        let nf = self.faces.walks.len();
        let mut masks = vec![0u32; nf];
        for trip in self.trips()? {
            let left = self.left_region(&trip)?;
            for (f, l) in left.into_iter().enumerate() {
                if l {
                    masks[f] |= 1 << trip.target;
                }
            }
        }
        let labels: Vec<Option<PlueckerIndex>> = (0..nf)
            .map(|f| (f != self.faces.exterior).then(|| PlueckerIndex::from_mask(masks[f])))
            .collect();
        let mut seen = std::collections::HashSet::new();
        for l in labels.iter().flatten() {
            if l.len() != self.k {
                return Err(PlabicError::NotReduced(format!("face label {l} has size {}", l.len())));
            }
            if !seen.insert(*l) {
                return Err(PlabicError::NotReduced(format!("label {l} repeats")));
            }
        }
        let expected = self.k * (self.n - self.k) + 1;
        if seen.len() != expected {
            return Err(PlabicError::NotReduced(format!(
                "{} faces, a reduced top-cell graph has {expected}",
                seen.len()
            )));
        }
        Ok(labels)
    }

    /// Face carrying a given label.
    pub fn face_with_label(&self, j: PlueckerIndex) -> Result<Option<usize>, PlabicError> {
        Ok(self.face_labels()?.iter().position(|l| *l == Some(j)))
    }

    /// Face labels as a sorted list.
    pub fn label_set(&self) -> Result<Vec<PlueckerIndex>, PlabicError> {
        let mut v: Vec<PlueckerIndex> = self.face_labels()?.into_iter().flatten().collect();
        v.sort();
        Ok(v)
    }

    /// Internal vertex counts by color.
    pub fn internal_counts(&self) -> (usize, usize) {
        let internal = self.vertices.iter().filter(|v| v.boundary.is_none());
        let (b, w): (Vec<_>, Vec<_>) = internal.partition(|v| v.color == Color::Black);
        (b.len(), w.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_count_matches_euler_for_top_cells() {
        for (k, n) in [(2, 5), (3, 6), (3, 7), (3, 8), (4, 8)] {
            let g = PlabicGraph::top_cell(k, n);
            assert_eq!(g.inner_faces().count(), k * (n - k) + 1, "Gr({k},{n})");
        }
    }

    #[test]
    fn rejects_white_boundary_and_bad_rank() {
        let g = PlabicGraph::top_cell(2, 4);
        let mut vs = g.vertices.clone();
        vs[g.boundary_vertex(1)].color = Color::White;
        let err = PlabicGraph::new(2, 4, vs, g.edges.clone(), g.rotation.clone()).unwrap_err();
        assert!(matches!(err, PlabicError::NotBipartite(_) | PlabicError::Boundary(_)));
        let err = PlabicGraph::new(3, 4, g.vertices.clone(), g.edges.clone(), g.rotation.clone())
            .unwrap_err();
        assert!(matches!(err, PlabicError::WrongRank { expected: 3, found: 2 }));
    }

    #[test]
    fn rejects_nonplanar_rotation() {
        let g = PlabicGraph::top_cell(3, 6);
        let mut rot = g.rotation.clone();
        let v = (0..g.vertices.len()).find(|&v| g.degree(v) == 3).unwrap();
        rot[v].swap(0, 1);
        let err = PlabicGraph::new(3, 6, g.vertices.clone(), g.edges.clone(), rot).unwrap_err();
        assert!(matches!(err, PlabicError::NotPlanar(_)), "{err}");
    }
}
