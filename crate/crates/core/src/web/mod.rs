//! SL3 webs in a disk: construction from dimers, skein reduction,
//! compatibility colorings and exhaustive enumeration.

mod coloring;
mod enumerate;
mod from_dimer;
mod io;
mod kk;
mod skein;

pub use coloring::{boundary_for_product, Compatibility};
pub use enumerate::{dominant_walk_count, enumerate_nonelliptic, interior_minima, reflect_about, MAX_ENUMERATION_POINTS};
pub use from_dimer::NonCrossingMatching;
pub use io::WEB_FORMAT;
pub use kk::{kk_two_row, Tableau};
pub use skein::WebSum;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plabic::Color;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error("malformed web: {0}")]
    Malformed(String),
    #[error("expected a {expected}-fold dimer, found {found}-fold")]
    ArityMismatch { expected: u8, found: u8 },
    #[error("enumeration is limited to {limit} boundary points, got {found}")]
    SizeGuard { limit: usize, found: usize },
    #[error("tableau is not standard: {0}")]
    InvalidTableau(String),
    #[error("boundary coloring does not match: {0}")]
    IncompatibleBoundary(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryColor {
    Black,
    White,
    Isolated,
}

impl BoundaryColor {
    pub fn letter(self) -> char {
        match self {
            BoundaryColor::Black => 'B',
            BoundaryColor::White => 'W',
            BoundaryColor::Isolated => '-',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'B' | 'b' => Some(BoundaryColor::Black),
            'W' | 'w' => Some(BoundaryColor::White),
            '-' | '.' | 'I' | 'i' => Some(BoundaryColor::Isolated),
            _ => None,
        }
    }

    /// Color an internal vertex must have to attach here.
    fn partner(self) -> Option<Color> {
        match self {
            BoundaryColor::Black => Some(Color::White),
            BoundaryColor::White => Some(Color::Black),
            BoundaryColor::Isolated => None,
        }
    }
}

/// Parses strings such as `"BBBBBBBW"` or `"B-BW"`.
pub fn parse_boundary(s: &str) -> Result<Vec<BoundaryColor>, WebError> {
    s.trim()
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| BoundaryColor::from_letter(c).ok_or_else(|| WebError::Malformed(format!("boundary letter {c:?}"))))
        .collect()
}

/// A web stored as half-edge slots. Boundary point `i` (0-based) owns slot
/// `i`; internal vertex `v` owns slots `n + 3v .. n + 3v + 3` in clockwise
/// order. `link` pairs the two slots of every edge; an isolated boundary
/// point links to itself. Vertexless loops are only counted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Web {
    boundary: Vec<BoundaryColor>,
    colors: Vec<Color>,
    link: Vec<usize>,
    loops: usize,
}

/// Owner of a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Boundary(usize),
    Internal { vertex: usize, corner: usize },
}

impl Web {
    pub fn new(
        boundary: Vec<BoundaryColor>,
        colors: Vec<Color>,
        link: Vec<usize>,
        loops: usize,
    ) -> Result<Web, WebError> {
        let w = Web { boundary, colors, link, loops };
        w.validate()?;
        Ok(w)
    }

    pub(crate) fn raw(boundary: Vec<BoundaryColor>, colors: Vec<Color>, link: Vec<usize>, loops: usize) -> Web {
        Web { boundary, colors, link, loops }
    }

    /// All boundary points isolated, nothing inside.
    pub fn empty(n: usize) -> Web {
        Web { boundary: vec![BoundaryColor::Isolated; n], colors: Vec::new(), link: (0..n).collect(), loops: 0 }
    }

    pub fn n(&self) -> usize {
        self.boundary.len()
    }

    pub fn boundary(&self) -> &[BoundaryColor] {
        &self.boundary
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn link(&self) -> &[usize] {
        &self.link
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn internal_count(&self) -> usize {
        self.colors.len()
    }

    pub fn slot_count(&self) -> usize {
        self.link.len()
    }

    pub fn slot(&self, s: usize) -> Slot {
        let n = self.n();
        if s < n {
            Slot::Boundary(s)
        } else {
            Slot::Internal { vertex: (s - n) / 3, corner: (s - n) % 3 }
        }
    }

    pub fn vertex_slot(&self, v: usize, corner: usize) -> usize {
        self.n() + 3 * v + corner
    }

    /// Next slot clockwise around the same internal vertex.
    fn clockwise(&self, s: usize) -> usize {
        let n = self.n();
        n + 3 * ((s - n) / 3) + ((s - n) % 3 + 1) % 3
    }

    /// Boundary-to-boundary edges, as 0-based pairs `(i, j)` with `i < j`.
    pub fn paths(&self) -> Vec<(usize, usize)> {
        (0..self.n()).filter(|&i| self.link[i] > i && self.link[i] < self.n()).map(|i| (i, self.link[i])).collect()
    }

    pub fn has_path(&self) -> bool {
        !self.paths().is_empty()
    }

    /// Internal edges plus paths, each once.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.link.len()).filter(move |&s| self.link[s] > s).map(move |s| (s, self.link[s]))
    }

    fn validate(&self) -> Result<(), WebError> {
        let n = self.n();
        let bad = |m: String| Err(WebError::Malformed(m));
        if self.link.len() != n + 3 * self.colors.len() {
            return bad(format!("{} slots for {} boundary points and {} vertices", self.link.len(), n, self.colors.len()));
        }
        for (s, &t) in self.link.iter().enumerate() {
            if t >= self.link.len() || self.link[t] != s {
                return bad(format!("slot {s} is not paired"));
            }
            match self.slot(s) {
                Slot::Boundary(i) => {
                    let isolated = self.boundary[i] == BoundaryColor::Isolated;
                    if isolated != (t == s) {
                        return bad(format!("boundary point {} attachment disagrees with its color", i + 1));
                    }
                    if !isolated && self.color_at(t) != self.boundary[i].partner() {
                        return bad(format!("boundary point {} attaches to the wrong color", i + 1));
                    }
                }
                Slot::Internal { vertex, .. } => {
                    if t == s {
                        return bad(format!("internal slot {s} is unpaired"));
                    }
                    if let Slot::Internal { vertex: u, .. } = self.slot(t) {
                        if self.colors[u] == self.colors[vertex] {
                            return bad(format!("edge between vertices {vertex} and {u} is monochromatic"));
                        }
                    }
                }
            }
        }
        let chi = self.euler_defects();
        if let Some(c) = chi.into_iter().find(|&c| c != 2) {
            return bad(format!("embedding is not planar (V - E + F = {c})"));
        }
        Ok(())
    }

    /// Color seen from the far side of a slot: internal vertex color, or the
    /// partner color a boundary endpoint demands.
    fn color_at(&self, s: usize) -> Option<Color> {
        match self.slot(s) {
            Slot::Internal { vertex, .. } => Some(self.colors[vertex]),
            Slot::Boundary(i) => match self.boundary[i] {
                BoundaryColor::Black => Some(Color::Black),
                BoundaryColor::White => Some(Color::White),
                BoundaryColor::Isolated => None,
            },
        }
    }

    /// Face walks with the face on the left. Darts are slots, then forward
    /// boundary arcs `i -> i+1`, then backward arcs `i -> i-1`.
    pub(crate) fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let s_count = self.link.len();
        let fwd = |i: usize| s_count + i;
        let bwd = |i: usize| s_count + n + i;
        let is_dart = |d: usize| d >= s_count || self.link[d] != d;
        let next = |d: usize| -> usize {
            if d < s_count {
                let t = self.link[d];
                if t < n {
                    bwd(t)
                } else {
                    self.clockwise(t)
                }
            } else if d < s_count + n {
                fwd((d - s_count + 1) % n)
            } else {
                let j = (d - s_count - n + n - 1) % n;
                if self.link[j] != j {
                    j
                } else {
                    bwd(j)
                }
            }
        };
        let total = s_count + if n > 0 { 2 * n } else { 0 };
        let mut seen = vec![false; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if seen[start] || !is_dart(start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = next(d);
            }
            faces.push(walk);
        }
        faces
    }

    /// Faces bounded only by web edges (no boundary arc), as slot walks.
    pub fn interior_faces(&self) -> Vec<Vec<usize>> {
        let s_count = self.link.len();
        self.faces().into_iter().filter(|f| f.iter().all(|&d| d < s_count)).collect()
    }

    /// Component id of every internal vertex; boundary-connected ones get 0.
    pub(crate) fn components(&self) -> Vec<usize> {
        let n = self.n();
        let mut comp = vec![usize::MAX; self.colors.len()];
        let mut next_id = 1;
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut visit = |start_vertices: Vec<usize>, id: usize, comp: &mut Vec<usize>| {
            for v in start_vertices {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    queue.push_back(v);
                }
            }
            while let Some(v) = queue.pop_front() {
                for c in 0..3 {
                    if let Slot::Internal { vertex, .. } = self.slot(self.link[n + 3 * v + c]) {
                        if comp[vertex] == usize::MAX {
                            comp[vertex] = id;
                            queue.push_back(vertex);
                        }
                    }
                }
            }
        };
        let roots: Vec<usize> = (0..n)
            .filter_map(|i| match self.slot(self.link[i]) {
                Slot::Internal { vertex, .. } => Some(vertex),
                Slot::Boundary(_) => None,
            })
            .collect();
        visit(roots, 0, &mut comp);
        for v in 0..self.colors.len() {
            if comp[v] == usize::MAX {
                visit(vec![v], next_id, &mut comp);
                next_id += 1;
            }
        }
        comp
    }

    /// Euler characteristic of each connected piece: the boundary-connected
    /// part with the boundary circle, then each closed component.
    fn euler_defects(&self) -> Vec<i64> {
        let n = self.n();
        let comp = self.components();
        let pieces = comp.iter().copied().max().map_or(1, |m| m + 1).max(1);
        let mut v = vec![0i64; pieces];
        let mut e = vec![0i64; pieces];
        let mut f = vec![0i64; pieces];
        v[0] += n as i64;
        e[0] += n as i64;
        for &c in &comp {
            v[c] += 1;
        }
        let piece_of = |s: usize| match self.slot(s) {
            Slot::Boundary(_) => 0,
            Slot::Internal { vertex, .. } => comp[vertex],
        };
        for (a, _) in self.edges() {
            e[piece_of(a)] += 1;
        }
        for face in self.faces() {
            let d = face[0];
            f[if d < self.link.len() { piece_of(d) } else { 0 }] += 1;
        }
        if n == 0 && !comp.contains(&0) {
            return (1..pieces).map(|c| v[c] - e[c] + f[c]).collect();
        }
        (0..pieces).map(|c| v[c] - e[c] + f[c]).collect()
    }

    /// Connected components in the sense of webs: internal components plus
    /// paths, ignoring the boundary circle.
    pub fn component_count(&self) -> usize {
        let n = self.n();
        let comp = self.components();
        let mut parent: Vec<usize> = (0..n + self.colors.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let node = |s: usize| match self.slot(s) {
            Slot::Boundary(i) => i,
            Slot::Internal { vertex, .. } => n + vertex,
        };
        for (a, b) in self.edges() {
            let (x, y) = (find(&mut parent, node(a)), find(&mut parent, node(b)));
            parent[x] = y;
        }
        let _ = comp;
        let mut roots: Vec<usize> = (0..n)
            .filter(|&i| self.boundary[i] != BoundaryColor::Isolated)
            .chain(n..n + self.colors.len())
            .map(|x| find(&mut parent, x))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Independent cycles of the web graph (its interior faces when planar).
    pub fn cycle_count(&self) -> usize {
        self.interior_faces().len()
    }

    /// Are all interior faces at least hexagons and there are no loops?
    pub fn is_nonelliptic(&self) -> bool {
        self.loops == 0 && self.interior_faces().iter().all(|f| f.len() >= 6) && !self.components().iter().any(|&c| c > 0)
    }

    /// Attached (non-isolated) boundary points.
    pub fn attached_count(&self) -> usize {
        self.boundary.iter().filter(|&&c| c != BoundaryColor::Isolated).count()
    }

    /// Relabels internal vertices by breadth-first search from the boundary
    /// in label order; the slot used to enter a vertex becomes its corner 0.
    /// Webs related by isotopy fixing the boundary get equal canonical forms.
    pub fn canonical(&self) -> Web {
        let n = self.n();
        let nv = self.colors.len();
        let mut order: Vec<usize> = Vec::with_capacity(nv);
        let mut shift = vec![usize::MAX; nv];
        let mut queue = VecDeque::new();
        let enter = |s: usize, order: &mut Vec<usize>, shift: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            if let Slot::Internal { vertex, corner } = self.slot(s) {
                if shift[vertex] == usize::MAX {
                    shift[vertex] = corner;
                    order.push(vertex);
                    queue.push_back(vertex);
                }
            }
        };
        for i in 0..n {
            enter(self.link[i], &mut order, &mut shift, &mut queue);
            while let Some(v) = queue.pop_front() {
                for c in 0..3 {
                    let s = n + 3 * v + (shift[v] + c) % 3;
                    enter(self.link[s], &mut order, &mut shift, &mut queue);
                }
            }
        }
        for v in 0..nv {
            if shift[v] == usize::MAX {
                shift[v] = 0;
                order.push(v);
                queue.push_back(v);
                while let Some(u) = queue.pop_front() {
                    for c in 0..3 {
                        let s = n + 3 * u + (shift[u] + c) % 3;
                        enter(self.link[s], &mut order, &mut shift, &mut queue);
                    }
                }
            }
        }
        let mut rank = vec![0; nv];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let map = |s: usize| match self.slot(s) {
            Slot::Boundary(i) => i,
            Slot::Internal { vertex, corner } => n + 3 * rank[vertex] + (corner + 3 - shift[vertex]) % 3,
        };
        let mut link = vec![0; self.link.len()];
        for (s, &t) in self.link.iter().enumerate() {
            link[map(s)] = map(t);
        }
        let colors = order.iter().map(|&v| self.colors[v]).collect();
        Web { boundary: self.boundary.clone(), colors, link, loops: self.loops }
    }

    /// Rotates labels: point `i` moves to `i + r`.
    pub fn rotated(&self, r: usize) -> Web {
        let n = self.n();
        self.relabeled(|i| (i + r) % n, false)
    }

    /// Reflects labels `i -> (a - i) mod n` (0-based), reversing rotations.
    pub fn reflected(&self, a: usize) -> Web {
        let n = self.n();
        self.relabeled(|i| (a + n - i % n) % n, true)
    }

    fn relabeled(&self, f: impl Fn(usize) -> usize, mirror: bool) -> Web {
        let n = self.n();
        let map = |s: usize| match self.slot(s) {
            Slot::Boundary(i) => f(i),
            Slot::Internal { vertex, corner } => n + 3 * vertex + if mirror { (3 - corner) % 3 } else { corner },
        };
        let mut boundary = vec![BoundaryColor::Isolated; n];
        for i in 0..n {
            boundary[f(i)] = self.boundary[i];
        }
        let mut link = vec![0; self.link.len()];
        for (s, &t) in self.link.iter().enumerate() {
            link[map(s)] = map(t);
        }
        Web { boundary, colors: self.colors.clone(), link, loops: self.loops }.canonical()
    }

    /// Inserts isolated points so that point `i` lands at `positions[i]`.
    pub fn embed(&self, positions: &[usize], n: usize) -> Web {
        let old = self.n();
        let map = |s: usize| if s < old { positions[s] } else { s - old + n };
        let mut boundary = vec![BoundaryColor::Isolated; n];
        let mut link: Vec<usize> = (0..n).collect();
        link.extend(std::iter::repeat_n(0, 3 * self.colors.len()));
        for i in 0..old {
            boundary[positions[i]] = self.boundary[i];
        }
        for (s, &t) in self.link.iter().enumerate() {
            link[map(s)] = map(t);
        }
        Web { boundary, colors: self.colors.clone(), link, loops: self.loops }.canonical()
    }

    /// Drops isolated points; returns the smaller web and the kept labels.
    pub fn strip_isolated(&self) -> (Web, Vec<usize>) {
        let n = self.n();
        let kept: Vec<usize> = (0..n).filter(|&i| self.boundary[i] != BoundaryColor::Isolated).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &i) in kept.iter().enumerate() {
            pos[i] = k;
        }
        let m = kept.len();
        let map = |s: usize| if s < n { pos[s] } else { s - n + m };
        let boundary = kept.iter().map(|&i| self.boundary[i]).collect();
        let mut link = vec![0; m + 3 * self.colors.len()];
        for (s, &t) in self.link.iter().enumerate() {
            if s >= n || pos[s] != usize::MAX {
                link[map(s)] = map(t);
            }
        }
        (Web { boundary, colors: self.colors.clone(), link, loops: self.loops }, kept)
    }

    /// Compact text: boundary letters, then each vertex with its neighbors.
    /// Neighbor `3` is boundary point 3; `v2.1` is corner 1 of vertex 2.
    pub fn describe(&self) -> String {
        let n = self.n();
        let name = |s: usize| match self.slot(s) {
            Slot::Boundary(i) => (i + 1).to_string(),
            Slot::Internal { vertex, corner } => format!("v{vertex}.{corner}"),
        };
        let mut out: String = self.boundary.iter().map(|c| c.letter()).collect();
        for (v, c) in self.colors.iter().enumerate() {
            let letter = if *c == Color::Black { 'B' } else { 'W' };
            let ns: Vec<String> = (0..3).map(|j| name(self.link[n + 3 * v + j])).collect();
            out.push_str(&format!(" v{v}:{letter}({})", ns.join(",")));
        }
        for (i, j) in self.paths() {
            out.push_str(&format!(" {}-{}", i + 1, j + 1));
        }
        if self.loops > 0 {
            out.push_str(&format!(" loops:{}", self.loops));
        }
        out
    }
}

impl fmt::Display for Web {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// A single white vertex joined to three black points.
    pub(crate) fn tripod() -> Web {
        Web::new(vec![BoundaryColor::Black; 3], vec![Color::White], vec![3, 4, 5, 0, 1, 2], 0).unwrap()
    }

    #[test]
    fn tripod_is_valid_and_nonelliptic() {
        let t = tripod();
        assert!(t.is_nonelliptic());
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.cycle_count(), 0);
        assert_eq!(t.canonical(), t);
    }

    #[test]
    fn rejects_monochrome_and_unpaired() {
        let bad = Web::new(vec![BoundaryColor::White; 3], vec![Color::White], vec![3, 4, 5, 0, 1, 2], 0);
        assert!(bad.is_err());
        let bad = Web::new(vec![BoundaryColor::Black; 3], vec![Color::White], vec![3, 4, 5, 0, 2, 1], 0);
        assert!(bad.is_err());
    }

    #[test]
    fn crossings_are_not_planar() {
        // a tripod whose rotation runs against the boundary order
        let w = Web::new(vec![BoundaryColor::Black; 3], vec![Color::White], vec![3, 5, 4, 0, 2, 1], 0);
        assert!(w.is_err());
        // a path 1-3 crossing a strand from 2
        let crossing = Web::new(
            vec![BoundaryColor::Black, BoundaryColor::Black, BoundaryColor::White, BoundaryColor::Black, BoundaryColor::Black],
            vec![Color::White],
            vec![2, 5, 0, 6, 7, 1, 3, 4],
            0,
        );
        assert!(crossing.is_err());
    }

    #[test]
    fn canonical_form_forgets_vertex_numbering() {
        // two tripods on 1,2,3 and 4,5,6, numbered both ways
        let b = vec![BoundaryColor::Black; 6];
        let w1 = Web::new(b.clone(), vec![Color::White; 2], vec![6, 7, 8, 9, 10, 11, 0, 1, 2, 3, 4, 5], 0).unwrap();
        let w2 = Web::new(b, vec![Color::White; 2], vec![10, 11, 9, 8, 6, 7, 4, 5, 3, 2, 0, 1], 0).unwrap();
        assert_eq!(w1.canonical(), w2.canonical());
        assert_eq!(w1.rotated(3), w1.canonical());
    }
}
