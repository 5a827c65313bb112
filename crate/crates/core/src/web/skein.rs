//! Reduction of webs to non-elliptic ones by the loop, bigon and square
//! relations at q = 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{Slot, Web};

/// Integer combination of canonical webs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WebSum {
    terms: BTreeMap<Web, i64>,
}

impl WebSum {
    pub fn single(w: Web, c: i64) -> WebSum {
        let mut s = WebSum::default();
        s.add(w, c);
        s
    }

    pub fn add(&mut self, w: Web, c: i64) {
        let w = w.canonical();
        let v = self.terms.get(&w).copied().unwrap_or(0) + c;
        if v == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, v);
        }
    }

    fn add_scaled(&mut self, other: &WebSum, c: i64) {
        for (w, &v) in &other.terms {
            *self.terms.entry(w.clone()).or_insert(0) += c * v;
        }
        self.terms.retain(|_, v| *v != 0);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Web, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a web, compared up to isotopy.
    pub fn coefficient(&self, w: &Web) -> i64 {
        self.terms.get(&w.canonical()).copied().unwrap_or(0)
    }
}

impl fmt::Display for WebSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, c)) in self.terms().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} * {w}")?;
        }
        Ok(())
    }
}

impl Web {
    /// Removes the listed vertices and reconnects strands through the given
    /// pairs of their slots. Strands closing up among removed slots become
    /// loops.
    fn rewire(&self, removed: &[usize], pairs: &[(usize, usize)]) -> Web {
        let n = self.n();
        let nv = self.colors.len();
        let mut gone = vec![false; nv];
        for &v in removed {
            gone[v] = true;
        }
        let dead = |s: usize| matches!(self.slot(s), Slot::Internal { vertex, .. } if gone[vertex]);
        let mut via: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in pairs {
            via.insert(a, b);
            via.insert(b, a);
        }
        let mut rank = vec![usize::MAX; nv];
        let mut colors = Vec::with_capacity(nv - removed.len());
        for v in 0..nv {
            if !gone[v] {
                rank[v] = colors.len();
                colors.push(self.colors[v]);
            }
        }
        let map = |s: usize| match self.slot(s) {
            Slot::Boundary(i) => i,
            Slot::Internal { vertex, corner } => n + 3 * rank[vertex] + corner,
        };
        let mut link = vec![0; n + 3 * colors.len()];
        let mut used: HashMap<usize, bool> = HashMap::new();
        for s in 0..self.link.len() {
            if dead(s) {
                continue;
            }
            let mut t = self.link[s];
            while dead(t) {
                used.insert(t, true);
                let u = via[&t];
                used.insert(u, true);
                t = self.link[u];
            }
            link[map(s)] = map(t);
        }
        let mut loops = self.loops;
        let mut keys: Vec<usize> = via.keys().copied().collect();
        keys.sort_unstable();
        for r in keys {
            if used.contains_key(&r) {
                continue;
            }
            loops += 1;
            let mut t = r;
            loop {
                used.insert(t, true);
                let u = via[&t];
                used.insert(u, true);
                t = self.link[u];
                if t == r {
                    break;
                }
            }
        }
        Web::raw(self.boundary.clone(), colors, link, loops)
    }

    /// Splits off components that do not reach the boundary.
    pub(crate) fn split_closed(&self) -> (Web, Vec<Web>) {
        let comp = self.components();
        let pieces = comp.iter().copied().max().map_or(0, |m| m + 1);
        let lone = pieces == 2 && !comp.contains(&0) && self.attached_count() == 0;
        if pieces <= 1 || lone {
            return (self.clone(), Vec::new());
        }
        let n = self.n();
        let part = |id: usize, boundary: bool| -> Web {
            let keep: Vec<usize> = (0..comp.len()).filter(|&v| comp[v] == id).collect();
            let mut rank = vec![usize::MAX; comp.len()];
            for (r, &v) in keep.iter().enumerate() {
                rank[v] = r;
            }
            let base = if boundary { n } else { 0 };
            let map = |s: usize| match self.slot(s) {
                Slot::Boundary(i) => i,
                Slot::Internal { vertex, corner } => base + 3 * rank[vertex] + corner,
            };
            let mut link: Vec<usize> = (0..base).map(|i| map(self.link[i])).collect();
            link.extend(std::iter::repeat_n(0, 3 * keep.len()));
            for &v in &keep {
                for c in 0..3 {
                    let s = n + 3 * v + c;
                    link[map(s)] = map(self.link[s]);
                }
            }
            let boundary_colors = if boundary { self.boundary.clone() } else { Vec::new() };
            let colors = keep.iter().map(|&v| self.colors[v]).collect();
            Web::raw(boundary_colors, colors, link, if boundary { self.loops } else { 0 })
        };
        let open = part(0, true);
        let closed = (1..pieces).map(|id| part(id, false)).collect();
        (open, closed)
    }

    /// Expresses the web as a combination of non-elliptic webs.
    pub fn reduce(&self) -> WebSum {
        reduce_memo(self, &mut Reducer { memo: HashMap::new(), last: false })
    }

    /// Value of a web with no boundary, e.g. 3 for a loop.
    pub fn closed_value(&self) -> i64 {
        debug_assert_eq!(self.attached_count(), 0);
        self.reduce().terms().map(|(_, c)| c).sum()
    }
}

/// Memo table plus the face choice: the first small face or the last.
struct Reducer {
    memo: HashMap<Web, WebSum>,
    last: bool,
}

fn normalize(w: &Web, memo: &mut Reducer) -> (i64, Web) {
    let (open, closed) = w.split_closed();
    let mut scalar = 3i64.pow(open.loops as u32);
    for c in closed {
        scalar *= reduce_memo(&c, memo).terms().map(|(_, v)| v).sum::<i64>();
    }
    let bare = Web::raw(open.boundary.clone(), open.colors.clone(), open.link.clone(), 0);
    (scalar, bare.canonical())
}

fn reduce_memo(w: &Web, memo: &mut Reducer) -> WebSum {
    let (scalar, w) = normalize(w, memo);
    if scalar == 0 {
        return WebSum::default();
    }
    if let Some(s) = memo.memo.get(&w) {
        let mut out = WebSum::default();
        out.add_scaled(s, scalar);
        return out;
    }
    let faces = w.interior_faces();
    let small = faces.iter().filter(|f| f.len() <= 4);
    let smallest = if memo.last { small.rev().min_by_key(|f| f.len()) } else { small.min_by_key(|f| f.len()) };
    let result = match smallest {
        None => WebSum::single(w.clone(), 1),
        Some(face) => {
            let vertex = |s: usize| match w.slot(s) {
                Slot::Internal { vertex, .. } => vertex,
                Slot::Boundary(_) => unreachable!("interior faces avoid the boundary"),
            };
            let verts: Vec<usize> = face.iter().map(|&s| vertex(s)).collect();
            let outer: Vec<usize> = face
                .iter()
                .enumerate()
                .map(|(i, &s)| {
                    let back = w.link[face[(i + face.len() - 1) % face.len()]];
                    let v = verts[i];
                    (0..3).map(|c| w.vertex_slot(v, c)).find(|&t| t != s && t != back).expect("third slot")
                })
                .collect();
            let mut out = WebSum::default();
            if face.len() == 2 {
                let next = w.rewire(&verts, &[(outer[0], outer[1])]);
                out.add_scaled(&reduce_memo(&next, memo), 2);
            } else {
                for pairs in [[(outer[0], outer[1]), (outer[2], outer[3])], [(outer[1], outer[2]), (outer[3], outer[0])]] {
                    let next = w.rewire(&verts, &pairs);
                    out.add_scaled(&reduce_memo(&next, memo), 1);
                }
            }
            out
        }
    };
    memo.memo.insert(w, result.clone());
    let mut out = WebSum::default();
    out.add_scaled(&result, scalar);
    out
}

#[cfg(test)]
mod tests {
    use super::super::BoundaryColor;
    use super::*;
    use crate::plabic::Color::{Black as B, White as W};

    /// Theta graph: two vertices joined by three edges.
    fn theta() -> Web {
        Web::new(vec![], vec![W, B], vec![5, 4, 3, 2, 1, 0], 0).unwrap()
    }

    #[test]
    fn closed_values() {
        assert_eq!(theta().closed_value(), 6);
        let loop_only = Web::new(vec![], vec![], vec![], 2).unwrap();
        assert_eq!(loop_only.closed_value(), 9);
    }

    #[test]
    fn bigon_on_a_path() {
        // boundary B at 1, W at 2; a bigon sits on the strand between them
        let bd = vec![BoundaryColor::Black, BoundaryColor::White];
        // v0 white: slots 2,3,4 ; v1 black: slots 5,6,7
        let w = Web::new(bd.clone(), vec![W, B], vec![2, 7, 0, 6, 5, 4, 3, 1], 0).unwrap();
        let r = w.reduce();
        let path = Web::new(bd, vec![], vec![1, 0], 0).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(&path), 2);
    }

    #[test]
    fn face_order_does_not_matter() {
        use crate::algebra::PlueckerIndex;
        use crate::dimer::{DimerModel, MultiDimer};
        let m = DimerModel::top_cell(3, 8);
        let pick = |j: &[u8]| m.dimers(PlueckerIndex::of(j)).unwrap();
        let mut squares = 0;
        for x in pick(&[1, 3, 5]) {
            for y in pick(&[2, 4, 7]) {
                for z in pick(&[3, 6, 8]).iter().take(4) {
                    let w = m.web_of(&MultiDimer::overlay(m.edge_count(), &[&x, &y, z])).unwrap();
                    squares += w.interior_faces().iter().filter(|f| f.len() == 4).count();
                    let other = reduce_memo(&w, &mut Reducer { memo: HashMap::new(), last: true });
                    assert_eq!(w.reduce(), other, "{w}");
                }
            }
        }
        assert!(squares > 0);
    }

    #[test]
    fn nonelliptic_webs_are_fixed() {
        let t = super::super::tests::tripod();
        let r = t.reduce();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(&t), 1);
    }
}
