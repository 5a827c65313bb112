//! Webs from triple dimers and matchings from double dimers.

use std::fmt;

use super::{BoundaryColor, Web, WebError};
use crate::dimer::{DimerModel, MultiDimer};

/// Boundary pairing traced by a double dimer, with its closed cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonCrossingMatching {
    /// Label pairs `(a, b)` with `a < b`, sorted.
    pub pairs: Vec<(u8, u8)>,
    /// Closed cycles of singly covered edges, each worth a factor 2.
    pub cycles: usize,
}

impl fmt::Display for NonCrossingMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        write!(f, "{} cycles={}", ps.join(""), self.cycles)
    }
}

/// Follows a chain of vertices covered by exactly two singly or doubly
/// covered edges, starting along edge `e` away from `x`. Returns the far
/// vertex and the edge used to reach it. A cycle stops back at `x`.
fn walk_chain(
    model: &DimerModel,
    live: &dyn Fn(usize) -> bool,
    is_relay: &dyn Fn(usize) -> bool,
    seen: &mut [bool],
    mut x: usize,
    mut e: usize,
) -> (usize, usize) {
    let g = model.graph();
    let start = x;
    loop {
        let y = g.other_end(e, x);
        if !is_relay(y) || y == start {
            return (y, e);
        }
        seen[y] = true;
        let next = g.rotation(y).iter().copied().find(|&f| f != e && live(f)).expect("relay has two edges");
        x = y;
        e = next;
    }
}

impl DimerModel {
    /// Web of a triple dimer: keep edges covered once or twice, color each
    /// boundary point by its coverage, turn relay cycles into loops and
    /// smooth relay chains into single edges.
    pub fn web_of(&self, d: &MultiDimer) -> Result<Web, WebError> {
        if d.fold() != 3 {
            return Err(WebError::ArityMismatch { expected: 3, found: d.fold() });
        }
        self.validate(d).map_err(|e| WebError::Malformed(e.to_string()))?;
        let g = self.graph();
        let n = self.n();
        let live = |e: usize| matches!(d.multiplicity(e), 1 | 2);
        let degree = |v: usize| g.rotation(v).iter().filter(|&&e| live(e)).count();
        let mut index = vec![usize::MAX; g.vertices().len()];
        let mut colors = Vec::new();
        for v in 0..g.vertices().len() {
            if !g.is_boundary(v) && degree(v) == 3 {
                index[v] = colors.len();
                colors.push(g.color(v));
            }
        }
        let boundary: Vec<BoundaryColor> = self
            .boundary_multiset(d)
            .into_iter()
            .map(|c| match c {
                1 => BoundaryColor::Black,
                2 => BoundaryColor::White,
                _ => BoundaryColor::Isolated,
            })
            .collect();
        let label = |v: usize| g.vertices()[v].boundary.map(|b| b as usize - 1);
        let slot_of = |v: usize, e: usize| -> usize {
            match label(v) {
                Some(i) => i,
                None => {
                    let corners: Vec<usize> = g.rotation(v).iter().copied().filter(|&f| live(f)).collect();
                    n + 3 * index[v] + corners.iter().position(|&f| f == e).expect("edge at vertex")
                }
            }
        };
        let is_relay = |v: usize| !g.is_boundary(v) && degree(v) == 2;
        let mut link: Vec<usize> = (0..n + 3 * colors.len()).collect();
        let mut seen = vec![false; g.vertices().len()];
        let starts = (0..g.vertices().len()).filter(|&v| g.is_boundary(v) || index[v] != usize::MAX);
        for v in starts {
            for &e in g.rotation(v).iter().filter(|&&e| live(e)) {
                let (w, f) = walk_chain(self, &live, &is_relay, &mut seen, v, e);
                let (a, b) = (slot_of(v, e), slot_of(w, f));
                link[a] = b;
                link[b] = a;
            }
        }
        let mut loops = 0;
        for v in 0..g.vertices().len() {
            if is_relay(v) && !seen[v] {
                loops += 1;
                seen[v] = true;
                let e = g.rotation(v).iter().copied().find(|&e| live(e)).expect("relay edge");
                walk_chain(self, &live, &is_relay, &mut seen, v, e);
            }
        }
        Web::new(boundary, colors, link, loops)
    }

    /// Pairing of boundary points by the singly covered paths of a double
    /// dimer, and the number of singly covered cycles.
    pub fn matching_of(&self, d: &MultiDimer) -> Result<NonCrossingMatching, WebError> {
        if d.fold() != 2 {
            return Err(WebError::ArityMismatch { expected: 2, found: d.fold() });
        }
        self.validate(d).map_err(|e| WebError::Malformed(e.to_string()))?;
        let g = self.graph();
        let live = |e: usize| d.multiplicity(e) == 1;
        let is_relay = |v: usize| !g.is_boundary(v) && g.rotation(v).iter().any(|&e| live(e));
        let mut seen = vec![false; g.vertices().len()];
        let mut pairs = Vec::new();
        for i in 1..=self.n() as u8 {
            let b = g.boundary_vertex(i);
            if let Some(&e) = g.rotation(b).iter().find(|&&e| live(e)) {
                let (w, _) = walk_chain(self, &live, &is_relay, &mut seen, b, e);
                let j = g.vertices()[w].boundary.expect("paths end on the boundary");
                if i < j {
                    pairs.push((i, j));
                }
            }
        }
        let mut cycles = 0;
        for v in 0..g.vertices().len() {
            if is_relay(v) && !seen[v] {
                cycles += 1;
                seen[v] = true;
                let e = g.rotation(v).iter().copied().find(|&e| live(e)).expect("cycle edge");
                walk_chain(self, &live, &is_relay, &mut seen, v, e);
            }
        }
        pairs.sort_unstable();
        Ok(NonCrossingMatching { pairs, cycles })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PlueckerIndex;
    use crate::dimer::Dimer;

    #[test]
    fn single_dimer_tripled_is_empty_web() {
        let m = DimerModel::top_cell(3, 6);
        let d = m.dimers(PlueckerIndex::of(&[1, 3, 5])).unwrap().remove(0);
        let t = MultiDimer::overlay(m.edge_count(), &[&d, &d, &d]);
        let w = m.web_of(&t).unwrap();
        assert_eq!(w.internal_count(), 0);
        assert_eq!(w.loops(), 0);
        assert!(w.boundary().iter().all(|&c| c == BoundaryColor::Isolated));
    }

    #[test]
    fn doubled_dimer_has_no_cycles() {
        let m = DimerModel::top_cell(3, 6);
        for d in m.dimers(PlueckerIndex::of(&[2, 4, 6])).unwrap() {
            let t = MultiDimer::overlay(m.edge_count(), &[&d, &d]);
            let nc = m.matching_of(&t).unwrap();
            assert_eq!(nc, NonCrossingMatching { pairs: vec![], cycles: 0 });
        }
    }

    #[test]
    fn fold_is_checked() {
        let m = DimerModel::top_cell(2, 4);
        let d: Dimer = m.all_dimers().remove(0);
        let single = MultiDimer::overlay(m.edge_count(), &[&d]);
        assert!(matches!(m.web_of(&single), Err(WebError::ArityMismatch { .. })));
        assert!(matches!(m.matching_of(&single), Err(WebError::ArityMismatch { .. })));
    }
}
