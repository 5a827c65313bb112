//! Backtracking exact cover for dimers with a prescribed boundary.

use rayon::prelude::*;

use super::{Dimer, DimerError, DimerModel, MultiDimer};
use crate::algebra::PlueckerIndex;

struct Search<'a> {
    model: &'a DimerModel,
    required: Vec<bool>,
    allowed: Vec<bool>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    found: Vec<Dimer>,
}

impl Search<'_> {
    fn free_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let g = self.model.graph();
        g.rotation(v).iter().copied().filter(move |&e| {
            let w = g.other_end(e, v);
            self.allowed[w] && !self.covered[w]
        })
    }

    /// Uncovered required vertex with the fewest usable edges.
    fn pick(&self) -> Option<(usize, usize)> {
        (0..self.required.len())
            .filter(|&v| self.required[v] && !self.covered[v])
            .map(|v| (self.free_edges(v).count(), v))
            .min()
    }

    fn run(&mut self) {
        let Some((options, v)) = self.pick() else {
            let mut edges = self.chosen.clone();
            edges.sort_unstable();
            self.found.push(Dimer(edges));
            return;
        };
        if options == 0 {
            return;
        }
        let edges: Vec<usize> = self.free_edges(v).collect();
        for e in edges {
            let w = self.model.graph().other_end(e, v);
            self.covered[v] = true;
            self.covered[w] = true;
            self.chosen.push(e);
            self.run();
            self.chosen.pop();
            self.covered[v] = false;
            self.covered[w] = false;
        }
    }
}

/// Distributes each vertex's remaining demand over its undecided edges, one
/// vertex at a time, so every multiplicity vector is produced once.
struct MultiSearch<'a> {
    model: &'a DimerModel,
    fold: u8,
    mult: Vec<Option<u8>>,
    remaining: Vec<u8>,
    undecided: Vec<usize>,
    found: Vec<MultiDimer>,
}

impl MultiSearch<'_> {
    fn open_edges(&self, v: usize) -> Vec<usize> {
        self.model.graph().rotation(v).iter().copied().filter(|&e| self.mult[e].is_none()).collect()
    }

    fn run(&mut self) {
        let g = self.model.graph();
        let next = (0..self.remaining.len()).filter(|&v| self.undecided[v] > 0).min_by_key(|&v| self.undecided[v]);
        let Some(v) = next else {
            let mult = self.mult.iter().map(|m| m.expect("decided")).collect();
            self.found.push(MultiDimer::from_multiplicities(self.fold, mult));
            return;
        };
        let edges = self.open_edges(v);
        let caps: Vec<u8> = edges.iter().map(|&e| self.remaining[g.other_end(e, v)].min(self.fold)).collect();
        self.split(v, &edges, &caps, 0, self.remaining[v]);
    }

    /// Chooses the multiplicity of `edges[i..]` summing to `left`.
    fn split(&mut self, v: usize, edges: &[usize], caps: &[u8], i: usize, left: u8) {
        if i == edges.len() {
            if left == 0 {
                let saved = self.remaining[v];
                self.remaining[v] = 0;
                self.run();
                self.remaining[v] = saved;
            }
            return;
        }
        let room: u8 = caps[i..].iter().sum();
        if room < left {
            return;
        }
        let g = self.model.graph();
        let e = edges[i];
        let w = g.other_end(e, v);
        for m in 0..=caps[i].min(left) {
            // w must still be able to reach its demand through its other open edges
            let after = self.remaining[w] - m;
            let w_open = self.undecided[w] - 1;
            if w_open == 0 && after != 0 {
                continue;
            }
            self.mult[e] = Some(m);
            self.remaining[w] = after;
            self.undecided[w] -= 1;
            self.undecided[v] -= 1;
            self.split(v, edges, caps, i + 1, left - m);
            self.undecided[v] += 1;
            self.undecided[w] += 1;
            self.remaining[w] += m;
            self.mult[e] = None;
        }
    }
}

impl DimerModel {
    /// All `fold`-fold dimers covering boundary label `i` exactly
    /// `coverage[i - 1]` times, in canonical order. Independent of single
    /// dimer enumeration, so it can audit overlay constructions.
    pub fn multi_dimers(&self, fold: u8, coverage: &[u8]) -> Result<Vec<MultiDimer>, DimerError> {
        let g = self.graph();
        if coverage.len() != self.n() || coverage.iter().any(|&c| c > fold) {
            return Err(DimerError::Invalid(format!("coverage {coverage:?} for {}-fold dimers", fold)));
        }
        let nv = g.vertices().len();
        let remaining = (0..nv)
            .map(|v| match g.vertices()[v].boundary {
                Some(i) => coverage[i as usize - 1],
                None => fold,
            })
            .collect();
        let undecided = (0..nv).map(|v| g.rotation(v).len()).collect();
        let mut s = MultiSearch {
            model: self,
            fold,
            mult: vec![None; self.edge_count()],
            remaining,
            undecided,
            found: Vec::new(),
        };
        if (0..nv).all(|v| s.undecided[v] > 0 || s.remaining[v] == 0) {
            s.run();
        }
        s.found.sort();
        Ok(s.found)
    }

    fn search(&self, boundary: Option<PlueckerIndex>) -> Vec<Dimer> {
        let g = self.graph();
        let nv = g.vertices().len();
        let in_boundary = |v: usize| match (g.vertices()[v].boundary, boundary) {
            (None, _) => true,
            (Some(i), Some(j)) => j.contains(i),
            (Some(_), None) => false,
        };
        let required: Vec<bool> = (0..nv).map(in_boundary).collect();
        let allowed = match boundary {
            Some(_) => required.clone(),
            None => vec![true; nv],
        };
        let mut s = Search { model: self, required, allowed, covered: vec![false; nv], chosen: Vec::new(), found: Vec::new() };
        s.run();
        s.found.sort();
        s.found
    }

    /// All dimers with boundary condition `j`, canonically ordered.
    pub fn dimers(&self, j: PlueckerIndex) -> Result<Vec<Dimer>, DimerError> {
        if j.len() != self.k() || j.check(self.k(), self.n()).is_err() {
            return Err(DimerError::BoundarySize(j));
        }
        Ok(self.search(Some(j)))
    }

    /// Every dimer regardless of boundary condition.
    pub fn all_dimers(&self) -> Vec<Dimer> {
        self.search(None)
    }

    /// Dimers for every `k`-subset, computed in parallel.
    pub fn dimers_by_boundary(&self) -> Vec<(PlueckerIndex, Vec<Dimer>)> {
        let js = PlueckerIndex::all(self.k(), self.n());
        js.into_par_iter().map(|j| (j, self.search(Some(j)))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: include or exclude each edge in order.
    fn brute_force(model: &DimerModel) -> usize {
        let g = model.graph();
        fn go(g: &crate::plabic::PlabicGraph, e: usize, cover: &mut Vec<u8>) -> usize {
            if e == g.edges().len() {
                let ok = (0..cover.len()).all(|v| g.is_boundary(v) || cover[v] == 1);
                return ok as usize;
            }
            let (a, b) = g.edges()[e];
            let mut total = go(g, e + 1, cover);
            if cover[a] == 0 && cover[b] == 0 {
                cover[a] = 1;
                cover[b] = 1;
                total += go(g, e + 1, cover);
                cover[a] = 0;
                cover[b] = 0;
            }
            total
        }
        go(g, 0, &mut vec![0; g.vertices().len()])
    }

    #[test]
    fn multi_dimers_match_overlays() {
        use std::collections::BTreeSet;
        let m = DimerModel::top_cell(3, 6);
        let by = m.dimers_by_boundary();
        let cover = |js: &[PlueckerIndex]| -> Vec<u8> {
            (1..=6u8).map(|i| js.iter().filter(|j| j.contains(i)).count() as u8).collect()
        };
        for target in [cover(&[PlueckerIndex::of(&[1, 2, 3]), PlueckerIndex::of(&[4, 5, 6])]),
                       cover(&[PlueckerIndex::of(&[1, 3, 5]), PlueckerIndex::of(&[2, 4, 6])]),
                       cover(&[PlueckerIndex::of(&[1, 2, 4]), PlueckerIndex::of(&[1, 5, 6])])] {
            let mut overlays = BTreeSet::new();
            for (a, da) in &by {
                for (b, db) in &by {
                    if cover(&[*a, *b]) != target {
                        continue;
                    }
                    for x in da {
                        for y in db {
                            overlays.insert(MultiDimer::overlay(m.edge_count(), &[x, y]));
                        }
                    }
                }
            }
            let direct: BTreeSet<MultiDimer> = m.multi_dimers(2, &target).unwrap().into_iter().collect();
            assert_eq!(direct, overlays);
        }
        let singles: Vec<Vec<u8>> = by.iter().map(|(j, _)| cover(&[*j])).collect();
        for ((_, ds), c) in by.iter().zip(&singles) {
            assert_eq!(m.multi_dimers(1, c).unwrap().len(), ds.len());
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (k, n) in [(2, 4), (2, 5), (3, 6)] {
            let m = DimerModel::top_cell(k, n);
            assert!(m.edge_count() <= 40);
            let all = m.all_dimers();
            assert_eq!(all.len(), brute_force(&m), "Gr({k},{n})");
            let by_j: usize = m.dimers_by_boundary().iter().map(|(_, d)| d.len()).sum();
            assert_eq!(by_j, all.len());
        }
    }

    #[test]
    fn boundary_condition_is_respected_and_sorted() {
        let m = DimerModel::top_cell(3, 7);
        for (j, ds) in m.dimers_by_boundary() {
            assert!(!ds.is_empty(), "top cell has a dimer for {j}");
            assert!(ds.windows(2).all(|w| w[0] < w[1]));
            assert!(ds.iter().all(|d| m.boundary_of(d) == j));
        }
    }

    #[test]
    fn wrong_size_boundary_is_rejected() {
        let m = DimerModel::top_cell(3, 6);
        assert!(m.dimers("12".parse().unwrap()).is_err());
        assert!(m.dimers("178".parse().unwrap()).is_err());
    }
}
