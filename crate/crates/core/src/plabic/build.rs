//! Canonical reduced graph for the top cell, built on a `k x (n-k)` grid.

use std::collections::HashMap;

use super::{Color, PlabicGraph, Vertex};

struct Layout {
    vertices: Vec<Vertex>,
    pos: Vec<(f64, f64)>,
    adj: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl Layout {
    fn add(&mut self, id: String, color: Color, p: (f64, f64)) -> usize {
        let v = self.vertices.len();
        self.index.insert(id.clone(), v);
        self.vertices.push(Vertex { id, color, boundary: None });
        self.pos.push(p);
        self.adj.push(Vec::new());
        v
    }

    fn join(&mut self, a: &str, b: &str) {
        let (a, b) = (self.index[a], self.index[b]);
        self.adj[a].push(b);
        self.adj[b].push(a);
    }
}

impl PlabicGraph {
    /// Reduced plabic graph of the top cell of `Gr(k, n)` with trip
    /// permutation `i -> i + k`. Each grid box holds a black vertex (north
    /// and east edges) and a white one (south and west edges).
    pub fn top_cell(k: usize, n: usize) -> PlabicGraph {
        assert!(k >= 1 && k < n && n <= 31, "need 1 <= k < n <= 31");
        let m = n - k;
        let mut l = Layout { vertices: Vec::new(), pos: Vec::new(), adj: Vec::new(), index: HashMap::new() };
        for r in 1..=k {
            for c in 1..=m {
                let (x, y) = (c as f64, -(r as f64));
                l.add(format!("x{r}.{c}"), Color::Black, (x + 0.2, y + 0.2));
                l.add(format!("y{r}.{c}"), Color::White, (x - 0.2, y - 0.2));
                l.join(&format!("x{r}.{c}"), &format!("y{r}.{c}"));
                if c > 1 {
                    l.join(&format!("x{r}.{}", c - 1), &format!("y{r}.{c}"));
                }
                if r > 1 {
                    l.join(&format!("y{}.{c}", r - 1), &format!("x{r}.{c}"));
                }
            }
        }
        let mut order = Vec::with_capacity(n);
        for r in 1..=k {
            let y = -(r as f64);
            l.add(format!("r{r}"), Color::Black, ((m + 1) as f64, y));
            l.add(format!("rw{r}"), Color::White, (m as f64 + 0.6, y));
            l.join(&format!("x{r}.{m}"), &format!("rw{r}"));
            l.join(&format!("rw{r}"), &format!("r{r}"));
            order.push(l.index[&format!("r{r}")]);
        }
        for c in (1..=m).rev() {
            l.add(format!("d{c}"), Color::Black, (c as f64, -((k + 1) as f64)));
            l.join(&format!("y{k}.{c}"), &format!("d{c}"));
            order.push(l.index[&format!("d{c}")]);
        }
        order.rotate_right(m);
        for (i, &v) in order.iter().enumerate() {
            l.vertices[v].boundary = Some(i as u8 + 1);
        }

        let mut alive = vec![true; l.vertices.len()];
        loop {
            let dead: Vec<usize> = (0..l.vertices.len())
                .filter(|&v| alive[v] && l.vertices[v].boundary.is_none() && l.adj[v].len() <= 1)
                .collect();
            if dead.is_empty() {
                break;
            }
            for v in dead {
                alive[v] = false;
                for u in std::mem::take(&mut l.adj[v]) {
                    l.adj[u].retain(|&w| w != v);
                }
            }
        }

        let remap: Vec<Option<usize>> = alive
            .iter()
            .scan(0usize, |next, &a| {
                Some(a.then(|| {
                    *next += 1;
                    *next - 1
                }))
            })
            .collect();
        let mut edges = Vec::new();
        let mut edge_id = HashMap::new();
        for v in 0..l.vertices.len() {
            for &u in &l.adj[v] {
                if v < u {
                    edge_id.insert((v, u), edges.len());
                    edges.push((remap[v].unwrap(), remap[u].unwrap()));
                }
            }
        }
        let rotation = (0..l.vertices.len())
            .filter(|&v| alive[v])
            .map(|v| {
                let (x, y) = l.pos[v];
                let mut nbrs = l.adj[v].clone();
                nbrs.sort_by(|&a, &b| {
                    let ta = -(l.pos[a].1 - y).atan2(l.pos[a].0 - x);
                    let tb = -(l.pos[b].1 - y).atan2(l.pos[b].0 - x);
                    ta.total_cmp(&tb)
                });
                nbrs.into_iter().map(|u| edge_id[&(v.min(u), v.max(u))]).collect()
            })
            .collect();
        let vertices = l.vertices.into_iter().zip(&alive).filter(|(_, &a)| a).map(|(v, _)| v).collect();
        PlabicGraph::new(k, n, vertices, edges, rotation).expect("grid construction is a valid plabic graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PlueckerIndex;

    fn labels(g: &PlabicGraph) -> Vec<String> {
        g.label_set().unwrap().iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn trips_shift_by_k() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 6), (3, 7), (3, 8), (4, 9)] {
            let g = PlabicGraph::top_cell(k, n);
            let perm = g.trip_permutation().unwrap();
            for i in 1..=n {
                assert_eq!(perm[i - 1] as usize, (i - 1 + k) % n + 1, "Gr({k},{n})");
            }
        }
    }

    #[test]
    fn gr25_labels() {
        let g = PlabicGraph::top_cell(2, 5);
        let mut want: Vec<PlueckerIndex> =
            ["12", "23", "34", "45", "15", "25", "35"].iter().map(|s| s.parse().unwrap()).collect();
        want.sort();
        assert_eq!(g.label_set().unwrap(), want);
    }

    #[test]
    fn boundary_faces_carry_frozen_labels() {
        for (k, n) in [(3, 6), (3, 7), (4, 8)] {
            let g = PlabicGraph::top_cell(k, n);
            let labs = g.face_labels().unwrap();
            let frozen: Vec<bool> = g.inner_faces().map(|f| labs[f].unwrap().is_frozen(n)).collect();
            let boundary: Vec<bool> = g.inner_faces().map(|f| g.is_boundary_face(f)).collect();
            assert_eq!(frozen, boundary);
            assert_eq!(frozen.iter().filter(|&&b| b).count(), n);
        }
    }

    #[test]
    fn gr37_labels() {
        let g = PlabicGraph::top_cell(3, 7);
        let got = labels(&g);
        for want in ["(123)", "(234)", "(345)", "(456)", "(567)", "(167)", "(127)"] {
            assert!(got.contains(&want.to_string()), "{want} in {got:?}");
        }
        assert_eq!(got.len(), 13);
    }
}
