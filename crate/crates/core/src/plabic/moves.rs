//! Local moves: bivalent contraction and the square move.

use crate::algebra::PlueckerIndex;

use super::{Color, PlabicError, PlabicGraph, Vertex};

/// Editable copy of a graph; removed items become `None`.
struct Draft {
    k: usize,
    n: usize,
    vertices: Vec<Option<Vertex>>,
    edges: Vec<Option<(usize, usize)>>,
    rotation: Vec<Vec<usize>>,
}

impl Draft {
    fn of(g: &PlabicGraph) -> Draft {
        Draft {
            k: g.k,
            n: g.n,
            vertices: g.vertices.iter().cloned().map(Some).collect(),
            edges: g.edges.iter().copied().map(Some).collect(),
            rotation: g.rotation.clone(),
        }
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e].expect("live edge");
        if a == v {
            b
        } else {
            a
        }
    }

    fn internal(&self, v: usize) -> bool {
        self.vertices[v].as_ref().is_some_and(|x| x.boundary.is_none())
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&e| self.other_end(e, v)).collect()
    }

    fn add_vertex(&mut self, id: String, color: Color) -> usize {
        self.vertices.push(Some(Vertex { id, color, boundary: None }));
        self.rotation.push(Vec::new());
        self.vertices.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push(Some((a, b)));
        self.edges.len() - 1
    }

    fn fresh_id(&self, base: &str) -> String {
        (0..)
            .map(|i| format!("{base}'{i}"))
            .find(|id| !self.vertices.iter().flatten().any(|v| &v.id == id))
            .expect("some id is free")
    }

    /// Removes bivalent `x` by merging its two neighbors, if that keeps the
    /// graph simple and leaves the boundary alone.
    fn try_contract(&mut self, x: usize) -> bool {
        if !self.internal(x) || self.rotation[x].len() != 2 {
            return false;
        }
        let (e1, e2) = (self.rotation[x][0], self.rotation[x][1]);
        let (u, w) = (self.other_end(e1, x), self.other_end(e2, x));
        if u == w || !self.internal(u) || !self.internal(w) {
            return false;
        }
        let nu = self.neighbors(u);
        if self.neighbors(w).iter().any(|y| *y != x && nu.contains(y)) {
            return false;
        }
        let rw = &self.rotation[w];
        let i = rw.iter().position(|&e| e == e2).expect("incident");
        let seq: Vec<usize> = rw[i + 1..].iter().chain(&rw[..i]).copied().collect();
        for &e in &seq {
            let (a, b) = self.edges[e].expect("live edge");
            self.edges[e] = Some(if a == w { (u, b) } else { (a, u) });
        }
        let ru = &mut self.rotation[u];
        let j = ru.iter().position(|&e| e == e1).expect("incident");
        ru.splice(j..=j, seq);
        for v in [x, w] {
            self.vertices[v] = None;
            self.rotation[v].clear();
        }
        self.edges[e1] = None;
        self.edges[e2] = None;
        true
    }

    fn contract_all(&mut self) {
        while (0..self.vertices.len()).any(|x| self.try_contract(x)) {}
    }

    fn finish(self) -> Result<PlabicGraph, PlabicError> {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.into_iter().enumerate() {
            if let Some(v) = v {
                vmap[i] = vertices.len();
                vertices.push(v);
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.into_iter().enumerate() {
            if let Some((a, b)) = e {
                emap[i] = edges.len();
                edges.push((vmap[a], vmap[b]));
            }
        }
        let rotation = self
            .rotation
            .into_iter()
            .enumerate()
            .filter(|(i, _)| vmap[*i] != usize::MAX)
            .map(|(_, r)| r.into_iter().map(|e| emap[e]).collect())
            .collect();
        PlabicGraph::new(self.k, self.n, vertices, edges, rotation)
    }
}

impl PlabicGraph {
    /// Contracts every bivalent internal vertex whose neighbors are internal
    /// and share no other neighbor. Face labels are unchanged.
    pub fn contract_bivalent(&self) -> PlabicGraph {
        let mut d = Draft::of(self);
        d.contract_all();
        d.finish().expect("contraction preserves validity")
    }

    /// Square move at the face labeled `label`. Bivalent vertices are
    /// contracted first, so the face must then be a quadrilateral of
    /// internal vertices. The result has the move's four new vertices
    /// contracted back where possible.
    pub fn square_move(&self, label: PlueckerIndex) -> Result<PlabicGraph, PlabicError> {
        let g = self.contract_bivalent();
        let f = g
            .face_with_label(label)?
            .ok_or_else(|| PlabicError::IllegalMove(format!("no face labeled {label}")))?;
        let walk = &g.faces.walks[f];
        if walk.len() != 4 || walk.iter().any(|&d| g.is_arc(d)) {
            return Err(PlabicError::IllegalMove(format!("face {label} is not an inner quadrilateral")));
        }
        let corners: Vec<usize> = walk.iter().map(|&d| g.tail(d)).collect();
        let mut distinct = corners.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 4 {
            return Err(PlabicError::IllegalMove(format!("face {label} repeats a vertex")));
        }

        let mut d = Draft::of(&g);
        for (i, &v) in corners.iter().enumerate() {
            let e_out = walk[i].edge();
            let e_in = walk[(i + 3) % 4].edge();
            let r = d.rotation[v].clone();
            let at = r.iter().position(|&e| e == e_out).expect("incident");
            let others: Vec<usize> = (1..r.len()).map(|s| r[(at + s) % r.len()]).filter(|&e| e != e_in).collect();
            let old = d.vertices[v].as_ref().expect("live").color;
            let id = d.fresh_id(&d.vertices[v].as_ref().expect("live").id);
            let twin = d.add_vertex(id, old);
            let link = d.add_edge(v, twin);
            for &e in &others {
                let (a, b) = d.edges[e].expect("live edge");
                d.edges[e] = Some(if a == v { (twin, b) } else { (a, twin) });
            }
            d.rotation[twin] = std::iter::once(link).chain(others).collect();
            d.rotation[v] = vec![e_in, e_out, link];
            d.vertices[v].as_mut().expect("live").color = old.flip();
        }
        d.contract_all();
        d.finish()
    }

    /// Breadth-first search over square moves for a graph whose inner face
    /// labels are exactly `target`. Gives up after `limit` label sets.
    pub fn seek_labels(&self, target: &[PlueckerIndex], limit: usize) -> Option<PlabicGraph> {
        let key = |g: &PlabicGraph| {
            let mut l = g.label_set().unwrap_or_default();
            l.retain(|j| !j.is_frozen(g.n));
            l
        };
        let mut want = target.to_vec();
        want.retain(|j| !j.is_frozen(self.n));
        want.sort();
        let start = self.contract_bivalent();
        let mut seen = std::collections::HashSet::from([key(&start)]);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            if key(&g) == want {
                return Some(g);
            }
            for f in g.square_faces() {
                let Ok(h) = g.square_move(f) else { continue };
                if seen.len() < limit && seen.insert(key(&h)) {
                    queue.push_back(h);
                }
            }
        }
        None
    }

    /// Faces where a square move applies, by label.
    pub fn square_faces(&self) -> Vec<PlueckerIndex> {
        let g = self.contract_bivalent();
        let Ok(labels) = g.face_labels() else { return Vec::new() };
        g.inner_faces()
            .filter(|&f| {
                let walk = &g.faces.walks[f];
                walk.len() == 4 && walk.iter().all(|&d| !g.is_arc(d)) && {
                    let mut vs: Vec<usize> = walk.iter().map(|&d| g.tail(d)).collect();
                    vs.sort_unstable();
                    vs.dedup();
                    vs.len() == 4
                }
            })
            .filter_map(|f| labels[f])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_keeps_labels() {
        for (k, n) in [(2, 5), (3, 6), (3, 8)] {
            let g = PlabicGraph::top_cell(k, n);
            let h = g.contract_bivalent();
            assert!(h.vertices().len() <= g.vertices().len());
            assert_eq!(g.label_set().unwrap(), h.label_set().unwrap());
        }
    }

    #[test]
    fn square_move_exchanges_one_label_and_is_involutive() {
        let g = PlabicGraph::top_cell(3, 6);
        let before = g.label_set().unwrap();
        let faces = g.square_faces();
        assert!(!faces.is_empty());
        for j in faces {
            let h = g.square_move(j).unwrap();
            let after = h.label_set().unwrap();
            let gone: Vec<_> = before.iter().filter(|l| !after.contains(l)).collect();
            let new: Vec<_> = after.iter().filter(|l| !before.contains(l)).collect();
            assert_eq!(gone, vec![&j]);
            assert_eq!(new.len(), 1);
            let back = h.square_move(*new[0]).unwrap();
            assert_eq!(back.label_set().unwrap(), before);
            assert_eq!(h.trip_permutation().unwrap(), g.trip_permutation().unwrap());
        }
    }

    #[test]
    fn square_move_rejects_non_square_faces() {
        let g = PlabicGraph::top_cell(3, 6);
        let frozen: PlueckerIndex = "123".parse().unwrap();
        assert!(matches!(g.square_move(frozen), Err(PlabicError::IllegalMove(_))));
        let absent: PlueckerIndex = "135".parse().unwrap();
        assert!(g.square_move(absent).is_err());
    }
}
