//! Proper edge 3-colorings of webs with boundary constraints.

use super::{BoundaryColor, Slot, Web, WebError};
use crate::algebra::PlueckerIndex;

/// Boundary data read off a product of three minors `I, J, K`: a point in
/// exactly one set is black and its edge takes that set's color; a point in
/// exactly two is white and takes the missing set's color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub boundary: Vec<BoundaryColor>,
    pub edge_color: Vec<Option<u8>>,
}

pub fn boundary_for_product(n: usize, sets: &[PlueckerIndex; 3]) -> Compatibility {
    let mut boundary = Vec::with_capacity(n);
    let mut edge_color = Vec::with_capacity(n);
    for i in 1..=n as u8 {
        let inside: Vec<bool> = sets.iter().map(|s| s.contains(i)).collect();
        let count = inside.iter().filter(|&&b| b).count();
        let (b, c) = match count {
            1 => (BoundaryColor::Black, inside.iter().position(|&b| b)),
            2 => (BoundaryColor::White, inside.iter().position(|&b| !b)),
            _ => (BoundaryColor::Isolated, None),
        };
        boundary.push(b);
        edge_color.push(c.map(|c| c as u8));
    }
    Compatibility { boundary, edge_color }
}

impl Web {
    /// Number of proper edge 3-colorings meeting the boundary data; the
    /// compatibility number of the web with the product of minors.
    pub fn coloring_count(&self, c: &Compatibility) -> Result<u64, WebError> {
        if c.boundary != self.boundary {
            let a: String = c.boundary.iter().map(|b| b.letter()).collect();
            let b: String = self.boundary.iter().map(|b| b.letter()).collect();
            return Err(WebError::IncompatibleBoundary(format!("product gives {a}, web has {b}")));
        }
        Ok(self.colorings(&c.edge_color))
    }

    /// Proper edge 3-colorings with every boundary edge free.
    pub fn tait_colorings(&self) -> u64 {
        self.colorings(&vec![None; self.n()])
    }

    fn colorings(&self, fixed: &[Option<u8>]) -> u64 {
        let n = self.n();
        let mut color: Vec<Option<u8>> = vec![None; self.link.len()];
        let mut factor = 3u64.pow(self.loops as u32);
        for i in 0..n {
            let t = self.link[i];
            if t == i {
                continue;
            }
            match (fixed[i], color[i]) {
                (Some(a), Some(b)) if a != b => return 0,
                (Some(a), _) => {
                    color[i] = Some(a);
                    color[t] = Some(a);
                }
                _ => {}
            }
        }
        for i in 0..n {
            let t = self.link[i];
            if t < n && t > i && color[i].is_none() {
                factor *= 3;
            }
        }
        let order = self.search_order();
        factor * self.count_from(&order, 0, &mut color)
    }

    /// Internal vertices in an order where each one after the first of its
    /// component touches an earlier one.
    fn search_order(&self) -> Vec<usize> {
        let n = self.n();
        let nv = self.colors.len();
        let mut seen = vec![false; nv];
        let mut order = Vec::with_capacity(nv);
        let starts = (0..n)
            .filter_map(|i| match self.slot(self.link[i]) {
                Slot::Internal { vertex, .. } => Some(vertex),
                Slot::Boundary(_) => None,
            })
            .chain(0..nv)
            .collect::<Vec<_>>();
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                order.push(v);
                for c in 0..3 {
                    if let Slot::Internal { vertex, .. } = self.slot(self.link[n + 3 * v + c]) {
                        if !seen[vertex] {
                            seen[vertex] = true;
                            q.push_back(vertex);
                        }
                    }
                }
            }
        }
        order
    }

    fn count_from(&self, order: &[usize], at: usize, color: &mut Vec<Option<u8>>) -> u64 {
        let Some(&v) = order.get(at) else { return 1 };
        const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let slots: [usize; 3] = std::array::from_fn(|c| self.vertex_slot(v, c));
        let mut total = 0;
        for p in PERMS {
            if slots.iter().zip(p).any(|(&s, c)| color[s].is_some_and(|x| x != c)) {
                continue;
            }
            let mut set = Vec::new();
            for (&s, c) in slots.iter().zip(p) {
                if color[s].is_none() {
                    color[s] = Some(c);
                    color[self.link[s]] = Some(c);
                    set.push(s);
                }
            }
            total += self.count_from(order, at + 1, color);
            for s in set {
                color[s] = None;
                color[self.link[s]] = None;
            }
        }
        total
    }
}
