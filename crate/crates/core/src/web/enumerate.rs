//! Exhaustive lists of non-elliptic webs by reversing the growth rules at
//! the boundary, plus the counting oracle and interior bounds.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::{BoundaryColor, Web, WebError};
use crate::plabic::Color;

/// Enumeration refuses more attached boundary points than this.
pub const MAX_ENUMERATION_POINTS: usize = 12;

fn opposite(c: BoundaryColor) -> BoundaryColor {
    match c {
        BoundaryColor::Black => BoundaryColor::White,
        BoundaryColor::White => BoundaryColor::Black,
        BoundaryColor::Isolated => BoundaryColor::Isolated,
    }
}

fn partner(c: BoundaryColor) -> Color {
    if c == BoundaryColor::Black {
        Color::White
    } else {
        Color::Black
    }
}

/// Builds a web on `s` from `w`, sending old boundary slot `j` to new slot
/// `bmap[j]` and adding vertices and edges.
fn extend(w: &Web, s: &[BoundaryColor], bmap: &[usize], extra: &[Color], links: &[(usize, usize)]) -> Web {
    let (old, m) = (w.n(), s.len());
    let map = |x: usize| if x < old { bmap[x] } else { x - old + m };
    let mut colors = w.colors.clone();
    colors.extend_from_slice(extra);
    let mut link = vec![usize::MAX; m + 3 * colors.len()];
    for (x, &y) in w.link.iter().enumerate() {
        link[map(x)] = map(y);
    }
    for &(a, b) in links {
        link[a] = b;
        link[b] = a;
    }
    Web::raw(s.to_vec(), colors, link, 0)
}

type Memo = HashMap<(Vec<BoundaryColor>, usize), Vec<Web>>;

/// Non-elliptic webs on an all-attached string with at most `budget`
/// internal vertices. Every such web has a boundary-adjacent path, a vertex
/// joined to two neighboring points, or an H joined to two neighboring
/// points; removing it leaves a smaller non-elliptic web.
fn grow(s: &[BoundaryColor], budget: usize, memo: &mut Memo) -> Vec<Web> {
    let key = (s.to_vec(), budget);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let m = s.len();
    let mut found: BTreeSet<Web> = BTreeSet::new();
    if m == 0 {
        found.insert(Web::raw(Vec::new(), Vec::new(), Vec::new(), 0));
    }
    for p in 0..m {
        // a wrapping pair is handled on the string rotated left by one
        let (t, q, shift) = if p + 1 < m {
            (s.to_vec(), p, 0)
        } else if m >= 2 {
            let mut t = s.to_vec();
            t.rotate_left(1);
            (t, m - 2, 1)
        } else {
            continue;
        };
        for w in grow_at(&t, q, budget, memo) {
            let w = if shift == 1 { w.rotated(1) } else { w };
            if w.is_nonelliptic() {
                found.insert(w.canonical());
            }
        }
    }
    let out: Vec<Web> = found.into_iter().collect();
    memo.insert(key, out.clone());
    out
}

/// Webs on `t` whose growth configuration sits at points `p, p + 1`.
fn grow_at(t: &[BoundaryColor], p: usize, budget: usize, memo: &mut Memo) -> Vec<Web> {
    let m = t.len();
    let (a, b) = (t[p], t[p + 1]);
    let mut out = Vec::new();
    if a != b {
        // path between the two points
        let mut smaller = t.to_vec();
        smaller.drain(p..p + 2);
        let bmap: Vec<usize> = (0..m - 2).map(|j| if j < p { j } else { j + 2 }).collect();
        for w in grow(&smaller, budget, memo) {
            out.push(extend(&w, t, &bmap, &[], &[(p, p + 1)]));
        }
        // H: two joined vertices, one at each point
        if budget >= 2 {
            let mut swapped = t.to_vec();
            swapped.swap(p, p + 1);
            for w in grow(&swapped, budget - 2, memo) {
                let u = m + 3 * w.internal_count();
                let v = u + 3;
                let bmap: Vec<usize> = (0..m).map(|j| if j == p { u + 2 } else if j == p + 1 { v + 1 } else { j }).collect();
                out.push(extend(&w, t, &bmap, &[partner(a), partner(b)], &[(p, u), (u + 1, v + 2), (p + 1, v)]));
            }
        }
    } else if budget >= 1 {
        // Y: one vertex joined to both points
        let mut merged = t.to_vec();
        merged.splice(p..p + 2, [opposite(a)]);
        for w in grow(&merged, budget - 1, memo) {
            let v = m + 3 * w.internal_count();
            let bmap: Vec<usize> = (0..m - 1).map(|j| if j < p { j } else if j == p { v + 2 } else { j + 1 }).collect();
            out.push(extend(&w, t, &bmap, &[partner(a)], &[(p, v), (p + 1, v + 1)]));
        }
    }
    out
}

/// Vertex budget sufficient for every non-elliptic web on `m` points.
fn vertex_budget(m: usize) -> usize {
    m * m / 4 + m
}

/// All non-elliptic webs with the given boundary coloring, canonical and
/// without repeats.
pub fn enumerate_nonelliptic(boundary: &[BoundaryColor]) -> Result<Vec<Web>, WebError> {
    let probe = Web::empty(boundary.len());
    let mut shell = probe;
    shell.boundary = boundary.to_vec();
    let attached: Vec<usize> = (0..boundary.len()).filter(|&i| boundary[i] != BoundaryColor::Isolated).collect();
    if attached.len() > MAX_ENUMERATION_POINTS {
        return Err(WebError::SizeGuard { limit: MAX_ENUMERATION_POINTS, found: attached.len() });
    }
    let s: Vec<BoundaryColor> = attached.iter().map(|&i| boundary[i]).collect();
    let mut memo = Memo::new();
    let webs = grow(&s, vertex_budget(s.len()), &mut memo);
    Ok(webs.iter().map(|w| w.embed(&attached, boundary.len())).collect())
}

/// Representatives under the reflection fixing point `a` (0-based).
pub fn reflect_about(webs: &[Web], a: usize) -> Vec<Web> {
    let mut seen: BTreeSet<Web> = BTreeSet::new();
    let mut reps = Vec::new();
    for w in webs {
        let c = w.canonical();
        if seen.contains(&c) {
            continue;
        }
        seen.insert(w.reflected(2 * a).canonical());
        seen.insert(c.clone());
        reps.push(c);
    }
    reps
}

/// Number of closed walks from the origin in the dominant chamber of sl3
/// whose steps follow the boundary colors; the dimension of the invariant
/// space and so the number of non-elliptic webs.
pub fn dominant_walk_count(boundary: &[BoundaryColor]) -> u64 {
    let mut states: HashMap<(i32, i32), u64> = HashMap::from([((0, 0), 1)]);
    for &c in boundary {
        let steps: [(i32, i32); 3] = match c {
            BoundaryColor::Black => [(1, 0), (-1, 1), (0, -1)],
            BoundaryColor::White => [(0, 1), (1, -1), (-1, 0)],
            BoundaryColor::Isolated => continue,
        };
        let mut next: HashMap<(i32, i32), u64> = HashMap::new();
        for (&(a, b), &k) in &states {
            for (da, db) in steps {
                let (x, y) = (a + da, b + db);
                if x >= 0 && y >= 0 {
                    *next.entry((x, y)).or_insert(0) += k;
                }
            }
        }
        states = next;
    }
    states.get(&(0, 0)).copied().unwrap_or(0)
}

/// Outer degree sequence of a union of polygons glued one at a time.
fn normal_form(seq: &[u8]) -> Vec<u8> {
    let n = seq.len();
    let mut best: Option<Vec<u8>> = None;
    for r in 0..n {
        for rev in [false, true] {
            let cand: Vec<u8> =
                (0..n).map(|i| if rev { seq[(r + n - i) % n] } else { seq[(r + i) % n] }).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Smallest vertex counts of connected all-cycle web interiors with
/// `1..=max_cycles` faces, built by gluing polygons with at least six sides
/// along a boundary segment whose ends are bivalent and whose inner points
/// are trivalent. Also reports whether every configuration met has two
/// adjacent bivalent vertices on its outer cycle.
pub fn interior_minima(max_cycles: usize) -> (Vec<usize>, bool) {
    const MAX_SIDES: usize = 10;
    let mut layer: BTreeSet<Vec<u8>> = (3..=MAX_SIDES / 2).map(|m| vec![2u8; 2 * m]).collect();
    let mut minima = Vec::new();
    let mut adjacent = true;
    let vertex_count = |seq: &[u8], inner: usize| seq.len() + inner;
    // inner vertex counts ride along with each outer sequence
    let mut inner: HashMap<Vec<u8>, usize> = layer.iter().map(|s| (s.clone(), 0)).collect();
    for c in 1..=max_cycles {
        let min = layer.iter().map(|s| vertex_count(s, inner[s])).min().unwrap_or(0);
        minima.push(min);
        adjacent &= layer.par_iter().all(|s| (0..s.len()).any(|i| s[i] == 2 && s[(i + 1) % s.len()] == 2));
        if c == max_cycles {
            break;
        }
        let mut next: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut next_inner: HashMap<Vec<u8>, usize> = HashMap::new();
        for s in &layer {
            let len = s.len();
            for start in 0..len {
                for l in 1..len {
                    let end = (start + l) % len;
                    if s[start] != 2 || s[end] != 2 || (1..l).any(|t| s[(start + t) % len] != 3) {
                        continue;
                    }
                    for sides in (6..=MAX_SIDES).step_by(2) {
                        if sides <= l {
                            continue;
                        }
                        let fresh = sides - l - 1;
                        let mut seq = Vec::with_capacity(len - l + 1 + fresh);
                        seq.push(3);
                        seq.extend(std::iter::repeat_n(2, fresh));
                        seq.push(3);
                        for t in 1..len - l {
                            seq.push(s[(end + t) % len]);
                        }
                        let seq = normal_form(&seq);
                        let inside = inner[s] + l - 1;
                        let e = next_inner.entry(seq.clone()).or_insert(usize::MAX);
                        *e = (*e).min(inside);
                        next.insert(seq);
                    }
                }
            }
        }
        layer = next;
        inner = next_inner;
    }
    (minima, adjacent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::parse_boundary;

    #[test]
    fn walk_oracle_counts() {
        assert_eq!(dominant_walk_count(&parse_boundary("BBBBBBBW").unwrap()), 21);
        assert_eq!(dominant_walk_count(&parse_boundary("BBBBBBBBB").unwrap()), 42);
        assert_eq!(dominant_walk_count(&parse_boundary("BBBBBB").unwrap()), 5);
        assert_eq!(dominant_walk_count(&parse_boundary("BBB").unwrap()), 1);
        assert_eq!(dominant_walk_count(&parse_boundary("BW").unwrap()), 1);
    }

    #[test]
    fn enumeration_matches_oracle_on_all_short_strings() {
        for len in 0..=7usize {
            for bits in 0..(1u32 << len) {
                let s: Vec<BoundaryColor> = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { BoundaryColor::White } else { BoundaryColor::Black })
                    .collect();
                let webs = enumerate_nonelliptic(&s).unwrap();
                assert_eq!(webs.len() as u64, dominant_walk_count(&s), "{s:?}");
                for w in &webs {
                    assert!(Web::new(w.boundary.clone(), w.colors.clone(), w.link.clone(), 0).is_ok(), "{w}");
                }
            }
        }
    }

    #[test]
    fn seven_black_one_white() {
        let s = parse_boundary("WBBBBBBB").unwrap();
        let webs = enumerate_nonelliptic(&s).unwrap();
        assert_eq!(webs.len(), 21);
        assert_eq!(webs.iter().filter(|w| !w.has_path()).count(), 10);
        let adjacent: Vec<Web> =
            webs.iter().filter(|w| w.paths().iter().any(|&(a, b)| a == 0 && (b == 1 || b == 7))).cloned().collect();
        assert_eq!(adjacent.len(), 10);
        assert_eq!(reflect_about(&adjacent, 0).len(), 5);
        let far: Vec<_> = webs.iter().filter(|w| w.paths().iter().any(|&(a, b)| a == 0 && b == 4)).collect();
        assert_eq!(far.len(), 1);
    }

    #[test]
    fn isolated_points_are_skipped() {
        let s = parse_boundary("B-BB-").unwrap();
        let webs = enumerate_nonelliptic(&s).unwrap();
        assert_eq!(webs.len(), 1);
        assert_eq!(webs[0].boundary(), s.as_slice());
    }

    #[test]
    fn interior_bounds() {
        let (minima, adjacent) = interior_minima(4);
        assert_eq!(minima, vec![6, 10, 13, 16]);
        assert!(adjacent);
    }

    #[test]
    fn size_guard() {
        let s = vec![BoundaryColor::Black; 15];
        assert!(matches!(enumerate_nonelliptic(&s), Err(WebError::SizeGuard { .. })));
    }
}
