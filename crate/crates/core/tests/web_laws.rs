//! Overlay counts against web data on the top cell of Gr(3,6).

use std::collections::HashMap;

use grasstwist::algebra::PlueckerIndex;
use grasstwist::dimer::{Dimer, DimerModel, MultiDimer};
use grasstwist::web::{boundary_for_product, BoundaryColor};

fn dimers_by_label(m: &DimerModel) -> Vec<(PlueckerIndex, Vec<Dimer>)> {
    m.dimers_by_boundary()
}

#[test]
fn double_overlays_split_two_ways_per_cycle() {
    let m = DimerModel::top_cell(3, 6);
    let by = dimers_by_label(&m);
    for (a, (i, di)) in by.iter().enumerate() {
        for (j, dj) in &by[a..] {
            let mut counts: HashMap<MultiDimer, u64> = HashMap::new();
            for x in di {
                for y in dj {
                    *counts.entry(MultiDimer::overlay(m.edge_count(), &[x, y])).or_default() += 1;
                }
            }
            for (d, count) in counts {
                let nc = m.matching_of(&d).unwrap();
                assert_eq!(count, 1 << nc.cycles, "{i}{j} {d}");
                // each path joins a point of one set to a point of the other or its own
                let cover = m.boundary_multiset(&d);
                for &(p, q) in &nc.pairs {
                    assert_eq!((cover[p as usize - 1], cover[q as usize - 1]), (1, 1));
                }
            }
        }
    }
}

#[test]
fn triple_overlays_obey_the_multiplicity_law() {
    let m = DimerModel::top_cell(3, 6);
    let by = dimers_by_label(&m);
    let mut checked = 0;
    for a in 0..by.len() {
        for b in a..by.len() {
            for c in b..by.len() {
                let sets = [by[a].0, by[b].0, by[c].0];
                let mut counts: HashMap<MultiDimer, u64> = HashMap::new();
                for x in &by[a].1 {
                    for y in &by[b].1 {
                        for z in &by[c].1 {
                            *counts.entry(MultiDimer::overlay(m.edge_count(), &[x, y, z])).or_default() += 1;
                        }
                    }
                }
                let compat = boundary_for_product(6, &sets);
                for (d, count) in counts {
                    let w = m.web_of(&d).unwrap();
                    assert_eq!(w.coloring_count(&compat).unwrap(), count, "{sets:?} {d}");
                    let reduced: u64 = w
                        .reduce()
                        .terms()
                        .map(|(v, coeff)| coeff as u64 * v.coloring_count(&compat).unwrap())
                        .sum();
                    assert_eq!(reduced, count, "{sets:?} {d}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn identical_triples_give_the_empty_web() {
    let m = DimerModel::top_cell(3, 6);
    for d in m.all_dimers() {
        let w = m.web_of(&MultiDimer::overlay(m.edge_count(), &[&d, &d, &d])).unwrap();
        assert!(w.boundary().iter().all(|&c| c == BoundaryColor::Isolated));
        assert_eq!(w.internal_count() + w.loops(), 0);
    }
}
