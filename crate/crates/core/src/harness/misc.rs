//! Web enumeration, mutation class, property and tableau checks.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;

use super::cubic::cubic_partition;
use super::fixtures::model;
use super::expansions::displayed_expansions;
use super::{failed, CheckResult, Config, HarnessError};
use crate::algebra::{ExpressionKind, PlueckerEvaluation, Fp};
use crate::dimer::{boundary_measurement, three_term_relations_hold, DimerModel, MultiDimer};
use crate::plabic::PlabicGraph;
use crate::quiver::{Guard, MutationClass, Quiver, Seed};
use crate::web::{boundary_for_product, enumerate_nonelliptic, interior_minima, kk_two_row, parse_boundary, reflect_about, NonCrossingMatching, Tableau, Web};

/// Does a web satisfy `|V_int| = n + 2c - 2k` with `n` its attached points?
fn euler_identity(w: &Web) -> bool {
    let (v, n, c, k) = (w.internal_count() as i64, w.attached_count() as i64, w.cycle_count() as i64, w.component_count() as i64);
    v == n + 2 * c - 2 * k
}

fn web_checks() -> Result<Vec<CheckResult>, HarnessError> {
    let boundary = "WBBBBBBB";
    let webs = enumerate_nonelliptic(&parse_boundary(boundary)?)?;
    let pathless = webs.iter().filter(|w| !w.has_path()).count();
    let adjacent: Vec<Web> =
        webs.iter().filter(|w| w.paths().iter().any(|&(a, b)| a == 0 && (b == 1 || b == 7))).cloned().collect();
    let up_to_reflection = reflect_about(&adjacent, 0).len();
    let far: Vec<(usize, usize)> =
        webs.iter().flat_map(|w| w.paths()).filter(|&(a, b)| a == 0 && b != 1 && b != 7).collect();
    let mut out = vec![
        CheckResult::check("webs/pathless", boundary, pathless == 10, format!("{pathless} pathless webs of {}", webs.len())),
        CheckResult::check(
            "webs/adjacent-path",
            boundary,
            up_to_reflection == 5,
            format!("{} webs with a path to a neighbour, {up_to_reflection} up to reflection", adjacent.len()),
        ),
        CheckResult::check(
            "webs/far-path",
            boundary,
            far == [(0, 4)],
            format!("paths from the white point to a non-neighbour: {:?} (point indices from 0)", far),
        ),
    ];
    // every string of up to 8 attached points, plus the 9-black case
    let mut strings: Vec<String> = (3..=8usize)
        .flat_map(|len| (0..1u32 << len).map(move |m| (0..len).map(|i| if m >> i & 1 == 1 { 'W' } else { 'B' }).collect()))
        .collect();
    strings.push("BBBBBBBBB".into());
    let mut total = 0;
    let mut witness = None;
    for s in &strings {
        for w in enumerate_nonelliptic(&parse_boundary(s)?)? {
            total += 1;
            if witness.is_none() && !euler_identity(&w) {
                witness = Some(format!("{s}: {}", w.describe()));
            }
        }
    }
    out.push(
        CheckResult::check(
            "webs/euler",
            "all black/white strings of length 3..8 and BBBBBBBBB",
            witness.is_none(),
            format!("{total} webs satisfy |V_int| = n + 2c - 2k"),
        )
        .with_witness(witness),
    );
    let (minima, adjacent) = interior_minima(4);
    out.push(CheckResult::check(
        "webs/interior-minima",
        "cycles 1..4",
        minima == [6, 10, 13, 16],
        format!("minimum internal vertices {minima:?}"),
    ));
    out.push(CheckResult::check(
        "webs/adjacent-bivalent",
        "cycles 1..4",
        adjacent,
        "every all-cycle interior has two adjacent bivalent outer vertices".to_string(),
    ));
    Ok(out)
}

pub(crate) fn webs() -> Vec<CheckResult> {
    web_checks().unwrap_or_else(|e| vec![failed("webs", "WBBBBBBB", e)])
}

fn class(cfg: &Config, k: usize, n: usize, laurent: bool) -> Result<(MutationClass, Vec<PlueckerEvaluation<Fp>>), HarnessError> {
    let g = PlabicGraph::top_cell(k, n);
    let evs: Vec<_> = cfg.samples(k, n, &format!("quiver/{k}{n}")).into_iter().take(2).map(|s| s.plain).collect();
    let mut seed = Seed::from_plabic(&g, &evs)?;
    if laurent {
        seed = seed.track_laurent(&Quiver::from_plabic(&g)?.1);
    }
    let mut c = MutationClass::explore(&seed, Guard::default())?;
    c.identify(&evs);
    Ok((c, evs))
}

fn quiver_checks(cfg: &Config) -> Result<Vec<CheckResult>, HarnessError> {
    let mut out = Vec::new();
    let (small, evs) = class(cfg, 3, 6, true)?;
    let kinds: BTreeSet<&str> = small.variables.iter().filter_map(|v| v.identity.as_ref()).map(|(e, _)| e.kind().letter()).collect();
    out.push(CheckResult::check(
        "quiver/gr36",
        "top cell Gr(3,6)",
        small.variables.len() == 22 && kinds.contains("X") && kinds.contains("Y"),
        format!("{} seeds, {} variables ({} frozen), kinds {:?}", small.seeds, small.variables.len(), small.frozen_count(), kinds),
    ));
    let one = evs[0].at(crate::algebra::PlueckerIndex::of(&[1, 2, 3])).modulus().element(1);
    let mut laurent_ok = true;
    for v in &small.variables {
        let l = v.laurent.as_ref();
        laurent_ok &= l.is_some_and(|l| l.evaluate(&evs[0], &one).is_ok_and(|x| x == v.values[0]));
    }
    out.push(CheckResult::check(
        "quiver/gr36-laurent",
        "top cell Gr(3,6)",
        laurent_ok,
        "every variable is a Laurent polynomial in the initial seed with matching values".to_string(),
    ));

    let (big, _) = class(cfg, 3, 8, false)?;
    let mut split: HashMap<&str, usize> = HashMap::new();
    let mut unknown = 0;
    for v in big.variables.iter().filter(|v| !v.frozen) {
        match &v.identity {
            Some((e, _)) => *split.entry(e.kind().letter()).or_default() += 1,
            None => unknown += 1,
        }
    }
    let count = |s: &str| split.get(s).copied().unwrap_or(0);
    let non_pluecker = big.mutable_count() - count(ExpressionKind::Pluecker.letter());
    let xy = count("X") + count("Y");
    let mut letters: Vec<_> = split.iter().collect();
    letters.sort();
    let listing = format!("{} seeds, split {letters:?}, {unknown} unidentified", big.seeds);
    out.push(CheckResult::check(
        "quiver/gr38-variables",
        "top cell Gr(3,8)",
        big.mutable_count() == 128 && unknown == 0,
        format!("{} mutable and {} frozen variables; {listing}", big.mutable_count(), big.frozen_count()),
    ));
    out.push(CheckResult::check(
        "quiver/gr38-non-pluecker-56",
        "top cell Gr(3,8)",
        non_pluecker == 56,
        format!("{non_pluecker} non-Plücker variables"),
    ));
    out.push(CheckResult::check(
        "quiver/gr38-xy-translates",
        "top cell Gr(3,8)",
        xy == 56,
        format!("{xy} translates of X or Y, {} of A or B", count("A") + count("B")),
    ));
    Ok(out)
}

pub(crate) fn quiver(cfg: &Config) -> Vec<CheckResult> {
    quiver_checks(cfg).unwrap_or_else(|e| vec![failed("quiver", "mutation classes", e)])
}

fn measurement_checks(cfg: &Config) -> Vec<CheckResult> {
    let graphs: [(&str, DimerModel); 4] = [
        ("top cell Gr(2,5)", DimerModel::top_cell(2, 5)),
        ("top cell Gr(3,6)", DimerModel::top_cell(3, 6)),
        ("top cell Gr(3,7)", DimerModel::top_cell(3, 7)),
        ("top cell Gr(3,8)", DimerModel::top_cell(3, 8)),
    ];
    graphs
        .iter()
        .map(|(name, m)| {
            let mut rng = cfg.rng(&format!("props/measurement/{name}"));
            let good = (0..20)
                .filter(|_| {
                    let w: Vec<Fp> = (0..m.edge_count()).map(|_| cfg.modulus.from_i64(rng.gen_range(1..1_000_000))).collect();
                    three_term_relations_hold(m.k(), m.n(), &boundary_measurement(m, &w))
                })
                .count();
            CheckResult::check(
                format!("props/measurement/gr{}{}", m.k(), m.n()),
                *name,
                good == 20,
                format!("{good} of 20 random weightings give Plücker vectors"),
            )
        })
        .collect()
}

fn translate_checks() -> Result<Vec<CheckResult>, HarnessError> {
    let m = DimerModel::top_cell(3, 6);
    let singles = m.all_dimers();
    let bad = singles.iter().find(|d| !m.translate_check(&MultiDimer::overlay(m.edge_count(), &[d])));
    let mut out = vec![CheckResult::check(
        "props/translate/gr36",
        "top cell Gr(3,6), every dimer",
        bad.is_none(),
        format!("{} dimers", singles.len()),
    )
    .with_witness(bad.map(|d| d.to_string()))];
    let seed = model("gr38_seed.json")?;
    for f in displayed_expansions()? {
        let res = cubic_partition(&seed, &f.expression)?;
        let bad = res.contributing.iter().find(|(d, _)| !seed.translate_check(d));
        out.push(
            CheckResult::check(
                format!("props/translate/{}", f.expression),
                format!("{} contributing triple dimers on gr38_seed.json", f.name),
                bad.is_none(),
                format!("{} dimers", res.contributing.len()),
            )
            .with_witness(bad.map(|(d, _)| d.to_string())),
        );
    }
    Ok(out)
}

/// Overlay counts of every label triple against skein coefficients times
/// coloring counts.
fn multiplicity_law() -> Result<CheckResult, HarnessError> {
    let m = DimerModel::top_cell(3, 6);
    let by = m.dimers_by_boundary();
    let mut checked = 0usize;
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
                    let reduced = m.web_of(&d)?.reduce();
                    let mut total = 0i64;
                    for (w, coeff) in reduced.terms() {
                        total += coeff * w.coloring_count(&compat)? as i64;
                    }
                    if total != count as i64 {
                        return Ok(CheckResult::check(
                            "props/multiplicity-law",
                            "top cell Gr(3,6), all label triples",
                            false,
                            format!("overlay count {count}, web sum {total}"),
                        )
                        .with_witness(Some(format!("{} {} {} {d}", sets[0], sets[1], sets[2]))));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(CheckResult::check(
        "props/multiplicity-law",
        "top cell Gr(3,6), all label triples",
        true,
        format!("{checked} triple dimers"),
    ))
}

pub(crate) fn props(cfg: &Config) -> Vec<CheckResult> {
    let mut out = measurement_checks(cfg);
    out.extend(translate_checks().unwrap_or_else(|e| vec![failed("props/translate", "dimers", e)]));
    out.push(multiplicity_law().unwrap_or_else(|e| failed("props/multiplicity-law", "top cell Gr(3,6)", e)));
    out
}

/// The five crossingless matchings of six points, as listed for [3,3].
const LISTED_MATCHINGS: [[(u8, u8); 3]; 5] = [
    [(1, 6), (2, 5), (3, 4)],
    [(1, 2), (3, 6), (4, 5)],
    [(1, 4), (2, 3), (5, 6)],
    [(1, 6), (2, 3), (4, 5)],
    [(1, 2), (3, 4), (5, 6)],
];

pub(crate) fn kk() -> Vec<CheckResult> {
    let tableaux = Tableau::all_two_row(3, 3);
    let images: Result<Vec<NonCrossingMatching>, _> = tableaux.iter().map(kk_two_row).collect();
    let (ok, detail) = match images {
        Ok(ms) => {
            let got: BTreeSet<Vec<(u8, u8)>> = ms.into_iter().map(|m| m.pairs).collect();
            let want: BTreeSet<Vec<(u8, u8)>> = LISTED_MATCHINGS.iter().map(|m| m.to_vec()).collect();
            (tableaux.len() == 5 && got == want, format!("{} tableaux onto {} distinct listed matchings", tableaux.len(), got.len()))
        }
        Err(e) => (false, format!("error: {e}")),
    };
    vec![CheckResult::check("kk/shape-3-3", "all standard tableaux of shape [3,3]", ok, detail)]
}
