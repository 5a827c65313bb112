//! Twist identities for single and double dimers, and the Gr(3,7) table.

use std::collections::HashMap;

use rand::seq::SliceRandom;

use super::fixtures::{gr37_table, product_value};
use super::{failed, CheckResult, Config, HarnessError, Sample};
use crate::algebra::{ClusterExpression, Dihedral, ExpressionKind, Fp, PlueckerIndex, Scalar};
use crate::dimer::{DimerModel, MultiDimer};

/// Every row of the table at every sample point.
pub(crate) fn twist_table(cfg: &Config) -> Vec<CheckResult> {
    let rows = match gr37_table() {
        Ok(r) => r,
        Err(e) => return vec![failed("twist-table", "gr37_twists.txt", e)],
    };
    let samples = cfg.samples(3, 7, "twist-table");
    let mut out: Vec<CheckResult> = rows
        .iter()
        .map(|row| {
            let inputs = format!("T*{} = {}", row.lhs, row.rhs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" "));
            let bad = samples.iter().position(|s| {
                let lhs = row.lhs.evaluate(&s.twisted);
                let rhs = product_value(&row.rhs, &s.plain);
                !matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
            });
            CheckResult::check(format!("twist-table/line{:02}", row.line), inputs, bad.is_none(), format!("{} points", samples.len()))
                .with_witness(bad.map(|p| format!("seed={} point={p}", cfg.seed)))
        })
        .collect();
    out.push(CheckResult::check("twist-table/rows", "gr37_twists.txt", rows.len() == 49, format!("{} rows", rows.len())));
    out
}

/// Single-dimer partition functions against twisted minors on top cells.
pub(crate) fn single_dimers(cfg: &Config) -> Vec<CheckResult> {
    [(3, 6), (3, 7), (3, 8)]
        .into_iter()
        .map(|(k, n)| {
            let m = DimerModel::top_cell(k, n);
            single_dimer_check(&m, &cfg.samples(k, n, &format!("single-dimers/{n}")))
                .unwrap_or_else(|e| failed(format!("single-dimers/gr{k}{n}"), "top cell", e))
        })
        .collect()
}

fn single_dimer_check(m: &DimerModel, samples: &[Sample]) -> Result<CheckResult, HarnessError> {
    let (k, n) = (m.k(), m.n());
    let js = PlueckerIndex::all(k, n);
    let mut witness = None;
    for (p, s) in samples.iter().enumerate() {
        let table = m.face_table(&s.plain)?;
        for &j in &js {
            if m.twist_value(j, &table)? != s.twisted.at(j) && witness.is_none() {
                witness = Some(format!("J={j} point={p}"));
            }
        }
        // frozen twists are products of the next two frozen minors
        for a in 1..=n as u8 {
            let run = |b: u8| PlueckerIndex::of(&[0, 1, 2].map(|t| (b + t - 1) % n as u8 + 1));
            let expected = s.plain.at(run(a % n as u8 + 1)) * s.plain.at(run((a + 1) % n as u8 + 1));
            if s.twisted.at(run(a)) != expected && witness.is_none() {
                witness = Some(format!("frozen J={} point={p}", run(a)));
            }
        }
    }
    Ok(CheckResult::check(
        format!("single-dimers/gr{k}{n}"),
        format!("top cell Gr({k},{n})"),
        witness.is_none(),
        format!("{} index sets at {} points", js.len(), samples.len()),
    )
    .with_witness(witness))
}

/// Boundary pairing read off by a double dimer for `X` or `Y` on `S`.
pub fn pairing(kind: ExpressionKind, s: &[u8]) -> Vec<(u8, u8)> {
    let pick: [(usize, usize); 3] = match kind {
        ExpressionKind::X => [(0, 5), (1, 2), (3, 4)],
        _ => [(0, 1), (2, 3), (4, 5)],
    };
    let mut v: Vec<(u8, u8)> = pick.iter().map(|&(a, b)| (s[a], s[b])).collect();
    v.sort_unstable();
    v
}

/// A double dimer with its boundary pairing and closed cycle count.
pub(crate) type TracedDimer = (MultiDimer, Vec<(u8, u8)>, usize);

/// Double dimers covering `S` once, grouped by matching.
pub(crate) fn double_dimers_on(m: &DimerModel, s: &[u8]) -> Result<Vec<TracedDimer>, HarnessError> {
    let cover: Vec<u8> = (1..=m.n() as u8).map(|i| u8::from(s.contains(&i))).collect();
    m.multi_dimers(2, &cover)?
        .into_iter()
        .map(|d| {
            let nc = m.matching_of(&d)?;
            Ok((d, nc.pairs, nc.cycles))
        })
        .collect()
}

/// Weighted double-dimer sum for one pairing, with its contributing count.
pub(crate) fn double_sum(
    m: &DimerModel,
    dimers: &[TracedDimer],
    want: &[(u8, u8)],
    s: &Sample,
) -> Result<(Fp, usize), HarnessError> {
    let table = m.face_table(&s.plain)?;
    let one = s.plain.at(PlueckerIndex::of(&[1, 2, 3])).one_like();
    let mut total = one.zero_like();
    let mut count = 0;
    for (d, pairs, cycles) in dimers {
        if pairs == want {
            total = total + one.from_i64_like(1 << cycles) * table.monomial(&m.face_exponents(d));
            count += 1;
        }
    }
    Ok((total, count))
}

fn double_dimer_case(m: &DimerModel, s_set: &[u8], samples: &[Sample]) -> Result<Vec<CheckResult>, HarnessError> {
    let dimers = double_dimers_on(m, s_set)?;
    let support = PlueckerIndex::of(s_set);
    let label: String = s_set.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
    let mut out = Vec::new();
    for kind in [ExpressionKind::X, ExpressionKind::Y] {
        let e = ClusterExpression::new(kind, Dihedral::IDENTITY, support)?;
        let want = pairing(kind, s_set);
        let mut witness = None;
        let mut contributing = 0;
        for (p, s) in samples.iter().enumerate() {
            let (sum, count) = double_sum(m, &dimers, &want, s)?;
            contributing = count;
            if sum != e.evaluate(&s.twisted)? && witness.is_none() {
                witness = Some(format!("point={p}"));
            }
        }
        out.push(
            CheckResult::check(
                format!("double-dimers/n{}/{}{}", m.n(), kind.letter(), label.replace(',', "")),
                format!("{e} on top cell Gr(3,{})", m.n()),
                witness.is_none(),
                format!("{contributing} double dimers"),
            )
            .with_witness(witness),
        );
    }
    Ok(out)
}

/// X and Y identities on every 6-subset of [6] and [7], sampled subsets of
/// [8], the worked n = 7 example and the overlay multiplicity oracle.
pub(crate) fn double_dimers(cfg: &Config) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in [6usize, 7, 8] {
        let m = DimerModel::top_cell(3, n);
        let mut subsets = PlueckerIndex::all(6, n);
        if n == 8 {
            let mut rng = cfg.rng("double-dimers/subsets");
            subsets.shuffle(&mut rng);
            subsets.truncate(20);
            subsets.sort();
        }
        let samples = cfg.samples(3, n, &format!("double-dimers/{n}"));
        for s in subsets {
            match double_dimer_case(&m, &s.to_vec(), &samples) {
                Ok(rs) => out.extend(rs),
                Err(e) => out.push(failed(format!("double-dimers/n{n}/{s}"), "top cell", e)),
            }
        }
    }
    out.push(worked_example(cfg).unwrap_or_else(|e| failed("double-dimers/example", "n=7", e)));
    out.push(overlay_oracle());
    out
}

/// n = 7, S = {1,2,3,5,6,7}: five dimers pairing {1,7},{2,3},{5,6} sum to
/// (127)(234) X on {1,3,4,5,6,7}.
fn worked_example(cfg: &Config) -> Result<CheckResult, HarnessError> {
    let m = DimerModel::top_cell(3, 7);
    let s_set = [1, 2, 3, 5, 6, 7];
    let dimers = double_dimers_on(&m, &s_set)?;
    let want = pairing(ExpressionKind::X, &s_set);
    let x: ClusterExpression = "X@S=1,3,4,5,6,7".parse()?;
    let mut ok = true;
    let mut count = 0;
    for s in cfg.samples(3, 7, "double-dimers/example") {
        let (sum, c) = double_sum(&m, &dimers, &want, &s)?;
        count = c;
        ok &= sum == s.plain.product_of("(127)(234)") * x.evaluate(&s.plain)?;
    }
    let cycles = dimers.iter().filter(|(_, p, _)| *p == want).map(|(_, _, c)| *c).max().unwrap_or(0);
    Ok(CheckResult::check(
        "double-dimers/example",
        "X@S=1,2,3,5,6,7 on top cell Gr(3,7)",
        ok && count == 5 && cycles == 0,
        format!("{count} double dimers, max cycles {cycles}"),
    ))
}

/// Ordered pairs of single dimers overlaying to each double dimer number
/// 2^cycles, for every pair of boundary conditions on Gr(3,6).
fn overlay_oracle() -> CheckResult {
    let m = DimerModel::top_cell(3, 6);
    let by = m.dimers_by_boundary();
    let mut checked = 0usize;
    let mut witness = None;
    for (a, (i, di)) in by.iter().enumerate() {
        for (j, dj) in &by[a..] {
            let mut counts: HashMap<MultiDimer, u64> = HashMap::new();
            for x in di {
                for y in dj {
                    *counts.entry(MultiDimer::overlay(m.edge_count(), &[x, y])).or_default() += 1;
                }
            }
            for (d, count) in counts {
                checked += 1;
                let ok = m.matching_of(&d).map(|nc| count == 1 << nc.cycles).unwrap_or(false);
                if !ok && witness.is_none() {
                    witness = Some(format!("I={i} J={j} D={d}"));
                }
            }
        }
    }
    CheckResult::check("double-dimers/overlay-oracle", "top cell Gr(3,6)", witness.is_none(), format!("{checked} double dimers"))
        .with_witness(witness)
}
