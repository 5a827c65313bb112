//! Verification results and their text and CSV renderings.

use std::fmt;
use std::time::Duration;

/// Version tag written at the top of every report.
pub const REPORT_SCHEMA: &str = "grasstwist-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

/// Outcome of one check instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub id: String,
    /// What was checked: graph, index set, expression.
    pub inputs: String,
    pub verdict: Verdict,
    /// Measured quantities.
    pub detail: String,
    /// Enough to re-run a failing instance.
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, inputs: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        CheckResult { suite: "", id: id.into(), inputs: inputs.into(), verdict, detail: detail.into(), witness: None }
    }

    /// Pass when `ok`, fail otherwise.
    pub fn check(id: impl Into<String>, inputs: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(id, inputs, if ok { Verdict::Pass } else { Verdict::Fail }, detail)
    }

    pub fn with_witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
}

/// Results of a run, in check order.
#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub prime: u64,
    pub results: Vec<CheckResult>,
    /// Wall time per suite; never part of the rendering.
    pub timings: Vec<(&'static str, Duration)>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.results.iter().filter(|r| r.verdict == v).count()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Header lines, then one `key=value` record per check with quoted strings.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {REPORT_SCHEMA}\n# seed={} prime={}\n", self.seed, self.prime);
        for r in &self.results {
            out.push_str(&format!(
                "suite={} id={} verdict={} inputs={:?} detail={:?}",
                r.suite, r.id, r.verdict, r.inputs, r.detail
            ));
            if let Some(w) = &r.witness {
                out.push_str(&format!(" witness={w:?}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "# total={} pass={} fail={} skipped={}\n",
            self.results.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Skipped)
        ));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let seed = self.seed.to_string();
        let prime = self.prime.to_string();
        w.write_record(["schema", "seed", "prime", "suite", "id", "verdict", "inputs", "detail", "witness"])
            .expect("in-memory write");
        for r in &self.results {
            let verdict = r.verdict.to_string();
            w.write_record([
                REPORT_SCHEMA,
                &seed,
                &prime,
                r.suite,
                &r.id,
                &verdict,
                &r.inputs,
                &r.detail,
                r.witness.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8 fields")
    }

    /// Per-suite wall times, one line each, for stderr.
    pub fn timing_lines(&self) -> String {
        self.timings.iter().map(|(s, d)| format!("{s}: {:.2}s\n", d.as_secs_f64())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let results = vec![
            CheckResult::check("a", "x", true, "ok"),
            CheckResult::check("b", "y, \"z\"", false, "bad").with_witness(Some("w".into())),
        ];
        Report { seed: 1, prime: 7, results, timings: vec![("t", Duration::from_millis(5))] }
    }

    #[test]
    fn renderings_are_stable() {
        let r = sample();
        let text = r.to_text();
        assert!(text.starts_with("# grasstwist-report/1\n# seed=1 prime=7\n"));
        assert!(text.contains("id=b verdict=FAIL inputs=\"y, \\\"z\\\"\" detail=\"bad\" witness=\"w\""));
        assert!(!text.contains("0.00"));
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("\"y, \"\"z\"\"\""));
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
    }
}
