//! Outcome records for identity checks and timing runs.

use std::fmt::Display;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::exact::{format_rational, Integer, Rational};
use crate::powersum::FormulaId;

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn ser_nanos<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_nanos())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    #[serde(serialize_with = "ser_rational")]
    pub expected: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub got: Rational,
}

/// One compared value: `expected` comes from the reference side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub inputs: String,
    pub expected: Rational,
    pub got: Rational,
}

impl Cell {
    pub fn new(inputs: impl Display, expected: Rational, got: Rational) -> Self {
        Self {
            inputs: inputs.to_string(),
            expected,
            got,
        }
    }
}

/// Result of an exact-equality sweep. `failures` is empty iff the suite passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub cells_checked: usize,
    pub failures: Vec<Failure>,
    #[serde(rename = "elapsed_ns", serialize_with = "ser_nanos")]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            passed: true,
            cells_checked: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Runs `body` against a fresh report and stamps the wall time it took.
    pub fn timed(suite: impl Into<String>, body: impl FnOnce(&mut Self)) -> Self {
        let start = Instant::now();
        let mut report = Self::new(suite);
        body(&mut report);
        report.elapsed = start.elapsed();
        report
    }

    /// Builds a report from cells, stamping the time taken to produce them.
    pub fn from_cells(suite: impl Into<String>, cells: impl FnOnce() -> Vec<Cell>) -> Self {
        Self::timed(suite, |r| r.extend(cells()))
    }

    /// Records one cell. Returns whether it matched.
    pub fn check(&mut self, inputs: impl Display, expected: Rational, got: Rational) -> bool {
        self.record(Cell::new(inputs, expected, got))
    }

    pub fn record(&mut self, cell: Cell) -> bool {
        self.cells_checked += 1;
        let ok = cell.expected == cell.got;
        if !ok {
            self.passed = false;
            self.failures.push(Failure {
                inputs: cell.inputs,
                expected: cell.expected,
                got: cell.got,
            });
        }
        ok
    }

    pub fn extend(&mut self, cells: impl IntoIterator<Item = Cell>) {
        for c in cells {
            self.record(c);
        }
    }

    /// Folds a sub-report into this one, prefixing its failures with its suite name.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cells_checked += other.cells_checked;
        self.passed &= other.passed;
        self.failures
            .extend(other.failures.into_iter().map(|mut f| {
                f.inputs = format!("{}: {}", other.suite, f.inputs);
                f
            }));
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// One timing cell of the bench harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub formula: FormulaId,
    pub n: u64,
    pub p: u32,
    pub reps: u32,
    pub total_time: Duration,
    /// The computed value; kept so the optimizer cannot drop the evaluation.
    pub checksum: Integer,
}

impl BenchRecord {
    pub fn ns_per_eval(&self) -> u128 {
        if self.reps == 0 {
            0
        } else {
            self.total_time.as_nanos() / u128::from(self.reps)
        }
    }

    pub const CSV_HEADER: &'static str = "formula,n,p,reps,total_ns,ns_per_eval";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.formula,
            self.n,
            self.p,
            self.reps,
            self.total_time.as_nanos(),
            self.ns_per_eval()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn failures_track_passed_flag() {
        let mut r = VerificationReport::new("demo");
        assert!(r.check("n=1", rational(1, 2), rational(2, 4)));
        assert!(r.passed);
        assert!(!r.check("n=2", rational(1, 1), rational(2, 1)));
        assert!(!r.passed);
        assert_eq!(r.cells_checked, 2);
        assert_eq!(r.first_failure().unwrap().inputs, "n=2");
    }

    #[test]
    fn json_shape() {
        let mut r = VerificationReport::new("demo");
        r.check("n=3", rational(-1, 2), rational(1, 2));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], "demo");
        assert_eq!(v["passed"], false);
        assert_eq!(v["failures"][0]["expected"], "-1/2");
        assert_eq!(v["failures"][0]["got"], "1/2");
        assert!(v["elapsed_ns"].is_u64());
    }

    #[test]
    fn absorb_prefixes_suite() {
        let mut outer = VerificationReport::new("all");
        let mut inner = VerificationReport::new("eq2");
        inner.check("n=0", rational(1, 1), rational(0, 1));
        outer.absorb(inner);
        assert!(!outer.passed);
        assert_eq!(outer.failures[0].inputs, "eq2: n=0");
    }
}
