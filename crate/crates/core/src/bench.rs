//! Timing harness comparing the power-sum strategies.
//!
//! Each `(n, p)` cell is first evaluated once by every requested formula and
//! the results compared; timing only starts once they agree. Timed results
//! pass through [`black_box`] and are kept as the record's checksum, so the
//! evaluation cannot be optimized away.

use std::hint::black_box;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exact::Integer;
use crate::powersum::FormulaId;
use crate::report::BenchRecord;
use crate::Tables;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub formulas: Vec<FormulaId>,
    pub ns: Vec<u64>,
    pub ps: Vec<u32>,
    /// Timed evaluations per cell; zero means checksums only.
    pub reps: u32,
    pub warmup: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checksum {
    pub n: u64,
    pub p: u32,
    pub value: Integer,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchOutcome {
    pub checksums: Vec<Checksum>,
    pub records: Vec<BenchRecord>,
}

pub fn run_bench(tables: &Tables, config: &BenchConfig) -> Result<BenchOutcome> {
    if config.formulas.is_empty() {
        return Err(Error::Domain("bench needs at least one formula".into()));
    }
    for &n in &config.ns {
        for &p in &config.ps {
            for f in &config.formulas {
                f.check_domain(n, p)?;
            }
        }
    }

    let mut out = BenchOutcome::default();
    for &n in &config.ns {
        for &p in &config.ps {
            tables.grow_to(p as usize + 2);
            let value = agreed_value(tables, &config.formulas, n, p)?;
            out.checksums.push(Checksum { n, p, value });
        }
    }
    if config.reps == 0 {
        return Ok(out);
    }

    for &n in &config.ns {
        for &p in &config.ps {
            for &formula in &config.formulas {
                for _ in 0..config.warmup {
                    black_box(formula.evaluate(black_box(tables), black_box(n), black_box(p))?);
                }
                let mut checksum = Integer::default();
                let start = Instant::now();
                for _ in 0..config.reps {
                    checksum = black_box(formula.evaluate(
                        black_box(tables),
                        black_box(n),
                        black_box(p),
                    )?);
                }
                let total_time = start.elapsed();
                out.records.push(BenchRecord {
                    formula,
                    n,
                    p,
                    reps: config.reps,
                    total_time,
                    checksum,
                });
            }
        }
    }
    Ok(out)
}

fn agreed_value(tables: &Tables, formulas: &[FormulaId], n: u64, p: u32) -> Result<Integer> {
    let reference = formulas[0];
    let expected = reference.evaluate(tables, n, p)?;
    for &f in &formulas[1..] {
        let got = f.evaluate(tables, n, p)?;
        if got != expected {
            return Err(Error::ChecksumMismatch {
                n,
                p,
                formula: f.to_string(),
                got: got.to_string(),
                reference: reference.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    Ok(expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(formulas: Vec<FormulaId>, n: u64, p: u32, reps: u32) -> BenchConfig {
        BenchConfig {
            formulas,
            ns: vec![n],
            ps: vec![p],
            reps,
            warmup: 0,
        }
    }

    #[test]
    fn faulhaber_checksum() {
        let t = Tables::new();
        let out = run_bench(&t, &config(vec![FormulaId::Faulhaber], 10, 2, 3)).unwrap();
        assert_eq!(out.checksums[0].value, Integer::from(385));
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].checksum, Integer::from(385));
        assert_eq!(out.records[0].reps, 3);
    }

    #[test]
    fn dry_run_has_no_records() {
        let t = Tables::new();
        let out = run_bench(&t, &config(FormulaId::ALL.to_vec(), 57, 4, 0)).unwrap();
        assert!(out.records.is_empty());
        assert_eq!(out.checksums.len(), 1);
    }

    #[test]
    fn rejects_out_of_domain() {
        let t = Tables::new();
        let err = run_bench(
            &t,
            &config(vec![FormulaId::Direct, FormulaId::GouldA], 5, 0, 1),
        );
        assert!(matches!(err, Err(Error::Domain(_))));
        let err = run_bench(&t, &config(vec![], 5, 1, 1));
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn records_in_request_order() {
        let t = Tables::new();
        let cfg = BenchConfig {
            formulas: vec![FormulaId::CorollaryStirling, FormulaId::Direct],
            ns: vec![5, 9],
            ps: vec![1, 3],
            reps: 1,
            warmup: 1,
        };
        let out = run_bench(&t, &cfg).unwrap();
        let keys: Vec<_> = out.records.iter().map(|r| (r.n, r.p, r.formula)).collect();
        assert_eq!(keys[0], (5, 1, FormulaId::CorollaryStirling));
        assert_eq!(keys[1], (5, 1, FormulaId::Direct));
        assert_eq!(keys[7], (9, 3, FormulaId::Direct));
        for r in &out.records {
            assert_eq!(r.checksum, crate::powersum::powersum_direct(r.n, r.p));
        }
    }
}
