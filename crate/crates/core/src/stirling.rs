//! Stirling numbers of the first (unsigned) and second kind, the shifted
//! Stirling transform pair, and the first-kind/second-kind convolution.
//!
//! Tables are triangles grown row by row on demand and kept for the table's
//! lifetime. Queries with `k > n` return zero so sums can run over
//! rectangular index ranges.

use std::fmt::Write as _;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, rational_from, Integer, Rational};
use crate::report::{Cell, VerificationReport};
use crate::series::PowerSeries;
use crate::Tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingKind {
    /// `[n k]`: permutations of n elements with k cycles.
    FirstUnsigned,
    /// `{n k}`: partitions of an n-set into k blocks.
    Second,
}

#[derive(Debug)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: RwLock<Vec<Vec<Integer>>>,
}

impl StirlingTable {
    pub fn new(kind: StirlingKind) -> Self {
        Self {
            kind,
            rows: RwLock::new(vec![vec![Integer::one()]]),
        }
    }

    pub fn first_unsigned() -> Self {
        Self::new(StirlingKind::FirstUnsigned)
    }

    pub fn second() -> Self {
        Self::new(StirlingKind::Second)
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    /// Number of rows currently materialized.
    pub fn len(&self) -> usize {
        self.rows.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ensures rows `0..=n` exist.
    pub fn grow_to(&self, n: usize) {
        if self.len() > n {
            return;
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= n {
            let m = rows.len() - 1;
            let prev = &rows[m];
            let mut next = Vec::with_capacity(m + 2);
            next.push(Integer::zero());
            for k in 1..=m + 1 {
                let stay = match (self.kind, prev.get(k)) {
                    (_, None) => Integer::zero(),
                    (StirlingKind::FirstUnsigned, Some(v)) => v * m,
                    (StirlingKind::Second, Some(v)) => v * k,
                };
                next.push(stay + &prev[k - 1]);
            }
            rows.push(next);
        }
    }

    pub fn get(&self, n: usize, k: usize) -> Integer {
        if k > n {
            return Integer::zero();
        }
        self.grow_to(n);
        self.rows.read().unwrap()[n][k].clone()
    }

    pub fn row(&self, n: usize) -> Vec<Integer> {
        self.grow_to(n);
        self.rows.read().unwrap()[n].clone()
    }

    /// Rows `0..=nmax` as CSV, one row per n, entries `k = 0..=n`.
    pub fn to_csv(&self, nmax: usize) -> String {
        self.grow_to(nmax);
        let rows = self.rows.read().unwrap();
        let mut out = String::new();
        for row in rows.iter().take(nmax + 1) {
            let line: Vec<String> = row.iter().map(Integer::to_string).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }
}

pub fn stirling1u(n: usize, k: usize) -> Integer {
    StirlingTable::first_unsigned().get(n, k)
}

pub fn stirling2(n: usize, k: usize) -> Integer {
    StirlingTable::second().get(n, k)
}

/// `Σ_{k=j}^{n} [n+1, k+1]·{k+1, j+1}`, which collapses to `n!/j!·C(n+1, j+1)`.
pub fn stirling_mixed_sum(tables: &Tables, n: usize, j: usize) -> Integer {
    (j..=n)
        .map(|k| tables.first.get(n + 1, k + 1) * tables.second.get(k + 1, j + 1))
        .sum()
}

/// The closed side of the convolution, computed without any Stirling number.
pub fn mixed_sum_closed_form(n: usize, j: usize) -> Integer {
    factorial(n as u64) / factorial(j as u64) * binomial(n as u64 + 1, j as u64 + 1)
}

/// `b_n = Σ_{k≤n} [n+1, k+1]·a_k`.
pub fn stirling_transform(tables: &Tables, a: &[Rational]) -> Vec<Rational> {
    (0..a.len())
        .map(|n| {
            let row = tables.first.row(n + 1);
            a[..=n]
                .iter()
                .zip(&row[1..])
                .map(|(ak, s)| ak * rational_from(s.clone()))
                .sum()
        })
        .collect()
}

/// `a_n = Σ_{k≤n} (−1)^{n−k}·{n+1, k+1}·b_k`; inverts [`stirling_transform`].
pub fn inverse_stirling_transform(tables: &Tables, b: &[Rational]) -> Vec<Rational> {
    (0..b.len())
        .map(|n| {
            let row = tables.second.row(n + 1);
            b[..=n]
                .iter()
                .zip(&row[1..])
                .enumerate()
                .map(|(k, (bk, s))| {
                    let term = bk * rational_from(s.clone());
                    if (n - k) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// Checks `Σ_{k≥n} {k+1, n+1} z^k/k! = (e^z − 1)^n e^z / n!` through `order`.
pub fn stirling2_egf_check(tables: &Tables, n: usize, order: usize) -> VerificationReport {
    VerificationReport::from_cells(format!("stirling_egf n={n}"), || {
        stirling2_egf_cells(tables, n, order)
    })
}

pub fn stirling2_egf_cells(tables: &Tables, n: usize, order: usize) -> Vec<Cell> {
    let exp = PowerSeries::exp(order);
    let exp_minus_one = &exp - &PowerSeries::one(order);
    let inv_fact = Rational::new(Integer::one(), factorial(n as u64));
    let rhs = (&exp_minus_one.pow(n) * &exp).scale(&inv_fact);
    (0..=order)
        .map(|k| {
            let lhs = Rational::new(tables.second.get(k + 1, n + 1), factorial(k as u64));
            Cell::new(format_args!("n={n},k={k}"), lhs, rhs.coeff(k).clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    /// Counts permutations of `0..n` by number of cycles.
    fn brute_cycles(n: usize) -> Vec<u64> {
        fn permute(items: &mut Vec<usize>, at: usize, counts: &mut [u64]) {
            if at == items.len() {
                let mut seen = vec![false; items.len()];
                let mut cycles = 0;
                for s in 0..items.len() {
                    if !seen[s] {
                        cycles += 1;
                        let mut i = s;
                        while !seen[i] {
                            seen[i] = true;
                            i = items[i];
                        }
                    }
                }
                counts[cycles] += 1;
                return;
            }
            for i in at..items.len() {
                items.swap(at, i);
                permute(items, at + 1, counts);
                items.swap(at, i);
            }
        }
        let mut counts = vec![0; n + 1];
        permute(&mut (0..n).collect(), 0, &mut counts);
        counts
    }

    /// Counts set partitions of an n-set by number of blocks (restricted growth strings).
    fn brute_partitions(n: usize) -> Vec<u64> {
        fn grow(len: usize, n: usize, blocks: usize, counts: &mut [u64]) {
            if len == n {
                counts[blocks] += 1;
                return;
            }
            for b in 0..=blocks {
                grow(len + 1, n, blocks.max(b + 1), counts);
            }
        }
        let mut counts = vec![0; n + 1];
        if n == 0 {
            counts[0] = 1;
        } else {
            grow(0, n, 0, &mut counts);
        }
        counts
    }

    #[test]
    fn first_kind_matches_enumeration() {
        for n in 0..=7 {
            let brute = brute_cycles(n);
            assert_eq!(brute.len(), n + 1);
            for (k, &b) in brute.iter().enumerate() {
                assert_eq!(stirling1u(n, k), Integer::from(b), "[{n} {k}]");
            }
        }
        assert_eq!(stirling1u(3, 1), Integer::from(2));
        assert_eq!(stirling1u(4, 2), Integer::from(11));
        assert_eq!(stirling1u(9, 9), Integer::one());
    }

    #[test]
    fn second_kind_matches_enumeration() {
        for n in 0..=9 {
            let brute = brute_partitions(n);
            assert_eq!(brute.len(), n + 1);
            for (k, &b) in brute.iter().enumerate() {
                assert_eq!(stirling2(n, k), Integer::from(b), "{{{n} {k}}}");
            }
        }
        assert_eq!(stirling2(4, 2), Integer::from(7));
        assert_eq!(stirling2(3, 2), Integer::from(3));
        assert_eq!(stirling2(12, 1), Integer::one());
    }

    #[test]
    fn boundary_entries() {
        let t = Tables::new();
        for n in 0..=25 {
            assert_eq!(t.first.get(n, n), Integer::one());
            assert_eq!(t.second.get(n, n), Integer::one());
            assert_eq!(t.first.get(n, n + 3), Integer::zero());
            assert_eq!(t.second.get(n, n + 1), Integer::zero());
            if n >= 1 {
                assert_eq!(t.first.get(n, 0), Integer::zero());
                assert_eq!(t.second.get(n, 0), Integer::zero());
            }
        }
    }

    #[test]
    fn first_kind_row_sums_are_factorials() {
        let t = Tables::new();
        for n in 0..=30 {
            let s: Integer = t.first.row(n).into_iter().sum();
            assert_eq!(s, factorial(n as u64));
        }
    }

    #[test]
    fn signed_kinds_are_orthogonal() {
        let t = Tables::new();
        let signed = |sign_exp: usize, v: Integer| if sign_exp.is_multiple_of(2) { v } else { -v };
        for n in 0..=20usize {
            for m in 0..=n {
                let expected = if n == m {
                    Integer::one()
                } else {
                    Integer::zero()
                };
                let second_then_first: Integer = (m..=n)
                    .map(|k| signed(k - m, t.second.get(n, k) * t.first.get(k, m)))
                    .sum();
                let first_then_second: Integer = (m..=n)
                    .map(|k| signed(n - k, t.first.get(n, k) * t.second.get(k, m)))
                    .sum();
                assert_eq!(second_then_first, expected, "n={n} m={m}");
                assert_eq!(first_then_second, expected, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn mixed_sum_examples() {
        let t = Tables::new();
        assert_eq!(stirling_mixed_sum(&t, 2, 0), Integer::from(6));
        assert_eq!(mixed_sum_closed_form(2, 0), Integer::from(6));
        assert_eq!(stirling_mixed_sum(&t, 3, 1), Integer::from(36));
        assert_eq!(mixed_sum_closed_form(3, 1), Integer::from(36));
        for n in 0..=10 {
            assert_eq!(stirling_mixed_sum(&t, n, n), Integer::one());
        }
    }

    #[test]
    fn mixed_sum_convolution_to_30() {
        let t = Tables::new();
        for n in 0..=30usize {
            for j in 0..=n {
                assert_eq!(
                    stirling_mixed_sum(&t, n, j) * factorial(j as u64),
                    factorial(n as u64) * binomial(n as u64 + 1, j as u64 + 1),
                );
            }
        }
    }

    #[test]
    fn transform_of_delta() {
        let t = Tables::new();
        let mut delta = vec![Rational::zero(); 8];
        delta[0] = Rational::one();
        let b = stirling_transform(&t, &delta);
        for (n, bn) in b.iter().enumerate() {
            assert_eq!(bn, &rational_from(factorial(n as u64)));
        }
        let a = inverse_stirling_transform(&t, &delta);
        for (n, an) in a.iter().enumerate() {
            assert_eq!(an, &rational(if n % 2 == 0 { 1 } else { -1 }, 1));
        }
        assert!(stirling_transform(&t, &[]).is_empty());
        assert!(inverse_stirling_transform(&t, &[]).is_empty());
    }

    #[test]
    fn transform_roundtrip_small() {
        let t = Tables::new();
        let a: Vec<Rational> = (1..=4).map(|d| rational(1, d)).collect();
        assert_eq!(
            inverse_stirling_transform(&t, &stirling_transform(&t, &a)),
            a
        );
        assert_eq!(
            stirling_transform(&t, &inverse_stirling_transform(&t, &a)),
            a
        );
    }

    #[test]
    fn csv_dump() {
        let t = StirlingTable::second();
        assert_eq!(t.to_csv(3), "1\n0,1\n0,1,1\n0,1,3,1\n");
    }

    #[test]
    fn egf_check_passes() {
        let t = Tables::new();
        for (n, order) in [(0, 10), (2, 15), (5, 20)] {
            let r = stirling2_egf_check(&t, n, order);
            assert!(r.passed, "{:?}", r.failures);
            assert_eq!(r.cells_checked, order + 1);
        }
    }
}
