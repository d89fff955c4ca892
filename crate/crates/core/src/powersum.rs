//! `Σ_{k=1}^{n} k^p` by literal summation and by five closed forms, plus the
//! closed form of `Li_{−p}` used to derive the last of them.
//!
//! Every closed form has at most `p + 1` summands whatever the size of `n`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    as_integer, binomial, factorial, format_rational, int_pow, rational_from, Integer, Rational,
};
use crate::report::{Cell, VerificationReport};
use crate::series::PowerSeries;
use crate::stirling::stirling_mixed_sum;
use crate::Tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaId {
    Direct,
    Faulhaber,
    GouldA,
    GouldB,
    CorollaryStirling,
    Theorem2Stirling,
}

impl FormulaId {
    pub const ALL: [FormulaId; 6] = [
        Self::Direct,
        Self::Faulhaber,
        Self::GouldA,
        Self::GouldB,
        Self::CorollaryStirling,
        Self::Theorem2Stirling,
    ];

    pub const CLOSED_FORMS: [FormulaId; 5] = [
        Self::Faulhaber,
        Self::GouldA,
        Self::GouldB,
        Self::CorollaryStirling,
        Self::Theorem2Stirling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::Faulhaber => "faulhaber",
            Self::GouldA => "gould_a",
            Self::GouldB => "gould_b",
            Self::CorollaryStirling => "corollary_stirling",
            Self::Theorem2Stirling => "theorem2_stirling",
        }
    }

    /// Rejects `(n, p)` outside the range on which the formula is stated.
    ///
    /// At `p = 0` both Gould forms count a `k = 0` term under `0^0 = 1` and
    /// return `n + 1`, so they start at `p = 1`.
    pub fn check_domain(self, n: u64, p: u32) -> Result<()> {
        let need = match self {
            Self::GouldA | Self::GouldB if p == 0 => "p >= 1",
            Self::Theorem2Stirling if n == 0 && p == 0 => "n >= 1 and p >= 1",
            Self::Theorem2Stirling if n == 0 => "n >= 1",
            Self::Theorem2Stirling if p == 0 => "p >= 1",
            _ => return Ok(()),
        };
        Err(Error::Domain(format!(
            "{self} requires {need} (got n = {n}, p = {p})"
        )))
    }

    pub fn in_domain(self, n: u64, p: u32) -> bool {
        self.check_domain(n, p).is_ok()
    }

    pub fn evaluate(self, tables: &Tables, n: u64, p: u32) -> Result<Integer> {
        match self {
            Self::Direct => Ok(powersum_direct(n, p)),
            Self::Faulhaber => powersum_faulhaber(tables, n, p),
            Self::GouldA => powersum_gould_a(tables, n, p),
            Self::GouldB => powersum_gould_b(tables, n, p),
            Self::CorollaryStirling => Ok(powersum_corollary(tables, n, p)),
            Self::Theorem2Stirling => powersum_theorem2(tables, n, p),
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|f| f.name()).collect();
                Error::Domain(format!(
                    "unknown formula {s:?}; expected one of {}",
                    names.join("|")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerSumQuery {
    pub n: u64,
    pub p: u32,
    pub formula: FormulaId,
}

impl PowerSumQuery {
    pub fn evaluate(&self, tables: &Tables) -> Result<Integer> {
        self.formula.check_domain(self.n, self.p)?;
        self.formula.evaluate(tables, self.n, self.p)
    }
}

fn signed(negative: bool, v: Integer) -> Integer {
    if negative {
        -v
    } else {
        v
    }
}

pub fn powersum_direct(n: u64, p: u32) -> Integer {
    (1..=n).map(|k| int_pow(&Integer::from(k), p)).sum()
}

/// `(1/(p+1)) Σ_{k=0}^{p} (−1)^k C(p+1, k) B_k n^{p+1−k}`, asserted integral.
pub fn powersum_faulhaber(tables: &Tables, n: u64, p: u32) -> Result<Integer> {
    let value = faulhaber_rational(tables, n, p);
    as_integer(&value).ok_or_else(|| Error::NonIntegral {
        formula: "faulhaber",
        value: format_rational(&value),
    })
}

/// Faulhaber's sum before the integrality assertion.
pub fn faulhaber_rational(tables: &Tables, n: u64, p: u32) -> Rational {
    let n_big = Integer::from(n);
    let p1 = u64::from(p) + 1;
    let s: Rational = (0..=p)
        .map(|k| {
            let c = signed(
                k % 2 == 1,
                binomial(p1, u64::from(k)) * int_pow(&n_big, p + 1 - k),
            );
            tables.bernoulli.get(k as usize) * rational_from(c)
        })
        .sum();
    s / rational_from(p1)
}

/// `Σ_{j=0}^{p} j! {p, j} C(n+1, j+1)`.
pub fn powersum_gould_a(tables: &Tables, n: u64, p: u32) -> Result<Integer> {
    FormulaId::GouldA.check_domain(n, p)?;
    let p = p as usize;
    let row = tables.second.row(p);
    Ok((0..=p)
        .map(|j| factorial(j as u64) * &row[j] * binomial(n + 1, j as u64 + 1))
        .sum())
}

/// `Σ_{j=0}^{p} (−1)^{p+j} j! {p, j} C(n+j, j+1)`.
pub fn powersum_gould_b(tables: &Tables, n: u64, p: u32) -> Result<Integer> {
    FormulaId::GouldB.check_domain(n, p)?;
    let p = p as usize;
    let row = tables.second.row(p);
    Ok((0..=p)
        .map(|j| {
            let term = factorial(j as u64) * &row[j] * binomial(n + j as u64, j as u64 + 1);
            signed((p + j) % 2 == 1, term)
        })
        .sum())
}

/// `Σ_{j=0}^{p} j! {p+1, j+1} C(n, j+1)`.
pub fn powersum_corollary(tables: &Tables, n: u64, p: u32) -> Integer {
    let p = p as usize;
    let row = tables.second.row(p + 1);
    (0..=p)
        .map(|j| factorial(j as u64) * &row[j + 1] * binomial(n, j as u64 + 1))
        .sum()
}

/// `Σ_{j=0}^{p} (−1)^{p+j} j! {p+1, j+1} C(n+j+1, j+1)`, for `n, p ≥ 1`.
pub fn powersum_theorem2(tables: &Tables, n: u64, p: u32) -> Result<Integer> {
    FormulaId::Theorem2Stirling.check_domain(n, p)?;
    let p = p as usize;
    let row = tables.second.row(p + 1);
    Ok((0..=p)
        .map(|j| {
            let term = factorial(j as u64) * &row[j + 1] * binomial(n + j as u64 + 1, j as u64 + 1);
            signed((p + j) % 2 == 1, term)
        })
        .sum())
}

/// `Σ_{k=1}^{n+1} k^p` in the intermediate form
/// `(1/n!) Σ_j (j!)² {p+1, j+1} Σ_{k=j}^{n} [n+1, k+1] {k+1, j+1}`,
/// before the inner convolution is collapsed.
pub fn corollary_before_convolution(tables: &Tables, n: usize, p: usize) -> Rational {
    let s: Integer = (0..=n.min(p))
        .map(|j| {
            let f = factorial(j as u64);
            &f * &f * tables.second.get(p + 1, j + 1) * stirling_mixed_sum(tables, n, j)
        })
        .sum();
    Rational::new(s, factorial(n as u64))
}

/// `Li_{−p}(t) = (−1)^{p+1} Σ_{k=0}^{p} k! {p+1, k+1} (−1/(1−t))^{k+1}`.
pub fn polylog_neg_eval(tables: &Tables, p: u32, t: &Rational) -> Result<Rational> {
    if p == 0 {
        return Err(Error::Domain("polylog requires p >= 1".into()));
    }
    if t.is_one() {
        return Err(Error::Domain("polylog has a pole at t = 1".into()));
    }
    let p = p as usize;
    let row = tables.second.row(p + 1);
    let base = -(Rational::one() - t).recip();
    let mut power = Rational::one();
    let mut acc = Rational::zero();
    for k in 0..=p {
        power *= &base;
        acc += rational_from(factorial(k as u64) * &row[k + 1]) * &power;
    }
    Ok(if p.is_multiple_of(2) { -acc } else { acc })
}

/// Expands `Li_{−p}(t)/(1−t)` from the closed form, using
/// `(1−t)^{−(k+1)} = Σ_m C(m+k, k) t^m`, and checks coefficient `n` against
/// `Σ_{k≤n} k^p` for `0 ≤ n ≤ order`.
pub fn polylog_neg_coeff_check(tables: &Tables, p: u32, order: usize) -> VerificationReport {
    VerificationReport::from_cells(format!("polylog_coeffs p={p}"), || {
        polylog_neg_coeff_cells(tables, p, order)
    })
}

pub fn polylog_neg_coeff_cells(tables: &Tables, p: u32, order: usize) -> Vec<Cell> {
    let pu = p as usize;
    let row = tables.second.row(pu + 1);
    let mut li = PowerSeries::zero(order);
    for k in 0..=pu {
        // (−1)^{p+1} · (−1)^{k+1} · k! {p+1, k+1}
        let c = signed((pu + k) % 2 == 1, factorial(k as u64) * &row[k + 1]);
        let pole =
            PowerSeries::from_fn(order, |m| rational_from(binomial((m + k) as u64, k as u64)));
        li = &li + &pole.scale(&rational_from(c));
    }
    let one_minus_t = &PowerSeries::one(order) - &PowerSeries::variable(order);
    let ogf = li.checked_div(&one_minus_t).expect("1 − t is a unit");
    (0..=order)
        .map(|n| {
            Cell::new(
                format_args!("p={p},n={n}"),
                rational_from(powersum_direct(n as u64, p)),
                ogf.coeff(n).clone(),
            )
        })
        .collect()
}
