//! Generalized harmonic numbers `H_n^{(p)} = Σ_{k=1}^{n} k^{−p}` for every
//! integer `p`. Negative `p` gives sums of powers through the same code path.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::bernoulli::poly_bernoulli_row;
use crate::error::{Error, Result};
use crate::exact::{factorial, int_pow, rational_from, Integer, Rational};
use crate::Tables;

/// Literal summation; the reference for everything else in this module.
pub fn harmonic_direct(n: u64, p: i64) -> Rational {
    let e = p.unsigned_abs() as u32;
    if p <= 0 {
        let s: Integer = (1..=n).map(|k| int_pow(&Integer::from(k), e)).sum();
        return rational_from(s);
    }
    (1..=n)
        .map(|k| Rational::new(Integer::one(), int_pow(&Integer::from(k), e)))
        .sum()
}

/// `H_{n+1}^{(p)} = (1/n!) Σ_{j=0}^{n} [n+1, j+1] B_j^{(p)}`.
pub fn harmonic_theorem1(tables: &Tables, n: usize, p: i64) -> Rational {
    harmonic_theorem1_from_row(tables, n, &poly_bernoulli_row(p, n))
}

/// As [`harmonic_theorem1`], with `B_0^{(p)}..=B_n^{(p)}` supplied by the caller.
pub fn harmonic_theorem1_from_row(
    tables: &Tables,
    n: usize,
    poly_bernoulli: &[Rational],
) -> Rational {
    assert!(poly_bernoulli.len() > n, "need B_0..=B_{n}");
    let row = tables.first.row(n + 1);
    let s: Rational = (0..=n)
        .map(|j| rational_from(row[j + 1].clone()) * &poly_bernoulli[j])
        .sum();
    s / rational_from(factorial(n as u64))
}

/// `H_{n+1} = (1/n!) Σ_{k=0}^{n} (−1)^k [n+1, k+1] B_k`.
pub fn harmonic_classical(tables: &Tables, n: usize) -> Rational {
    let row = tables.first.row(n + 1);
    let s: Rational = (0..=n)
        .map(|k| {
            let term = rational_from(row[k + 1].clone()) * tables.bernoulli.get(k);
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    s / rational_from(factorial(n as u64))
}

/// `B_n^{(p)} = Σ_{k=0}^{n} (−1)^{n−k} {n+1, k+1} k! H_{k+1}^{(p)}`.
pub fn polybernoulli_from_harmonic(tables: &Tables, n: usize, p: i64) -> Rational {
    let row = tables.second.row(n + 1);
    let mut fact = Integer::one();
    let mut acc = Rational::zero();
    for k in 0..=n {
        if k > 0 {
            fact *= k;
        }
        let term = rational_from(&row[k + 1] * &fact) * harmonic_direct(k as u64 + 1, p);
        if (n - k).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HarmonicMethod {
    Direct,
    Theorem1,
    /// The classical Bernoulli form, only for `p = 1`.
    Eq2,
}

impl HarmonicMethod {
    pub const ALL: [HarmonicMethod; 3] = [Self::Direct, Self::Theorem1, Self::Eq2];

    pub fn name(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::Theorem1 => "theorem1",
            Self::Eq2 => "eq2",
        }
    }
}

impl fmt::Display for HarmonicMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HarmonicMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown harmonic method {s:?}; expected direct|theorem1|eq2"
                ))
            })
    }
}

/// `H_n^{(p)}` by the chosen method. The Stirling forms give `H_{n+1}` from
/// index `n`, so `n = 0` is the empty sum for all of them.
pub fn harmonic(tables: &Tables, n: u64, p: i64, method: HarmonicMethod) -> Result<Rational> {
    match method {
        HarmonicMethod::Direct => Ok(harmonic_direct(n, p)),
        _ if method == HarmonicMethod::Eq2 && p != 1 => Err(Error::Domain(format!(
            "method eq2 requires p = 1, got p = {p}"
        ))),
        _ if n == 0 => Ok(Rational::zero()),
        HarmonicMethod::Theorem1 => Ok(harmonic_theorem1(tables, (n - 1) as usize, p)),
        HarmonicMethod::Eq2 => Ok(harmonic_classical(tables, (n - 1) as usize)),
    }
}
