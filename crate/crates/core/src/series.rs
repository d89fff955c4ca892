//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order `N` carries coefficients `c_0..=c_N`; everything past
//! `t^N` is unknown. Binary operations truncate to the smaller order, and the
//! truncation order is always explicit. All products are schoolbook `O(N^2)`.
//!
//! This is the oracle used to replay the generating-function arguments behind
//! the closed forms to a finite order.

use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_rational, int_pow, rational, rational_from, Integer, Rational};
use crate::harmonic::harmonic_direct;
use crate::report::{Cell, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Builds a series whose order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector; a series always has at least `c_0`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a power series needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::from_coeffs((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    /// `c·t^degree`, or zero when `degree > order`.
    pub fn monomial(order: usize, degree: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The formal variable `t`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(order, 1, Rational::one())
    }

    /// `Σ t^k = 1/(1−t)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::one())
    }

    /// `e^t`.
    pub fn exp(order: usize) -> Self {
        let mut c = Rational::one();
        Self::from_fn(order, |k| {
            if k > 0 {
                c /= rational_from(k as u64);
            }
            c.clone()
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`. Panics when `k` exceeds the order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient, `None` if zero to this order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient `self / divisor`.
    ///
    /// Common powers of `t` are stripped first, then the dividend is multiplied
    /// by the inverse of the remaining unit. Stripping `v = valuation(divisor)`
    /// loses `v` orders: the result has order `min(orders) − v`.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self> {
        let order = self.order().min(divisor.order());
        let dv = divisor
            .truncate(order)
            .valuation()
            .ok_or(Error::ZeroDivisor(order))?;
        let out_order = order - dv;
        let Some(av) = self.truncate(order).valuation() else {
            return Ok(Self::zero(out_order));
        };
        if dv > av {
            return Err(Error::NegativeValuation {
                divisor: dv,
                dividend: av,
            });
        }
        let num = Self::from_coeffs(self.coeffs[dv..=order].to_vec());
        let unit = Self::from_coeffs(divisor.coeffs[dv..=order].to_vec());
        Ok(&num * &unit.unit_inverse())
    }

    /// Inverse of a series with nonzero constant term:
    /// `d_0 = 1/u_0`, `d_n = −(1/u_0)·Σ_{k=1}^{n} u_k d_{n−k}`.
    fn unit_inverse(&self) -> Self {
        let inv0 = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let s: Rational = (1..=n)
                .filter(|&k| !self.coeffs[k].is_zero())
                .map(|k| &self.coeffs[k] * &out[n - k])
                .sum();
            out.push(-(s * &inv0));
        }
        Self::from_coeffs(out)
    }

    /// `self ∘ inner = Σ_k c_k·inner^k` in the truncated ring. `inner` must
    /// have zero constant term, so `inner^k` vanishes below `t^k` and only the
    /// first `order + 1` outer coefficients contribute.
    ///
    /// Powers of `inner` are accumulated and scaled rather than nesting by
    /// Horner's rule: the powers keep the inner series' small denominators,
    /// where a Horner accumulator would carry the outer coefficients' through
    /// every product.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::monomial(order, 0, self.coeffs[0].clone());
        let mut power = Self::one(order);
        for (k, c) in self.coeffs[..=order].iter().enumerate().skip(1) {
            power = &power * &inner;
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.coeffs[k..].iter_mut().zip(&power.coeffs[k..]) {
                if !x.is_zero() {
                    *a += c * x;
                }
            }
        }
        Ok(acc)
    }

    /// JSON array of `"num/den"` strings, lowest degree first.
    pub fn to_json(&self) -> String {
        let strs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        serde_json::to_string(&strs).expect("strings serialize")
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    /// Cauchy product. Both sides are scaled to integer numerators over a
    /// common denominator, so the convolution runs in `Integer` and each
    /// output coefficient is reduced once.
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let (a, da) = cleared(&self.coeffs[..=order]);
        let (b, db) = cleared(&rhs.coeffs[..=order]);
        let mut out = vec![Integer::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..=order - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let denom = da * db;
        PowerSeries::from_coeffs(
            out.into_iter()
                .map(|c| Rational::new(c, denom.clone()))
                .collect(),
        )
    }
}

/// Integer numerators over the lcm of the denominators.
fn cleared(coeffs: &[Rational]) -> (Vec<Integer>, Integer) {
    let lcm = coeffs.iter().fold(Integer::one(), |l, c| l.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    (nums, lcm)
}

/// `Li_p(t) = Σ_{k≥1} t^k / k^p` for any integer `p`.
pub fn series_li(p: i64, order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |k| {
        if k == 0 {
            return Rational::zero();
        }
        let power = int_pow(&Integer::from(k), p.unsigned_abs() as u32);
        if p >= 0 {
            Rational::new(Integer::one(), power)
        } else {
            rational_from(power)
        }
    })
}

/// `1 − e^{−t}`: `c_0 = 0`, `c_k = −(−1)^k / k!`.
pub fn series_one_minus_exp_neg(order: usize) -> PowerSeries {
    let e_neg = exp_neg(order);
    &PowerSeries::one(order) - &e_neg
}

fn exp_neg(order: usize) -> PowerSeries {
    PowerSeries::exp(order)
        .compose(&PowerSeries::variable(order).scale(&rational(-1, 1)))
        .expect("−t has zero constant term")
}

/// `Li_p(1 − e^{−t}) / (1 − e^{−t})`, the exponential generating function of
/// the poly-Bernoulli numbers `B_k^{(p)}`. Its constant term is 1, so the
/// expansion starts at `k = 0` with `B_0^{(p)} = 1`.
pub fn polybernoulli_egf(p: i64, order: usize) -> PowerSeries {
    let u = series_one_minus_exp_neg(order + 1);
    let li = series_li(p, order + 1);
    li.compose(&u)
        .and_then(|num| num.checked_div(&u))
        .expect("1 − e^{−t} has valuation exactly 1")
}

/// Checks that `Li_p(t)/(1−t) = Σ_k H_k^{(p)} t^k` through `order`.
pub fn harmonic_ogf_check(p: i64, order: usize) -> VerificationReport {
    VerificationReport::from_cells(format!("gfgh p={p}"), || harmonic_ogf_cells(p, order))
}

pub fn harmonic_ogf_cells(p: i64, order: usize) -> Vec<Cell> {
    let one_minus_t = &PowerSeries::one(order) - &PowerSeries::variable(order);
    let ogf = series_li(p, order)
        .checked_div(&one_minus_t)
        .expect("1 − t is a unit");
    (0..=order)
        .map(|k| {
            Cell::new(
                format_args!("p={p},k={k}"),
                harmonic_direct(k as u64, p),
                ogf.coeff(k).clone(),
            )
        })
        .collect()
}

/// Checks the substitution step
/// `Li_p(1−e^{−t})/(1−e^{−t}) = Σ_n (−1)^n H_{n+1}^{(p)} (e^{−t}−1)^n e^{−t}`
/// coefficient by coefficient through `order`.
pub fn harmonic_substitution_check(p: i64, order: usize) -> VerificationReport {
    VerificationReport::from_cells(format!("substitution p={p}"), || {
        harmonic_substitution_cells(p, order)
    })
}

pub fn harmonic_substitution_cells(p: i64, order: usize) -> Vec<Cell> {
    let lhs = polybernoulli_egf(p, order);
    let e_neg = exp_neg(order);
    let w = &e_neg - &PowerSeries::one(order);
    let mut rhs = PowerSeries::zero(order);
    let mut w_pow = PowerSeries::one(order);
    // (e^{−t}−1)^n has valuation n, so terms past `order` vanish.
    for n in 0..=order {
        let mut h = harmonic_direct(n as u64 + 1, p);
        if n % 2 == 1 {
            h = -h;
        }
        rhs = &rhs + &(&w_pow * &e_neg).scale(&h);
        w_pow = &w_pow * &w;
    }
    (0..=order)
        .map(|k| {
            Cell::new(
                format_args!("p={p},k={k}"),
                lhs.coeff(k).clone(),
                rhs.coeff(k).clone(),
            )
        })
        .collect()
}
