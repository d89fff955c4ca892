//! Exact integers and rationals, plus the handful of combinatorial scalars the
//! formulas need.
//!
//! `Integer` and `Rational` are the `num` big-number types. A `Rational` is
//! always reduced with a positive denominator, so `==` is structural.
//!
//! The text form is ASCII `num/den`, with `/den` omitted when the denominator
//! is 1 (`-1/2`, `14`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::ParseRationalError;

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `n!`, exactly.
pub fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    // Each prefix product C(n-k+i, i) is integral, so the division is exact.
    let mut acc = Integer::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `base^e` with `0^0 = 1`.
pub fn int_pow(base: &Integer, e: u32) -> Integer {
    Pow::pow(base, e)
}

/// `(-1)^e` as a small integer.
pub fn sign_pow(e: u64) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn rational(n: impl Into<Integer>, d: impl Into<Integer>) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rational_from(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

/// Returns the numerator when `r` is an integer.
pub fn as_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.numer().clone())
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `[+-]digits[/digits]`. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(s.to_owned());
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |part: &str| -> Result<Integer, ParseRationalError> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        Integer::parse_bytes(part.as_bytes(), 10).ok_or_else(invalid)
    };
    let mut numer = digits(num)?;
    if negative {
        numer = -numer;
    }
    let denom = match den {
        Some(d) => digits(d)?,
        None => Integer::one(),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_owned()));
    }
    Ok(Rational::new(numer, denom))
}
