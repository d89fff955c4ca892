//! Classical Bernoulli numbers (convention `B_1 = −1/2`) and poly-Bernoulli
//! numbers `B_k^{(p)}` for every integer upper index.
//!
//! `poly_bernoulli` extracts coefficients from the generating function
//! `Li_p(1−e^{−t})/(1−e^{−t})`. For negative upper index there is also the
//! Arakawa–Kaneko double-Stirling closed form, kept as an independent path.

use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, rational_from, Integer, Rational};
use crate::series::polybernoulli_egf;
use crate::Tables;

/// Monotonically memoized `B_0, B_1, …`.
#[derive(Debug)]
pub struct BernoulliCache {
    values: RwLock<Vec<Rational>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self {
            values: RwLock::new(vec![Rational::one()]),
        }
    }

    pub fn grow_to(&self, n: usize) {
        if self.values.read().unwrap().len() > n {
            return;
        }
        let mut values = self.values.write().unwrap();
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m ≥ 1, solved for B_m.
        while values.len() <= n {
            let m = values.len() as u64;
            let s: Rational = values
                .iter()
                .enumerate()
                .map(|(k, b)| b * rational_from(binomial(m + 1, k as u64)))
                .sum();
            values.push(-s / rational_from(m + 1));
        }
    }

    pub fn get(&self, n: usize) -> Rational {
        self.grow_to(n);
        self.values.read().unwrap()[n].clone()
    }
}

pub fn bernoulli(n: usize) -> Rational {
    BernoulliCache::new().get(n)
}

/// `B_0^{(p)}, …, B_{kmax}^{(p)}` from a single series expansion.
pub fn poly_bernoulli_row(p: i64, kmax: usize) -> Vec<Rational> {
    let egf = polybernoulli_egf(p, kmax);
    let mut fact = Integer::one();
    egf.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if k > 0 {
                fact *= k;
            }
            c * rational_from(fact.clone())
        })
        .collect()
}

/// `B_k^{(p)} = k! · [t^k] Li_p(1−e^{−t})/(1−e^{−t})`.
pub fn poly_bernoulli(k: usize, p: i64) -> Rational {
    poly_bernoulli_row(p, k).pop().expect("row has k+1 entries")
}

/// `B_k^{(−p)} = Σ_{j=0}^{min(k,p)} (j!)²·{p+1, j+1}·{k+1, j+1}`.
pub fn poly_bernoulli_negative(tables: &Tables, k: usize, p: usize) -> Integer {
    (0..=k.min(p))
        .map(|j| {
            let f = factorial(j as u64);
            &f * &f * tables.second.get(p + 1, j + 1) * tables.second.get(k + 1, j + 1)
        })
        .fold(Integer::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), rational(1, 1));
        assert_eq!(bernoulli(1), rational(-1, 2));
        assert_eq!(bernoulli(2), rational(1, 6));
        assert_eq!(bernoulli(4), rational(-1, 30));
        assert_eq!(bernoulli(12), rational(-691, 2730));
    }

    // Independent route: B_n = n! [t^n] t/(e^t − 1), expanded as
    // 1 / Σ_{k≥0} t^k/(k+1)!.
    #[test]
    fn recurrence_matches_generating_function() {
        use crate::series::PowerSeries;
        let n = 30;
        let denom = PowerSeries::from_fn(n, |k| {
            Rational::new(Integer::one(), factorial(k as u64 + 1))
        });
        let egf = PowerSeries::one(n).checked_div(&denom).unwrap();
        let cache = BernoulliCache::new();
        for k in 0..=n {
            assert_eq!(
                egf.coeff(k) * rational_from(factorial(k as u64)),
                cache.get(k),
                "B_{k}"
            );
        }
    }

    #[test]
    fn odd_index_vanishes() {
        let cache = BernoulliCache::new();
        for k in 1..=15 {
            assert!(cache.get(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn poly_bernoulli_examples() {
        for p in -6..=6 {
            assert_eq!(poly_bernoulli(0, p), rational(1, 1));
        }
        assert_eq!(poly_bernoulli(1, 1), rational(1, 2));
        assert_eq!(poly_bernoulli(1, 2), rational(1, 4));
        assert_eq!(poly_bernoulli(2, -1), rational(4, 1));
    }

    #[test]
    fn upper_index_one_is_signed_bernoulli() {
        let row = poly_bernoulli_row(1, 30);
        let cache = BernoulliCache::new();
        for (k, v) in row.iter().enumerate() {
            let b = cache.get(k);
            let expected = if k % 2 == 0 { b } else { -b };
            assert_eq!(v, &expected, "k={k}");
        }
    }

    #[test]
    fn negative_closed_form_examples() {
        let t = Tables::new();
        for k in 0..=10 {
            assert_eq!(poly_bernoulli_negative(&t, k, 1), Integer::from(1u64 << k));
        }
        for p in 0..=10 {
            assert_eq!(poly_bernoulli_negative(&t, 0, p), Integer::one());
        }
        assert_eq!(poly_bernoulli_negative(&t, 2, 2), Integer::from(14));
        assert_eq!(
            rational_from(poly_bernoulli_negative(&t, 2, 2)),
            poly_bernoulli(2, -2)
        );
    }

    #[test]
    fn negative_closed_form_is_symmetric() {
        let t = Tables::new();
        for k in 0..=15 {
            for p in 0..=15 {
                assert_eq!(
                    poly_bernoulli_negative(&t, k, p),
                    poly_bernoulli_negative(&t, p, k)
                );
            }
        }
    }

    #[test]
    fn both_paths_agree() {
        let t = Tables::new();
        for p in 0..=8usize {
            let row = poly_bernoulli_row(-(p as i64), 20);
            for (k, v) in row.iter().enumerate() {
                assert_eq!(
                    v,
                    &rational_from(poly_bernoulli_negative(&t, k, p)),
                    "k={k} p={p}"
                );
            }
        }
    }

    #[test]
    fn integral_for_nonpositive_upper_index() {
        for p in -8..=0 {
            for v in poly_bernoulli_row(p, 20) {
                assert!(v.is_integer(), "p={p}: {v}");
            }
        }
    }
}
