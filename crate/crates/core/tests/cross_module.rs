//! Contracts that span modules: the transform pair against harmonic and
//! poly-Bernoulli values, and randomized formula agreement.

use num_traits::{One, Zero};
use proptest::prelude::*;

use powsum::bernoulli::{poly_bernoulli, poly_bernoulli_row};
use powsum::exact::{factorial, rational, rational_from, Rational};
use powsum::harmonic::{harmonic_direct, harmonic_theorem1};
use powsum::powersum::{powersum_direct, FormulaId};
use powsum::series::polybernoulli_egf;
use powsum::stirling::{inverse_stirling_transform, stirling_transform};
use powsum::Tables;

#[test]
fn forward_transform_of_signed_bernoulli_gives_scaled_harmonic() {
    let t = Tables::new();
    let a = poly_bernoulli_row(1, 3);
    let b = stirling_transform(&t, &a);
    for (n, bn) in b.iter().enumerate() {
        let expected = rational_from(factorial(n as u64)) * harmonic_direct(n as u64 + 1, 1);
        assert_eq!(bn, &expected, "n={n}");
    }
    assert_eq!(
        b,
        vec![
            rational(1, 1),
            rational(3, 2),
            rational(11, 3),
            rational(25, 2)
        ]
    );
}

#[test]
fn inverse_transform_of_scaled_harmonic_gives_poly_bernoulli() {
    let t = Tables::new();
    let b: Vec<Rational> = (0..=4u64)
        .map(|k| rational_from(factorial(k)) * harmonic_direct(k + 1, 2))
        .collect();
    let a = inverse_stirling_transform(&t, &b);
    assert_eq!(a, poly_bernoulli_row(2, 4));
}

#[test]
fn egf_coefficients_are_poly_bernoulli_numbers() {
    for p in -8..=8i64 {
        let egf = polybernoulli_egf(p, 20);
        for k in 0..=20usize {
            let scaled = egf.coeff(k) * rational_from(factorial(k as u64));
            assert_eq!(scaled, poly_bernoulli(k, p), "k={k} p={p}");
        }
    }
}

#[test]
fn empty_sums() {
    let t = Tables::new();
    for p in -5..=5 {
        assert!(harmonic_direct(0, p).is_zero());
        assert!(harmonic_theorem1(&t, 0, p).is_one());
    }
    for f in [
        FormulaId::Direct,
        FormulaId::Faulhaber,
        FormulaId::GouldA,
        FormulaId::GouldB,
        FormulaId::CorollaryStirling,
    ] {
        for p in 1..6 {
            assert!(f.evaluate(&t, 0, p).unwrap().is_zero(), "{f} p={p}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_agree_off_grid(n in 0u64..5000, p in 0u32..24) {
        let t = Tables::new();
        let direct = powersum_direct(n, p);
        for f in FormulaId::CLOSED_FORMS {
            if f.in_domain(n, p) {
                prop_assert_eq!(f.evaluate(&t, n, p).unwrap(), direct.clone(), "{}", f);
            }
        }
    }

    #[test]
    fn transform_pair_inverts(raw in proptest::collection::vec((-500i64..500, 1i64..500), 0..30)) {
        let t = Tables::new();
        let a: Vec<Rational> = raw.into_iter().map(|(n, d)| rational(n, d)).collect();
        prop_assert_eq!(&inverse_stirling_transform(&t, &stirling_transform(&t, &a)), &a);
        prop_assert_eq!(&stirling_transform(&t, &inverse_stirling_transform(&t, &a)), &a);
    }
}

#[test]
fn shared_tables_across_threads() {
    let t = Tables::new();
    let answers: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4u32)
            .map(|i| {
                let t = &t;
                s.spawn(move || {
                    FormulaId::CorollaryStirling
                        .evaluate(t, 1000, 5 + i)
                        .unwrap()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (i, v) in answers.into_iter().enumerate() {
        assert_eq!(v, powersum_direct(1000, 5 + i as u32));
    }
}
