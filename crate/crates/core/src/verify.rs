//! Named suites of exact-equality checks, each a grid over `(n, p)` or a
//! series order. Cells are evaluated in parallel; their order in the report is
//! fixed by the grid, never by completion order.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bernoulli::{poly_bernoulli_negative, poly_bernoulli_row};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rational, rational_from, Rational};
use crate::harmonic::{
    harmonic_classical, harmonic_direct, harmonic_theorem1_from_row, polybernoulli_from_harmonic,
};
use crate::powersum::{
    corollary_before_convolution, faulhaber_rational, polylog_neg_coeff_cells, powersum_direct,
    FormulaId,
};
use crate::report::{Cell, VerificationReport};
use crate::series::{harmonic_ogf_cells, harmonic_substitution_cells};
use crate::stirling::{
    inverse_stirling_transform, stirling2_egf_cells, stirling_mixed_sum, stirling_transform,
};
use crate::Tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Formulas,
    Theorem1,
    Eq2,
    Polybernoulli,
    StirlingEgf,
    Nyra,
    TransformRoundtrip,
    Gfgh,
    PolylogCoeffs,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const EACH: [Suite; 9] = [
        Self::Formulas,
        Self::Theorem1,
        Self::Eq2,
        Self::Polybernoulli,
        Self::StirlingEgf,
        Self::Nyra,
        Self::TransformRoundtrip,
        Self::Gfgh,
        Self::PolylogCoeffs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Formulas => "formulas",
            Self::Theorem1 => "theorem1",
            Self::Eq2 => "eq2",
            Self::Polybernoulli => "polybernoulli",
            Self::StirlingEgf => "stirling_egf",
            Self::Nyra => "nyra",
            Self::TransformRoundtrip => "transform_roundtrip",
            Self::Gfgh => "gfgh",
            Self::PolylogCoeffs => "polylog_coeffs",
            Self::All => "all",
        }
    }

    /// Default `(nmax, pmax, order)` for the suite.
    fn defaults(self) -> (usize, usize, usize) {
        match self {
            Self::Formulas => (200, 30, 0),
            Self::Theorem1 | Self::Polybernoulli => (40, 8, 0),
            Self::Eq2 => (40, 1, 0),
            Self::StirlingEgf => (5, 0, 25),
            Self::Nyra => (30, 8, 0),
            Self::TransformRoundtrip => (30, 0, 0),
            Self::Gfgh => (0, 4, 25),
            Self::PolylogCoeffs => (0, 7, 25),
            Self::All => (0, 0, 0),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::EACH
            .into_iter()
            .chain([Self::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub nmax: Option<usize>,
    pub pmax: Option<usize>,
    pub order: Option<usize>,
    /// Adds one to the computed side of each suite's first cell.
    pub inject_fault: bool,
}

/// Number of random sequences in the transform round-trip suite.
pub const ROUNDTRIP_SEQUENCES: usize = 100;
const ROUNDTRIP_SEED: u64 = 0x005e_ed0f_5717;

/// Runs `suite`. For `all`, returns each constituent report followed by the
/// aggregate; otherwise a single report.
pub fn run(tables: &Tables, suite: Suite, opts: &VerifyOptions) -> Vec<VerificationReport> {
    if suite != Suite::All {
        return vec![run_one(tables, suite, opts)];
    }
    let mut reports: Vec<_> = Suite::EACH
        .iter()
        .map(|&s| run_one(tables, s, opts))
        .collect();
    let mut total = VerificationReport::new("all");
    for r in &reports {
        total.elapsed += r.elapsed;
        total.absorb(r.clone());
    }
    reports.push(total);
    reports
}

pub fn run_one(tables: &Tables, suite: Suite, opts: &VerifyOptions) -> VerificationReport {
    let (dn, dp, dorder) = suite.defaults();
    let nmax = opts.nmax.unwrap_or(dn);
    let pmax = opts.pmax.unwrap_or(dp);
    let order = opts.order.unwrap_or(dorder);
    let pmax_i = pmax as i64;
    VerificationReport::from_cells(suite.name(), || {
        let mut cells = match suite {
            Suite::Formulas => formula_cells(tables, nmax as u64, pmax as u32),
            Suite::Theorem1 => (-pmax_i..=pmax_i)
                .into_par_iter()
                .flat_map_iter(|p| {
                    let row = poly_bernoulli_row(p, nmax);
                    (0..=nmax)
                        .map(|n| {
                            Cell::new(
                                format_args!("n={n},p={p}"),
                                harmonic_direct(n as u64 + 1, p),
                                harmonic_theorem1_from_row(tables, n, &row),
                            )
                        })
                        .collect::<Vec<_>>()
                })
                .collect(),
            Suite::Eq2 => (0..=nmax)
                .into_par_iter()
                .map(|n| {
                    Cell::new(
                        format_args!("n={n}"),
                        harmonic_direct(n as u64 + 1, 1),
                        harmonic_classical(tables, n),
                    )
                })
                .collect(),
            Suite::Polybernoulli => polybernoulli_cells(tables, nmax, pmax),
            Suite::StirlingEgf => (0..=nmax)
                .into_par_iter()
                .flat_map_iter(|n| stirling2_egf_cells(tables, n, order.max(n)))
                .collect(),
            Suite::Nyra => nyra_cells(tables, nmax, pmax),
            Suite::TransformRoundtrip => roundtrip_cells(tables, nmax),
            Suite::Gfgh => (-pmax_i..=pmax_i)
                .into_par_iter()
                .flat_map_iter(|p| {
                    let mut c = harmonic_ogf_cells(p, order);
                    c.extend(harmonic_substitution_cells(p, order));
                    c
                })
                .collect(),
            Suite::PolylogCoeffs => (1..=pmax as u32)
                .into_par_iter()
                .flat_map_iter(|p| polylog_neg_coeff_cells(tables, p, order))
                .collect(),
            Suite::All => unreachable!("expanded by run"),
        };
        if opts.inject_fault {
            if let Some(first) = cells.first_mut() {
                first.got += Rational::one();
            }
        }
        cells
    })
}

fn formula_cells(tables: &Tables, nmax: u64, pmax: u32) -> Vec<Cell> {
    tables.grow_to(pmax as usize + 2);
    let grid: Vec<(u64, u32)> = (0..=nmax)
        .flat_map(|n| (0..=pmax).map(move |p| (n, p)))
        .collect();
    grid.into_par_iter()
        .flat_map_iter(|(n, p)| {
            let direct = rational_from(powersum_direct(n, p));
            FormulaId::CLOSED_FORMS
                .into_iter()
                .filter(move |f| f.in_domain(n, p))
                .map(move |f| {
                    let got = match f {
                        FormulaId::Faulhaber => faulhaber_rational(tables, n, p),
                        _ => rational_from(f.evaluate(tables, n, p).expect("in domain")),
                    };
                    Cell::new(format_args!("n={n},p={p},formula={f}"), direct.clone(), got)
                })
        })
        .collect()
}

fn polybernoulli_cells(tables: &Tables, kmax: usize, pmax: usize) -> Vec<Cell> {
    let pmax_i = pmax as i64;
    let rows: Vec<(i64, Vec<Rational>)> = (-pmax_i..=pmax_i.max(1))
        .into_par_iter()
        .map(|p| (p, poly_bernoulli_row(p, kmax)))
        .collect();
    let row_of = |p: i64| &rows.iter().find(|(q, _)| *q == p).expect("row computed").1;

    let mut cells = Vec::new();
    // generating function vs. double-Stirling closed form
    for p in 0..=pmax {
        let row = row_of(-(p as i64));
        for (k, v) in row.iter().enumerate() {
            cells.push(Cell::new(
                format_args!("k={k},p=-{p},route=closed_form"),
                rational_from(poly_bernoulli_negative(tables, k, p)),
                v.clone(),
            ));
        }
    }
    // B_k^{(1)} = (−1)^k B_k
    for (k, v) in row_of(1).iter().enumerate() {
        let b = tables.bernoulli.get(k);
        let expected = if k % 2 == 0 { b } else { -b };
        cells.push(Cell::new(
            format_args!("k={k},p=1,route=classical"),
            expected,
            v.clone(),
        ));
    }
    // generating function vs. inverse Stirling transform of k!·H_{k+1}^{(p)}
    let grid: Vec<(i64, usize)> = (-pmax_i..=pmax_i)
        .flat_map(|p| (0..=kmax).map(move |n| (p, n)))
        .collect();
    cells.par_extend(grid.into_par_iter().map(|(p, n)| {
        Cell::new(
            format_args!("k={n},p={p},route=harmonic"),
            row_of(p)[n].clone(),
            polybernoulli_from_harmonic(tables, n, p),
        )
    }));
    cells
}

fn nyra_cells(tables: &Tables, nmax: usize, pmax: usize) -> Vec<Cell> {
    let grid: Vec<(usize, usize)> = (0..=nmax)
        .flat_map(|n| (0..=n).map(move |j| (n, j)))
        .collect();
    let mut cells: Vec<Cell> = grid
        .into_par_iter()
        .map(|(n, j)| {
            Cell::new(
                format_args!("n={n},j={j}"),
                rational_from(factorial(n as u64) * binomial(n as u64 + 1, j as u64 + 1)),
                rational_from(stirling_mixed_sum(tables, n, j) * factorial(j as u64)),
            )
        })
        .collect();
    // the power-sum form the convolution is substituted into
    let grid: Vec<(usize, usize)> = (0..=nmax)
        .flat_map(|n| (0..=pmax).map(move |p| (n, p)))
        .collect();
    cells.par_extend(grid.into_par_iter().map(|(n, p)| {
        Cell::new(
            format_args!("n={n},p={p},route=corollary_proof"),
            rational_from(powersum_direct(n as u64 + 1, p as u32)),
            corollary_before_convolution(tables, n, p),
        )
    }));
    cells
}

/// Deterministic pseudo-random rational sequences for the round-trip suite.
pub fn roundtrip_sequences(len: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(ROUNDTRIP_SEED);
    (0..ROUNDTRIP_SEQUENCES)
        .map(|_| {
            (0..len)
                .map(|_| rational(rng.gen_range(-1000i64..=1000), rng.gen_range(1i64..=1000)))
                .collect()
        })
        .collect()
}

fn roundtrip_cells(tables: &Tables, len: usize) -> Vec<Cell> {
    tables.grow_to(len + 1);
    roundtrip_sequences(len)
        .into_par_iter()
        .enumerate()
        .flat_map_iter(|(s, a)| {
            let there_back = inverse_stirling_transform(tables, &stirling_transform(tables, &a));
            let back_there = stirling_transform(tables, &inverse_stirling_transform(tables, &a));
            let mut c = Vec::with_capacity(2 * a.len());
            for (i, x) in a.iter().enumerate() {
                c.push(Cell::new(
                    format_args!("seq={s},i={i},dir=inverse_forward"),
                    x.clone(),
                    there_back[i].clone(),
                ));
                c.push(Cell::new(
                    format_args!("seq={s},i={i},dir=forward_inverse"),
                    x.clone(),
                    back_there[i].clone(),
                ));
            }
            c
        })
        .collect()
}
