//! Exact sums of powers, generalized harmonic numbers, Bernoulli and
//! poly-Bernoulli numbers, and Stirling numbers, each computed along several
//! independent routes that are checked against each other in exact
//! arithmetic.
//!
//! Most operations take a [`Tables`] holding the memoized Stirling triangles
//! and Bernoulli numbers. Tables grow on demand behind `&self` and can be
//! shared between threads.

pub mod bench;
pub mod bernoulli;
pub mod cli;
pub mod error;
pub mod exact;
pub mod harmonic;
pub mod powersum;
pub mod report;
pub mod series;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Integer, Rational};
pub use powersum::FormulaId;
pub use report::{BenchRecord, VerificationReport};
pub use series::PowerSeries;

use bernoulli::BernoulliCache;
use stirling::StirlingTable;

/// Memoized number triangles shared by the formulas.
#[derive(Debug)]
pub struct Tables {
    pub first: StirlingTable,
    pub second: StirlingTable,
    pub bernoulli: BernoulliCache,
}

impl Default for Tables {
    fn default() -> Self {
        Self::new()
    }
}

impl Tables {
    pub fn new() -> Self {
        Self {
            first: StirlingTable::first_unsigned(),
            second: StirlingTable::second(),
            bernoulli: BernoulliCache::new(),
        }
    }

    /// Grows every table to cover index `n`, so later reads never take the
    /// write lock.
    pub fn grow_to(&self, n: usize) {
        self.first.grow_to(n);
        self.second.grow_to(n);
        self.bernoulli.grow_to(n);
    }
}
