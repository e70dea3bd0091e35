//! Statistical randomness tests in the NIST STS / DieHarder tradition:
//! frequency (monobit), runs, overlapping serial, disjoint bit-tuple
//! distribution, and word-permutation orderings, plus the Kolmogorov–Smirnov
//! aggregation step that turns a list of per-sample p-values into one
//! uniformity p-value.
//!
//! Conventions, fixed across the crate:
//! * bits are read MSB-first within each byte;
//! * words are 32-bit little-endian;
//! * chi-square tests refuse to run below 5 expected counts per cell;
//! * every emitted p-value lies in [0, 1] — asserted, not clamped.

mod bitdist;
mod bits;
mod frequency;
mod ks;
mod permutations;
mod serial;
mod special;

pub use bitdist::bitdist_test;
pub use bits::{BitStream, WordStream};
pub use frequency::{monobit_test, runs_test};
pub use ks::{ks_pvalue, ks_uniformity};
pub use permutations::permutations_test;
pub use serial::serial_test;
pub use special::{erfc, igamc, ln_gamma};

/// Outcome of a single test run over one stream of data.
#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    /// Canonical test identifier, e.g. `"sts_monobit"`.
    pub name: &'static str,
    /// Tuple/window parameter; 0 for tests without one.
    pub tuple: u32,
    /// The test statistic the p-value(s) were derived from.
    pub statistic: f64,
    /// Degrees of freedom for chi-square statistics; 0 for direct-erfc tests.
    pub dof: f64,
    /// One p-value for most tests; the serial test emits two for m ≥ 2.
    pub p_values: Vec<f64>,
    /// Advisory notes (e.g. input shorter than the test's recommended minimum).
    pub warning: Option<String>,
}

impl TestResult {
    pub(crate) fn new(
        name: &'static str,
        tuple: u32,
        statistic: f64,
        dof: f64,
        p_values: Vec<f64>,
    ) -> TestResult {
        for &p in &p_values {
            assert!(
                (0.0..=1.0).contains(&p),
                "{name} produced out-of-range p-value {p}"
            );
        }
        TestResult { name, tuple, statistic, dof, p_values, warning: None }
    }

    pub(crate) fn with_warning(mut self, warning: String) -> TestResult {
        self.warning = Some(warning);
        self
    }

    /// First (primary) p-value.
    pub fn p_value(&self) -> f64 {
        self.p_values[0]
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TestError {
    #[error("input stream is empty")]
    EmptyInput,
    /// The test's applicability precondition failed; this is a property of
    /// the data, not a usage error (e.g. runs on a grossly biased stream).
    #[error("{test} not applicable: {reason}")]
    NotApplicable { test: &'static str, reason: String },
    #[error("{test} needs at least {needed} {unit}, got {got}")]
    InsufficientSamples {
        test: &'static str,
        needed: usize,
        got: usize,
        unit: &'static str,
    },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}
