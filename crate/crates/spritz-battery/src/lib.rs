//! A statistical randomness battery for Spritz keystreams (and reference
//! generators), in the DieHarder mold: many tests, each run over many
//! data samples, each sample's p-value aggregated through a Kolmogorov–
//! Smirnov uniformity test into one p-value per test row, classified as
//! Passed / Weak / Failed against fixed thresholds, with automatic one-shot
//! reruns of Weak rows on reserved data.
//!
//! The battery is fully deterministic given a seed: stream keys are derived
//! from the seed, the sample schedule is a static function of the
//! configuration, and reruns draw from pre-reserved sample indices.

mod config;
mod generator;
mod report;
mod run;

pub use config::{BatteryConfig, ConfigError, GeneratorKind, KeySource};
pub use generator::{derive_key, StreamCorpus};
pub use report::{render_text, BatteryReport, RerunInfo, RowReport, Status};
pub use run::{run_battery, sample_location, sample_len_bytes, BatteryError};
