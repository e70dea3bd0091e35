//! Battery configuration and its validation.

use crate::run::sample_len_bytes;

/// How stream keys are obtained for the Spritz generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeySource {
    /// Fresh operating-system entropy per run (non-reproducible).
    OsEntropy,
    /// All stream keys derived deterministically from this seed.
    Seeded(Vec<u8>),
}

/// Which generator fills the streams under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Spritz keystream, one independent key per stream.
    Spritz,
    /// All-zero bytes; every test must fail on it.
    Zero,
    /// 32-bit little-endian counter words; passes monobit-style balance
    /// checks at a glance but collapses under structure-sensitive tests.
    Counter,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Spritz => "spritz",
            GeneratorKind::Zero => "zero",
            GeneratorKind::Counter => "counter",
        }
    }
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full description of a battery run. Construct, adjust, then `validate`
/// (running the battery validates implicitly).
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryConfig {
    /// Number of independent keystreams.
    pub streams: usize,
    /// Length of each stream in bits; must be a positive multiple of 8.
    pub stream_bits: u64,
    /// p-samples per test row in the first pass. Weak rows rerun once with
    /// twice this count, drawn from reserved data.
    pub psamples: usize,
    /// Rows with final p below this (or above `fail_high`) are Failed.
    pub fail_low: f64,
    /// Upper failure threshold.
    pub fail_high: f64,
    /// Rows with final p below this (or above `weak_high`) but not failing
    /// are Weak.
    pub weak_low: f64,
    /// Upper weakness threshold.
    pub weak_high: f64,
    /// Spritz key length in bytes (ignored by the zero/counter generators).
    pub key_bytes: usize,
    /// Where Spritz stream keys come from.
    pub key_source: KeySource,
    /// Generator under test.
    pub generator: GeneratorKind,
}

impl Default for BatteryConfig {
    /// Desk scale: 64 streams of 2^20 bits, 32 p-samples — finishes in
    /// seconds while leaving each sample tens of kilobytes.
    fn default() -> Self {
        BatteryConfig {
            streams: 64,
            stream_bits: 1 << 20,
            psamples: 32,
            fail_low: 1e-6,
            fail_high: 1.0 - 1e-6,
            weak_low: 0.005,
            weak_high: 0.995,
            key_bytes: 32,
            key_source: KeySource::OsEntropy,
            generator: GeneratorKind::Spritz,
        }
    }
}

/// The most demanding row is rgb_permutations n=5: it needs 5·5! = 600
/// complete groups of five 32-bit words, i.e. 12000 bytes per sample.
/// (rgb_bitdist n=5 needs only 100 bytes; everything else far less.)
pub const MIN_SAMPLE_BYTES: u64 = 600 * 5 * 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("streams must be at least 1")]
    ZeroStreams,
    #[error("psamples must be at least 1")]
    ZeroPsamples,
    #[error("stream_bits must be a positive multiple of 8, got {0}")]
    BadStreamBits(u64),
    #[error(
        "thresholds must satisfy 0 <= fail_low < weak_low < weak_high < fail_high <= 1, \
         got fail=({fail_low}, {fail_high}), weak=({weak_low}, {weak_high})"
    )]
    BadThresholds { fail_low: f64, fail_high: f64, weak_low: f64, weak_high: f64 },
    #[error("key_bytes must be in 1..=1024, got {0}")]
    BadKeyBytes(usize),
    #[error("seed must not be empty")]
    EmptySeed,
    #[error(
        "each sample would be only {sample_bytes} bytes but the battery needs {needed} \
         (grow stream_bits, or shrink psamples relative to streams)"
    )]
    SampleTooSmall { sample_bytes: u64, needed: u64 },
}

impl BatteryConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.streams == 0 {
            return Err(ConfigError::ZeroStreams);
        }
        if self.psamples == 0 {
            return Err(ConfigError::ZeroPsamples);
        }
        if self.stream_bits == 0 || self.stream_bits % 8 != 0 {
            return Err(ConfigError::BadStreamBits(self.stream_bits));
        }
        let ordered = 0.0 <= self.fail_low
            && self.fail_low < self.weak_low
            && self.weak_low < self.weak_high
            && self.weak_high < self.fail_high
            && self.fail_high <= 1.0;
        if !ordered {
            return Err(ConfigError::BadThresholds {
                fail_low: self.fail_low,
                fail_high: self.fail_high,
                weak_low: self.weak_low,
                weak_high: self.weak_high,
            });
        }
        if self.key_bytes == 0 || self.key_bytes > 1024 {
            return Err(ConfigError::BadKeyBytes(self.key_bytes));
        }
        if let KeySource::Seeded(seed) = &self.key_source {
            if seed.is_empty() {
                return Err(ConfigError::EmptySeed);
            }
        }
        let sample_bytes = sample_len_bytes(self);
        if sample_bytes < MIN_SAMPLE_BYTES {
            return Err(ConfigError::SampleTooSmall {
                sample_bytes,
                needed: MIN_SAMPLE_BYTES,
            });
        }
        Ok(())
    }

    /// Stream length in whole bytes.
    pub fn stream_bytes(&self) -> u64 {
        self.stream_bits / 8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        BatteryConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_zero_fields() {
        let mut c = BatteryConfig::default();
        c.streams = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroStreams));

        let mut c = BatteryConfig::default();
        c.psamples = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroPsamples));

        let mut c = BatteryConfig::default();
        c.stream_bits = 12;
        assert_eq!(c.validate(), Err(ConfigError::BadStreamBits(12)));
    }

    #[test]
    fn rejects_disordered_thresholds() {
        let mut c = BatteryConfig::default();
        c.weak_low = 0.9;
        c.weak_high = 0.1;
        assert!(matches!(c.validate(), Err(ConfigError::BadThresholds { .. })));

        // Weak band must sit strictly inside the fail band.
        let mut c = BatteryConfig::default();
        c.fail_low = 0.01;
        c.weak_low = 0.005;
        assert!(matches!(c.validate(), Err(ConfigError::BadThresholds { .. })));
    }

    #[test]
    fn rejects_bad_keys_and_seeds() {
        let mut c = BatteryConfig::default();
        c.key_bytes = 0;
        assert_eq!(c.validate(), Err(ConfigError::BadKeyBytes(0)));

        let mut c = BatteryConfig::default();
        c.key_source = KeySource::Seeded(vec![]);
        assert_eq!(c.validate(), Err(ConfigError::EmptySeed));
    }

    #[test]
    fn rejects_samples_below_the_permutations_floor() {
        // 4 streams of 2^13 bits with 32 psamples: ceil(96/4) = 24 chunks
        // per stream, 1024 / 24 = 42 bytes per sample — far below 12000.
        let mut c = BatteryConfig::default();
        c.streams = 4;
        c.stream_bits = 1 << 13;
        match c.validate() {
            Err(ConfigError::SampleTooSmall { sample_bytes, needed }) => {
                assert_eq!(sample_bytes, 42);
                assert_eq!(needed, MIN_SAMPLE_BYTES);
            }
            other => panic!("expected SampleTooSmall, got {other:?}"),
        }
    }
}
