//! Report data model (JSON-stable) and the human-readable rendering.

use serde::{Deserialize, Serialize};

use crate::config::{BatteryConfig, KeySource};
use crate::run::sample_len_bytes;

/// Classification of a test row (or of the whole battery, which is always
/// binary, never Weak).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Weak,
    Failed,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Passed => "passed",
            Status::Weak => "weak",
            Status::Failed => "failed",
        })
    }
}

/// First-pass outcome retained when a Weak row was rerun.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RerunInfo {
    pub original_p: f64,
    pub original_status: Status,
    pub original_psamples: usize,
}

/// Final outcome of one test row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    /// Test identifier, e.g. `"sts_serial"`.
    pub name: String,
    /// Tuple/window parameter (serial m, bitdist/permutations n; 1 otherwise).
    pub tuple: u32,
    /// 1-based index of the p-value within the test (serial yields two).
    pub p_index: u32,
    /// Number of p-samples behind the final p-value.
    pub psamples: usize,
    /// KS-aggregated p-value over the per-sample p-values.
    pub p: f64,
    pub status: Status,
    /// Present when the row was Weak on the first pass and rerun.
    pub rerun: Option<RerunInfo>,
    pub elapsed_seconds: f64,
}

impl RowReport {
    /// Name with the p-value index folded in when a test emits several.
    pub fn display_name(&self) -> String {
        if self.p_index <= 1 {
            self.name.clone()
        } else {
            format!("{}:p{}", self.name, self.p_index)
        }
    }
}

/// Where one p-sample's data comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleLocation {
    pub stream: usize,
    pub offset: u64,
}

/// Configuration echo embedded in the report — everything needed to
/// reproduce a seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub generator: String,
    pub streams: usize,
    pub stream_bits: u64,
    pub psamples: usize,
    pub sample_bytes: u64,
    pub key_bytes: usize,
    /// `"seeded"` or `"os-entropy"`.
    pub key_source: String,
    /// The seed, hex-encoded, when the run was seeded.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed_hex: Option<String>,
    pub fail_low: f64,
    pub fail_high: f64,
    pub weak_low: f64,
    pub weak_high: f64,
}

impl ConfigEcho {
    pub fn from_config(config: &BatteryConfig) -> ConfigEcho {
        let (key_source, seed_hex) = match &config.key_source {
            KeySource::OsEntropy => ("os-entropy".to_string(), None),
            KeySource::Seeded(seed) => {
                let mut hex = String::with_capacity(seed.len() * 2);
                for b in seed {
                    hex.push_str(&format!("{b:02x}"));
                }
                ("seeded".to_string(), Some(hex))
            }
        };
        ConfigEcho {
            generator: config.generator.as_str().to_string(),
            streams: config.streams,
            stream_bits: config.stream_bits,
            psamples: config.psamples,
            sample_bytes: sample_len_bytes(config),
            key_bytes: config.key_bytes,
            key_source,
            seed_hex,
            fail_low: config.fail_low,
            fail_high: config.fail_high,
            weak_low: config.weak_low,
            weak_high: config.weak_high,
        }
    }
}

/// Complete battery outcome. Serializes to the stable JSON format consumed
/// by the report renderer (`format_version` 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryReport {
    pub format_version: u32,
    pub config: ConfigEcho,
    /// Sample locations by index; the first `psamples` entries form the
    /// first pass, the rest are the reserve reruns draw from.
    pub schedule: Vec<SampleLocation>,
    pub rows: Vec<RowReport>,
    pub elapsed_seconds: f64,
    /// Binary verdict: Failed if any row's final status is Failed.
    pub overall: Status,
}

/// Renders the human-readable table for a report.
pub fn render_text(report: &BatteryReport) -> String {
    use std::fmt::Write;
    let c = &report.config;
    let mut out = String::new();

    writeln!(
        out,
        "randomness battery: generator {}, {} streams x {} bits, {} p-samples",
        c.generator, c.streams, c.stream_bits, c.psamples
    )
    .unwrap();
    match (&c.key_source[..], &c.seed_hex) {
        ("seeded", Some(hex)) => writeln!(out, "seed: {hex}").unwrap(),
        _ => writeln!(out, "keys: fresh OS entropy (not reproducible)").unwrap(),
    }
    writeln!(
        out,
        "sample: {} bytes; weak outside [{}, {}], failed outside [{:e}, {}]",
        c.sample_bytes, c.weak_low, c.weak_high, c.fail_low, c.fail_high
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(
        out,
        "  {:<22} {:>5} {:>9} {:>12}   {}",
        "test", "tuple", "psamples", "p-value", "result"
    )
    .unwrap();
    writeln!(out, "  {}", "-".repeat(66)).unwrap();

    let mut passed = 0;
    let mut weak = 0;
    let mut failed = 0;
    for row in &report.rows {
        match row.status {
            Status::Passed => passed += 1,
            Status::Weak => weak += 1,
            Status::Failed => failed += 1,
        }
        let mut line = format!(
            "  {:<22} {:>5} {:>9} {:>12.8} {:>8}",
            row.display_name(),
            row.tuple,
            row.psamples,
            row.p,
            row.status.to_string()
        );
        if let Some(rerun) = &row.rerun {
            line.push_str(&format!(
                "   (rerun; first pass p={:.8} {} at {} psamples)",
                rerun.original_p, rerun.original_status, rerun.original_psamples
            ));
        }
        writeln!(out, "{line}").unwrap();
    }

    writeln!(out).unwrap();
    writeln!(
        out,
        "overall: {} ({} rows: {passed} passed, {weak} weak, {failed} failed) in {:.2}s",
        report.overall.to_string().to_uppercase(),
        report.rows.len(),
        report.elapsed_seconds
    )
    .unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> BatteryReport {
        BatteryReport {
            format_version: 1,
            config: ConfigEcho::from_config(&BatteryConfig {
                key_source: KeySource::Seeded(vec![0xab, 0xcd]),
                ..BatteryConfig::default()
            }),
            schedule: vec![
                SampleLocation { stream: 0, offset: 0 },
                SampleLocation { stream: 1, offset: 0 },
            ],
            rows: vec![
                RowReport {
                    name: "sts_monobit".into(),
                    tuple: 1,
                    p_index: 1,
                    psamples: 32,
                    p: 0.517,
                    status: Status::Passed,
                    rerun: None,
                    elapsed_seconds: 0.5,
                },
                RowReport {
                    name: "sts_serial".into(),
                    tuple: 2,
                    p_index: 2,
                    psamples: 64,
                    p: 0.441,
                    status: Status::Passed,
                    rerun: Some(RerunInfo {
                        original_p: 0.9973,
                        original_status: Status::Weak,
                        original_psamples: 32,
                    }),
                    elapsed_seconds: 0.7,
                },
            ],
            elapsed_seconds: 1.2,
            overall: Status::Passed,
        }
    }

    #[test]
    fn json_round_trip_preserves_everything() {
        let report = sample_report();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: BatteryReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        assert!(json.contains("\"format_version\": 1"));
        assert!(json.contains("\"seed_hex\": \"abcd\""));
    }

    #[test]
    fn text_rendering_mentions_the_essentials() {
        let text = render_text(&sample_report());
        assert!(text.contains("sts_monobit"));
        assert!(text.contains("sts_serial:p2"));
        assert!(text.contains("rerun; first pass"));
        assert!(text.contains("overall: PASSED"));
        assert!(text.contains("seed: abcd"));
    }

    #[test]
    fn os_entropy_has_no_seed_field() {
        let echo = ConfigEcho::from_config(&BatteryConfig::default());
        assert_eq!(echo.key_source, "os-entropy");
        assert!(echo.seed_hex.is_none());
        let json = serde_json::to_string(&echo).unwrap();
        assert!(!json.contains("seed_hex"));
    }

    #[test]
    fn display_name_folds_p_index() {
        let mut row = sample_report().rows[0].clone();
        assert_eq!(row.display_name(), "sts_monobit");
        row.p_index = 2;
        assert_eq!(row.display_name(), "sts_monobit:p2");
    }
}
