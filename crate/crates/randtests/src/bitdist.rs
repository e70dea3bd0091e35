//! Bit distribution test: chi-square uniformity of disjoint n-bit tuples.

use crate::bits::BitStream;
use crate::special::igamc;
use crate::{TestError, TestResult};

/// Minimum expected count per cell for the chi-square approximation to hold.
const MIN_EXPECTED: usize = 5;

/// Bit distribution test for tuple size `n` (1 ..= 12).
///
/// Splits the stream into disjoint (non-overlapping) n-bit tuples, counts
/// each of the 2^n possible values, and compares the histogram against the
/// uniform expectation with a chi-square test on 2^n − 1 degrees of freedom.
/// Requires at least `5 · 2^n` complete tuples; trailing bits that do not
/// fill a tuple are ignored.
pub fn bitdist_test(bits: &BitStream, n: u32) -> Result<TestResult, TestError> {
    if n == 0 || n > 12 {
        return Err(TestError::BadParameter(format!(
            "bitdist tuple size must be in 1..=12, got {n}"
        )));
    }
    if bits.is_empty() {
        return Err(TestError::EmptyInput);
    }

    let cells = 1usize << n;
    let tuples = bits.len() / n as usize;
    let needed = MIN_EXPECTED * cells;
    if tuples < needed {
        return Err(TestError::InsufficientSamples {
            test: "rgb_bitdist",
            needed,
            got: tuples,
            unit: "tuples",
        });
    }

    let mut counts = vec![0u64; cells];
    let width = n as usize;
    for t in 0..tuples {
        let mut value = 0usize;
        for b in 0..width {
            value = (value << 1) | bits.bit(t * width + b) as usize;
        }
        counts[value] += 1;
    }

    let expected = tuples as f64 / cells as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dof = (cells - 1) as f64;
    let p = igamc(dof / 2.0, chi2 / 2.0)?;
    Ok(TestResult::new("rgb_bitdist", n, chi2, dof, vec![p]))
}
