//! Frequency-domain tests: monobit (global balance of ones and zeros) and
//! runs (oscillation rate between them).

use crate::bits::BitStream;
use crate::special::erfc;
use crate::{TestError, TestResult};

/// Frequency (monobit) test.
///
/// Computes S = #ones − #zeros over the stream and the p-value
/// `erfc(|S| / sqrt(2n))`. A balanced random stream gives p near uniform;
/// a biased one drives p toward zero.
pub fn monobit_test(bits: &BitStream) -> Result<TestResult, TestError> {
    let n = bits.len();
    if n == 0 {
        return Err(TestError::EmptyInput);
    }
    let ones = bits.count_ones() as i64;
    let zeros = n as i64 - ones;
    let s = ones - zeros;
    let statistic = s.abs() as f64 / (n as f64).sqrt();
    let p = erfc(statistic / std::f64::consts::SQRT_2);
    let result = TestResult::new("sts_monobit", 1, statistic, 0.0, vec![p]);
    if n < 100 {
        return Ok(result.with_warning(format!(
            "only {n} bits; the reference distribution assumes at least 100"
        )));
    }
    Ok(result)
}

/// Runs test.
///
/// Counts V = the number of maximal runs of identical bits and compares it
/// against the expectation `2nπ(1−π)` for the observed ones-fraction π.
/// Not applicable when the stream already fails the frequency precondition
/// `|π − 1/2| < 2/√n`, since then the runs distribution is meaningless.
pub fn runs_test(bits: &BitStream) -> Result<TestResult, TestError> {
    let n = bits.len();
    if n == 0 {
        return Err(TestError::EmptyInput);
    }
    let pi = bits.count_ones() as f64 / n as f64;
    let tau = 2.0 / (n as f64).sqrt();
    if (pi - 0.5).abs() >= tau {
        return Err(TestError::NotApplicable {
            test: "sts_runs",
            reason: format!(
                "ones fraction {pi:.6} violates |pi - 1/2| < 2/sqrt(n) = {tau:.6}"
            ),
        });
    }

    // V = 1 + number of positions where consecutive bits differ.
    let mut v: u64 = 1;
    let mut prev = bits.bit(0);
    for b in bits.iter().skip(1) {
        if b != prev {
            v += 1;
        }
        prev = b;
    }

    let n_f = n as f64;
    let expected = 2.0 * n_f * pi * (1.0 - pi);
    let p = erfc((v as f64 - expected).abs() / (2.0 * (2.0 * n_f).sqrt() * pi * (1.0 - pi)));
    let result = TestResult::new("sts_runs", 1, v as f64, 0.0, vec![p]);
    if n < 100 {
        return Ok(result.with_warning(format!(
            "only {n} bits; the reference distribution assumes at least 100"
        )));
    }
    Ok(result)
}
