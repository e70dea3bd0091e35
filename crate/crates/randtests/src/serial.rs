//! Serial test: uniformity of overlapping m-bit patterns.

use crate::bits::BitStream;
use crate::special::igamc;
use crate::{TestError, TestResult};

/// Serial test for block length `m`.
///
/// Counts every overlapping m-bit, (m−1)-bit and (m−2)-bit pattern with
/// cyclic wrap-around (the stream is extended by its own first bits), forms
/// the psi-square statistics, and reduces their first and second differences
/// to two p-values:
///
/// * `p_values[0] = igamc(2^(m-2), ∇ψ²_m / 2)`
/// * `p_values[1] = igamc(2^(m-3), ∇²ψ²_m / 2)` (only for m ≥ 2)
///
/// For m = 1 only the first p-value exists (∇ψ²_1 = ψ²_1, and the second
/// difference is undefined).
pub fn serial_test(bits: &BitStream, m: u32) -> Result<TestResult, TestError> {
    let n = bits.len();
    if n == 0 {
        return Err(TestError::EmptyInput);
    }
    if m == 0 || m > 16 {
        return Err(TestError::BadParameter(format!(
            "serial block length must be in 1..=16, got {m}"
        )));
    }
    if n < (1usize << m) {
        return Err(TestError::InsufficientSamples {
            test: "sts_serial",
            needed: 1 << m,
            got: n,
            unit: "bits",
        });
    }

    let psi_m = psi_square(bits, m);
    let psi_m1 = if m >= 2 { psi_square(bits, m - 1) } else { 0.0 };
    let psi_m2 = if m >= 3 {
        psi_square(bits, m - 2)
    } else {
        0.0 // psi²_0 is identically zero: a single empty pattern seen n times
    };

    // Both differences are non-negative identities of the count vectors;
    // f64 cancellation can leave a -1e-15-scale residue, which rounds up
    // to the true zero.
    let del1 = (psi_m - psi_m1).max(0.0);
    let mut p_values = vec![igamc(f64::powi(2.0, m as i32 - 2), del1 / 2.0)?];
    if m >= 2 {
        let del2 = (psi_m - 2.0 * psi_m1 + psi_m2).max(0.0);
        p_values.push(igamc(f64::powi(2.0, m as i32 - 3), del2 / 2.0)?);
    }

    Ok(TestResult::new("sts_serial", m, del1, f64::powi(2.0, m as i32 - 1), p_values))
}

/// ψ²_m = (2^m / n) Σ c_i² − n over all overlapping m-bit patterns, with the
/// sequence treated as cyclic.
fn psi_square(bits: &BitStream, m: u32) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len();
    let m = m as usize;
    let mask = (1usize << m) - 1;
    let mut counts = vec![0u64; 1 << m];

    // Prime a rolling window with the first m bits, then slide it across the
    // stream; indices wrap so the last m−1 windows reach around the end.
    let mut window = 0usize;
    for i in 0..m {
        window = (window << 1) | bits.bit(i % n) as usize;
    }
    for i in 0..n {
        counts[window] += 1;
        window = ((window << 1) | bits.bit((i + m) % n) as usize) & mask;
    }

    let sum_sq: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
    (1u64 << m) as f64 / n as f64 * sum_sq - n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::erfc;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn alternating_ten_bits_m2() {
        // 0101010101: cyclic 2-bit windows are 01 ×5 and 10 ×5, so
        // ψ²_2 = (4/10)(25+25) − 10 = 10 and ψ²_1 = 0.
        let bits = BitStream::with_bit_len(&[0b0101_0101, 0b0100_0000], 10);
        let r = serial_test(&bits, 2).unwrap();
        close(r.statistic, 10.0, 1e-12);
        close(r.p_values[0], (-5.0f64).exp(), 1e-12);
        close(r.p_values[1], igamc(0.5, 5.0).unwrap(), 1e-12);
        assert_eq!(r.p_values.len(), 2);
    }

    #[test]
    fn m1_single_pvalue_equals_monobit_identity() {
        // ψ²_1 = S²/n, so the serial test at m=1 must reproduce the monobit
        // p-value: igamc(1/2, S²/2n) = erfc(|S|/√(2n)).
        let data: Vec<u8> = (0..64).map(|i| (i * 37 + 11) as u8).collect();
        let bits = BitStream::new(&data);
        let r = serial_test(&bits, 1).unwrap();
        assert_eq!(r.p_values.len(), 1);

        let ones = bits.count_ones() as f64;
        let n = bits.len() as f64;
        let s = 2.0 * ones - n;
        close(r.p_values[0], erfc(s.abs() / (2.0 * n).sqrt()), 1e-12);
    }

    #[test]
    fn psi_square_counts_wrap_cyclically() {
        // 1100 cyclic 2-windows: 11, 10, 00, 01 — perfectly equidistributed,
        // ψ²_2 = (4/4)(1+1+1+1) − 4 = 0.
        let bits = BitStream::with_bit_len(&[0b1100_0000], 4);
        close(psi_square(&bits, 2), 0.0, 1e-12);
    }

    #[test]
    fn equidistributed_de_bruijn_is_perfect() {
        // 00011101 is a de Bruijn sequence of order 3: every 3-bit pattern
        // appears exactly once cyclically, so ψ²_3 = 0 and both deltas vanish
        // (ψ²_2 and ψ²_1 are also 0 by the same property), giving p = 1.
        let bits = BitStream::new(&[0b0001_1101]);
        let r = serial_test(&bits, 3).unwrap();
        close(r.statistic, 0.0, 1e-12);
        assert_eq!(r.p_values[0], 1.0);
        assert_eq!(r.p_values[1], 1.0);
    }

    #[test]
    fn constant_stream_fails() {
        let data = vec![0xffu8; 4096];
        let r = serial_test(&BitStream::new(&data), 4).unwrap();
        assert!(r.p_values[0] < 1e-6);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(serial_test(&BitStream::new(&[]), 2), Err(TestError::EmptyInput)));
        assert!(matches!(
            serial_test(&BitStream::new(&[0xaa]), 0),
            Err(TestError::BadParameter(_))
        ));
        assert!(matches!(
            serial_test(&BitStream::new(&[0xaa]), 17),
            Err(TestError::BadParameter(_))
        ));
        assert!(matches!(
            serial_test(&BitStream::with_bit_len(&[0xaa], 7), 3),
            Err(TestError::InsufficientSamples { .. })
        ));
    }
}
