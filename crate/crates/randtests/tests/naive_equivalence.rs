//! Property tests pitting the optimized counting paths (rolling windows,
//! bit-packed tuple extraction) against deliberately naive reimplementations
//! on small random inputs.

use proptest::prelude::*;
use randtests::{bitdist_test, igamc, serial_test, BitStream};

fn bits_of(bytes: &[u8], bit_len: usize) -> Vec<u8> {
    (0..bit_len).map(|i| (bytes[i >> 3] >> (7 - (i & 7))) & 1).collect()
}

/// ψ²_m by literal cyclic window extraction — build every window as a
/// Vec<u8>, count in a table indexed by its numeric value.
fn naive_psi_square(bits: &[u8], m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len();
    let mut counts = vec![0u64; 1 << m];
    for start in 0..n {
        let mut value = 0usize;
        for off in 0..m {
            value = (value << 1) | bits[(start + off) % n] as usize;
        }
        counts[value] += 1;
    }
    let sum_sq: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
    (1u64 << m) as f64 / n as f64 * sum_sq - n as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn serial_matches_naive_counting(
        bytes in prop::collection::vec(any::<u8>(), 1..=8),
        m in 1u32..=3,
        trim in 0usize..8,
    ) {
        let bit_len = bytes.len() * 8 - trim;
        prop_assume!(bit_len >= 1 << m);
        let stream = BitStream::with_bit_len(&bytes, bit_len);
        let got = serial_test(&stream, m).unwrap();

        let bits = bits_of(&bytes, bit_len);
        let psi_m = naive_psi_square(&bits, m as usize);
        let psi_m1 = if m >= 2 { naive_psi_square(&bits, m as usize - 1) } else { 0.0 };
        let psi_m2 = if m >= 3 { naive_psi_square(&bits, m as usize - 2) } else { 0.0 };

        let del1 = (psi_m - psi_m1).max(0.0);
        prop_assert!((got.statistic - del1).abs() < 1e-9,
            "del-psi mismatch: {} vs naive {del1}", got.statistic);

        let p1 = igamc(f64::powi(2.0, m as i32 - 2), del1 / 2.0).unwrap();
        prop_assert!((got.p_values[0] - p1).abs() < 1e-12);
        if m >= 2 {
            let del2 = (psi_m - 2.0 * psi_m1 + psi_m2).max(0.0);
            let p2 = igamc(f64::powi(2.0, m as i32 - 3), del2 / 2.0).unwrap();
            prop_assert!((got.p_values[1] - p2).abs() < 1e-12);
        } else {
            prop_assert_eq!(got.p_values.len(), 1);
        }
    }

    #[test]
    fn bitdist_matches_naive_counting(
        bytes in prop::collection::vec(any::<u8>(), 16..=64),
        n in 1u32..=3,
    ) {
        let stream = BitStream::new(&bytes);
        let got = bitdist_test(&stream, n).unwrap();

        let bits = bits_of(&bytes, bytes.len() * 8);
        let n_us = n as usize;
        let tuples = bits.len() / n_us;
        let mut counts = vec![0u64; 1 << n_us];
        for chunk in bits.chunks_exact(n_us).take(tuples) {
            let mut value = 0usize;
            for &b in chunk {
                value = (value << 1) | b as usize;
            }
            counts[value] += 1;
        }
        let expected = tuples as f64 / (1 << n_us) as f64;
        let chi2: f64 = counts.iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();

        prop_assert!((got.statistic - chi2).abs() < 1e-9,
            "chi2 mismatch: {} vs naive {chi2}", got.statistic);
        let p = igamc(((1 << n_us) - 1) as f64 / 2.0, chi2 / 2.0).unwrap();
        prop_assert!((got.p_value() - p).abs() < 1e-12);
    }
}
