//! Permutations test: chi-square uniformity of orderings among groups of
//! 32-bit words.

use crate::bits::WordStream;
use crate::special::igamc;
use crate::{TestError, TestResult};

/// Minimum expected count per ordering for the chi-square approximation.
const MIN_EXPECTED: usize = 5;

const FACTORIALS: [usize; 6] = [1, 1, 2, 6, 24, 120];

/// Permutations test for group size `n` (2 ..= 5).
///
/// Splits the word stream into disjoint groups of `n` consecutive 32-bit
/// words, reduces each group to its ordering (which of the n! relative
/// orders the values fall in, ties broken by position), and chi-square
/// tests the ordering histogram against uniformity on n! − 1 degrees of
/// freedom. Requires at least `5 · n!` complete groups.
pub fn permutations_test(words: &WordStream, n: u32) -> Result<TestResult, TestError> {
    if !(2..=5).contains(&n) {
        return Err(TestError::BadParameter(format!(
            "permutations group size must be in 2..=5, got {n}"
        )));
    }
    if words.is_empty() {
        return Err(TestError::EmptyInput);
    }

    let n = n as usize;
    let cells = FACTORIALS[n];
    let groups = words.len() / n;
    let needed = MIN_EXPECTED * cells;
    if groups < needed {
        return Err(TestError::InsufficientSamples {
            test: "rgb_permutations",
            needed,
            got: groups,
            unit: "groups",
        });
    }

    let mut counts = vec![0u64; cells];
    let mut group = vec![0u32; n];
    for g in 0..groups {
        for (i, w) in group.iter_mut().enumerate() {
            *w = words.word(g * n + i);
        }
        counts[ordering_rank(&group)] += 1;
    }

    let expected = groups as f64 / cells as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dof = (cells - 1) as f64;
    let p = igamc(dof / 2.0, chi2 / 2.0)?;
    Ok(TestResult::new("rgb_permutations", n as u32, chi2, dof, vec![p]))
}

/// Maps a group of values to the index (0 .. n!−1) of its ordering.
///
/// The ordering is the argsort by (value, position) — position breaks ties,
/// so equal words still yield a definite permutation — encoded as a Lehmer
/// rank in the factorial number system.
fn ordering_rank(values: &[u32]) -> usize {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (values[i], i));

    // Lehmer code: for each position, how many later entries are smaller.
    let mut rank = 0usize;
    for i in 0..n {
        let smaller_after = order[i + 1..].iter().filter(|&&j| j < order[i]).count();
        rank += smaller_after * FACTORIALS[n - 1 - i];
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::erfc;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn bytes_from_words(words: &[u32]) -> Vec<u8> {
        words.iter().flat_map(|w| w.to_le_bytes()).collect()
    }

    #[test]
    fn ordering_rank_is_a_bijection() {
        // All 24 orderings of 4 distinct values must hit all 24 ranks.
        let mut seen = [false; 24];
        let vals = [10u32, 20, 30, 40];
        let mut perm = [0usize, 1, 2, 3];
        // Heap's algorithm, iterative.
        let mut c = [0usize; 4];
        let grab = |p: &[usize; 4]| [vals[p[0]], vals[p[1]], vals[p[2]], vals[p[3]]];
        seen[ordering_rank(&grab(&perm))] = true;
        let mut i = 0;
        while i < 4 {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                seen[ordering_rank(&grab(&perm))] = true;
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        assert!(seen.iter().all(|&s| s), "some rank never produced: {seen:?}");
    }

    #[test]
    fn ties_break_by_position() {
        // Equal values sort by index, so [5, 5] is the identity ordering —
        // same as [1, 2] — and distinct from [2, 1].
        assert_eq!(ordering_rank(&[5, 5]), ordering_rank(&[1, 2]));
        assert_ne!(ordering_rank(&[5, 5]), ordering_rank(&[2, 1]));
        assert_eq!(ordering_rank(&[7, 7, 7]), ordering_rank(&[1, 2, 3]));
    }

    #[test]
    fn worked_pair_example() {
        // Words 1,2,3,4 as pairs: (1,2) ascending, (3,4) ascending — both
        // orderings of the 2 cells land in one cell. With 2 groups the
        // expectation is 1 per cell, χ² = (2−1)² + (0−1)² = 2.0, dof 1,
        // p = igamc(1/2, 1) = erfc(1).
        let mut counts = [0u64; 2];
        for pair in [[1u32, 2], [3, 4]] {
            counts[ordering_rank(&pair)] += 1;
        }
        let expected = 1.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        close(chi2, 2.0, 1e-12);
        close(igamc(0.5, 1.0).unwrap(), erfc(1.0), 1e-12);
    }

    #[test]
    fn equidistributed_orderings_give_p_one() {
        // Five copies of each of the 6 orderings of 3 distinct values:
        // 30 groups, perfectly uniform, χ² = 0, p = 1.
        let orderings: [[u32; 3]; 6] =
            [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        let mut words = Vec::new();
        for _ in 0..5 {
            for o in &orderings {
                words.extend_from_slice(o);
            }
        }
        let bytes = bytes_from_words(&words);
        let r = permutations_test(&WordStream::new(&bytes), 3).unwrap();
        close(r.statistic, 0.0, 1e-12);
        assert_eq!(r.p_value(), 1.0);
        assert_eq!(r.dof, 5.0);
    }

    #[test]
    fn monotone_stream_fails() {
        // Strictly increasing words: every group is the identity ordering.
        let words: Vec<u32> = (0..4096).collect();
        let bytes = bytes_from_words(&words);
        let r = permutations_test(&WordStream::new(&bytes), 3).unwrap();
        assert!(r.p_value() < 1e-6);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(
            permutations_test(&WordStream::new(&[]), 2),
            Err(TestError::EmptyInput)
        ));
        let bytes = bytes_from_words(&[1, 2, 3, 4]);
        assert!(matches!(
            permutations_test(&WordStream::new(&bytes), 1),
            Err(TestError::BadParameter(_))
        ));
        assert!(matches!(
            permutations_test(&WordStream::new(&bytes), 6),
            Err(TestError::BadParameter(_))
        ));
        // 4 words = 2 pairs, below the 5·2! = 10 group floor.
        assert!(matches!(
            permutations_test(&WordStream::new(&bytes), 2),
            Err(TestError::InsufficientSamples { needed: 10, got: 2, .. })
        ));
    }
}
