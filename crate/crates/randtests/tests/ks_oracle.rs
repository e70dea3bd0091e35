//! Monte Carlo check of the Kolmogorov–Smirnov p-values: simulate the
//! distribution of D_n under the uniform null with a seeded RNG and compare
//! the empirical exceedance rate to the analytic p-value. Covers both the
//! exact branch (n ≤ 100) and the asymptotic branch (n > 100).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use randtests::ks_pvalue;

/// Empirical P(D_n ≥ d) over `reps` simulated samples.
fn simulate_exceedance(n: usize, d: f64, reps: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut xs = vec![0.0f64; n];
    let mut hits = 0usize;
    let n_f = n as f64;
    for _ in 0..reps {
        for x in xs.iter_mut() {
            *x = rng.gen::<f64>();
        }
        xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let mut dn = 0.0f64;
        for (i, &x) in xs.iter().enumerate() {
            dn = dn.max(x - i as f64 / n_f).max((i + 1) as f64 / n_f - x);
        }
        if dn >= d {
            hits += 1;
        }
    }
    hits as f64 / reps as f64
}

fn check(n: usize, d: f64, reps: usize, seed: u64) {
    let analytic = ks_pvalue(n, d);
    let empirical = simulate_exceedance(n, d, reps, seed);
    // Allow 5 binomial standard errors plus a small floor for the
    // asymptotic branch's own bias.
    let sigma = (analytic * (1.0 - analytic) / reps as f64).sqrt();
    let tol = 5.0 * sigma + 1.5e-3;
    assert!(
        (analytic - empirical).abs() <= tol,
        "n={n}, d={d}: analytic {analytic} vs empirical {empirical} \
         (diff {}, tol {tol})",
        (analytic - empirical).abs()
    );
}

#[test]
fn exact_branch_small_n() {
    check(10, 0.2, 1_000_000, 0x4b53_0001);
    check(32, 0.15, 1_000_000, 0x4b53_0002);
}

#[test]
fn exact_branch_at_the_cap() {
    check(100, 0.1, 400_000, 0x4b53_0003);
    check(100, 0.05, 400_000, 0x4b53_0004);
}

#[test]
fn asymptotic_branch_large_n() {
    check(150, 0.1, 400_000, 0x4b53_0005);
    check(500, 0.05, 150_000, 0x4b53_0006);
}
