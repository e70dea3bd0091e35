//! Kolmogorov–Smirnov uniformity test, used to aggregate per-sample
//! p-values into a single p-value per test row.

use crate::TestError;

/// Two-sided KS test of `samples` against the uniform distribution on [0, 1].
///
/// Computes the statistic `D = sup |F_n(x) − x|` and returns `P(D_n ≥ D)`.
/// Samples must all lie in [0, 1]. For n ≤ 100 the p-value is exact (the
/// Marsaglia–Tsang–Wang matrix evaluation of Kolmogorov's distribution);
/// larger n uses the Stephens-corrected asymptotic series, accurate to a few
/// units in the third decimal — far tighter than the decision thresholds it
/// feeds.
pub fn ks_uniformity(samples: &[f64]) -> Result<f64, TestError> {
    if samples.is_empty() {
        return Err(TestError::EmptyInput);
    }
    for &x in samples {
        if !(0.0..=1.0).contains(&x) {
            return Err(TestError::BadParameter(format!(
                "KS uniformity sample {x} outside [0, 1]"
            )));
        }
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let n = xs.len();
    let n_f = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        d = d.max(x - i as f64 / n_f).max((i + 1) as f64 / n_f - x);
    }
    Ok(ks_pvalue(n, d))
}

/// p-value `P(D_n ≥ d)` for the two-sided KS statistic at sample size `n`.
///
/// # Panics
/// If `n == 0` or `d` is not in [0, 1] (both impossible for a statistic
/// computed from real samples).
pub fn ks_pvalue(n: usize, d: f64) -> f64 {
    assert!(n > 0, "KS p-value needs at least one sample");
    assert!((0.0..=1.0).contains(&d), "KS statistic {d} outside [0, 1]");
    if d == 0.0 {
        return 1.0;
    }
    if d == 1.0 {
        return 0.0;
    }
    if n <= 100 {
        (1.0 - kolmogorov_cdf_exact(n, d)).clamp(0.0, 1.0)
    } else {
        let sqrt_n = (n as f64).sqrt();
        qks((sqrt_n + 0.12 + 0.11 / sqrt_n) * d)
    }
}

/// Exact `P(D_n < d)` by the Marsaglia–Tsang–Wang matrix method: build the
/// (2k−1)×(2k−1) transition matrix H with h-power edge corrections, raise it
/// to the n-th power with decimal-exponent rescaling, and take the center
/// entry times n!/nⁿ. The usual right-tail shortcut is deliberately omitted
/// so the value is exact everywhere.
fn kolmogorov_cdf_exact(n: usize, d: f64) -> f64 {
    let n_f = n as f64;
    let k = (n_f * d) as usize + 1;
    let m = 2 * k - 1;
    let h = k as f64 - n_f * d;

    let mut hm = vec![0.0f64; m * m];
    for i in 0..m {
        for j in 0..m {
            if i + 1 >= j {
                hm[i * m + j] = 1.0;
            }
        }
    }
    for i in 0..m {
        hm[i * m] -= h.powi(i as i32 + 1);
        hm[(m - 1) * m + i] -= h.powi((m - i) as i32);
    }
    if 2.0 * h - 1.0 > 0.0 {
        hm[(m - 1) * m] += (2.0 * h - 1.0).powi(m as i32);
    }
    for i in 0..m {
        for j in 0..=i.min(m - 1) {
            if i + 1 >= j {
                for g in 1..=(i + 1 - j) {
                    hm[i * m + j] /= g as f64;
                }
            }
        }
    }

    let (q, mut exp10) = mat_pow(&hm, 0, n, m);
    let mut s = q[(k - 1) * m + (k - 1)];
    for i in 1..=n {
        s = s * i as f64 / n_f;
        if s < 1e-140 {
            s *= 1e140;
            exp10 -= 140;
        }
    }
    s * 10f64.powi(exp10)
}

fn mat_mul(a: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let mut c = vec![0.0f64; m * m];
    for i in 0..m {
        for x in 0..m {
            let a_ix = a[i * m + x];
            if a_ix == 0.0 {
                continue;
            }
            let row = &b[x * m..(x + 1) * m];
            let out = &mut c[i * m..(i + 1) * m];
            for (o, &r) in out.iter_mut().zip(row) {
                *o += a_ix * r;
            }
        }
    }
    c
}

/// `a^n` with the value carried as `matrix · 10^exp`, rescaling whenever the
/// center entry outgrows 1e140 so repeated squaring never overflows.
fn mat_pow(a: &[f64], exp_a: i32, n: usize, m: usize) -> (Vec<f64>, i32) {
    if n == 1 {
        return (a.to_vec(), exp_a);
    }
    let (v, exp_v) = mat_pow(a, exp_a, n / 2, m);
    let squared = mat_mul(&v, &v, m);
    let mut exp_out = 2 * exp_v;
    let mut out = if n % 2 == 0 {
        squared
    } else {
        exp_out += exp_a;
        mat_mul(a, &squared, m)
    };
    if out[(m / 2) * m + (m / 2)] > 1e140 {
        for x in out.iter_mut() {
            *x *= 1e-140;
        }
        exp_out += 140;
    }
    (out, exp_out)
}

/// Asymptotic Kolmogorov survival function
/// `Q(λ) = 2 Σ_{j≥1} (−1)^{j−1} e^{−2 j² λ²}`, with Q = 1 pinned below
/// λ = 0.18 where the alternating series stops converging usefully.
fn qks(lambda: f64) -> f64 {
    if lambda <= 0.18 {
        return 1.0;
    }
    let mut sum = 0.0f64;
    let mut sign = 1.0f64;
    for j in 1..=200 {
        let j_f = j as f64;
        let term = (-2.0 * j_f * j_f * lambda * lambda).exp();
        sum += sign * term;
        if term <= 1e-18 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
