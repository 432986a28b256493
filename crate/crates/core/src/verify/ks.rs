//! One- and two-sample Kolmogorov-Smirnov statistics with the asymptotic 1% critical value.

use serde::Serialize;

use crate::error::{Error, Result};

/// Asymptotic 1% critical value coefficient of the Kolmogorov distribution.
pub const KS_COEF_1PCT: f64 = 1.628;

/// Smallest sample accepted by [`ks_one_sample`].
pub const KS_MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n: usize,
    pub critical_1pct: f64,
    pub pass: bool,
}

impl KsResult {
    fn new(statistic: f64, n: usize, critical: f64) -> Self {
        KsResult { statistic, n, critical_1pct: critical, pass: statistic < critical }
    }
}

fn ensure_sorted(xs: &[f64]) -> Result<()> {
    if xs.windows(2).any(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt())) {
        return Err(Error::Unsorted);
    }
    Ok(())
}

/// Sorts a sample in place by total order and returns it.
pub fn sorted(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_unstable_by(f64::total_cmp);
    xs
}

/// Sup distance between the empirical CDF of sorted `samples` and `cdf`.
///
/// Both one-sided limits are compared at every distinct sample value, so laws with atoms
/// (and samples with ties) are handled: `|i/n - F(x)|` and `|j/n - F(x-)|` where `j` counts
/// samples strictly below `x` and `i` those at or below it.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsResult> {
    let n = samples.len();
    if n < KS_MIN_SAMPLES {
        return Err(Error::TooFewSamples { n, min: KS_MIN_SAMPLES });
    }
    ensure_sorted(samples)?;
    let nf = n as f64;
    let mut d = 0.0_f64;
    let mut j = 0;
    while j < n {
        let x = samples[j];
        let mut i = j;
        while i < n && samples[i] == x {
            i += 1;
        }
        let at = cdf(x);
        let left = cdf(x.next_down());
        d = d.max((i as f64 / nf - at).abs()).max((j as f64 / nf - left).abs());
        j = i;
    }
    Ok(KsResult::new(d, n, KS_COEF_1PCT / nf.sqrt()))
}

/// Two-sample statistic; the critical value is `1.628 * sqrt((n + m) / (n m))`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    let (n, m) = (a.len(), b.len());
    let small = n.min(m);
    if small < KS_MIN_SAMPLES {
        return Err(Error::TooFewSamples { n: small, min: KS_MIN_SAMPLES });
    }
    ensure_sorted(a)?;
    ensure_sorted(b)?;
    let (nf, mf) = (n as f64, m as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0_f64;
    while i < n && j < m {
        let x = a[i].min(b[j]);
        while i < n && a[i] == x {
            i += 1;
        }
        while j < m && b[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / nf - j as f64 / mf).abs());
    }
    let crit = KS_COEF_1PCT * ((nf + mf) / (nf * mf)).sqrt();
    Ok(KsResult::new(d, n.min(m), crit))
}
