//! Positive stable oracle for the `M^-theta xi^theta` identity.

use crate::error::{Error, Result};
use crate::params::{Dimension, PowerParam};
use crate::rng::RngStream;
use crate::vp::VpSampler;

use super::ks::{ks_two_sample, sorted, KsResult};

/// Smallest sample size accepted by [`check_stable_identity`].
pub const STABLE_MIN_SAMPLES: usize = 10_000;

/// Positive stable variable with Laplace transform `exp(-s^alpha)`, `alpha` in `(0, 1]`,
/// by Kanter's representation.
pub fn positive_stable(alpha: f64, rng: &mut RngStream) -> f64 {
    debug_assert!(alpha > 0.0 && alpha <= 1.0);
    if alpha == 1.0 {
        return 1.0;
    }
    let u = std::f64::consts::PI * rng.uniform();
    let e = rng.exp1();
    let a = (alpha * u).sin() / u.sin().powf(1.0 / alpha);
    let b = ((1.0 - alpha) * u).sin() / e;
    a * b.powf((1.0 - alpha) / alpha)
}

/// First coordinates of `M^-theta xi^theta` and of `E V_p (xi / ||xi||_1)^theta`, each of size `n`,
/// returned sorted.
pub fn stable_identity_samples(d: Dimension, p: PowerParam, n: usize, rng: &mut RngStream) -> (Vec<f64>, Vec<f64>) {
    let theta = p.theta();
    let dd = d.get();
    let vp = VpSampler::new(d, p);
    let left: Vec<f64> = (0..n)
        .map(|_| {
            let m = positive_stable(theta, rng);
            (rng.exp1() / m).powf(theta)
        })
        .collect();
    let right: Vec<f64> = (0..n)
        .map(|_| {
            let erlang: f64 = (0..dd).map(|_| rng.exp1()).sum();
            let v = vp.sample(rng).value;
            let xi: Vec<f64> = (0..dd).map(|_| rng.exp1()).collect();
            let total: f64 = xi.iter().sum();
            erlang * v * p.root(xi[0] / total)
        })
        .collect();
    (sorted(left), sorted(right))
}

pub fn check_stable_identity(d: Dimension, p: PowerParam, n: usize, rng: &mut RngStream) -> Result<KsResult> {
    if n < STABLE_MIN_SAMPLES {
        return Err(Error::TooFewSamples { n, min: STABLE_MIN_SAMPLES });
    }
    let (left, right) = stable_identity_samples(d, p, n, rng);
    ks_two_sample(&left, &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::ks::ks_one_sample;

    #[test]
    fn laplace_transform_matches() {
        let mut rng = RngStream::new(11, 0);
        let alpha = 0.6;
        let n = 200_000;
        let draws: Vec<f64> = (0..n).map(|_| positive_stable(alpha, &mut rng)).collect();
        for s in [0.5_f64, 1.0, 2.0] {
            let est = draws.iter().map(|m| (-s * m).exp()).sum::<f64>() / n as f64;
            let exact = (-s.powf(alpha)).exp();
            assert!((est - exact).abs() < 4e-3, "s={s}: {est} vs {exact}");
        }
    }

    #[test]
    fn alpha_one_is_degenerate() {
        let mut rng = RngStream::new(12, 0);
        assert!((0..100).all(|_| positive_stable(1.0, &mut rng) == 1.0));
    }

    #[test]
    fn theta_one_sides_are_exponential() {
        let d = Dimension::new(3).unwrap();
        let p = PowerParam::new(1.0).unwrap();
        let (l, r) = stable_identity_samples(d, p, 20_000, &mut RngStream::new(13, 0));
        let cdf = |x: f64| if x <= 0.0 { 0.0 } else { -(-x).exp_m1() };
        assert!(ks_one_sample(&l, cdf).unwrap().pass);
        assert!(ks_one_sample(&r, cdf).unwrap().pass);
    }

    #[test]
    fn small_n_rejected() {
        let d = Dimension::new(2).unwrap();
        let p = PowerParam::new(2.0).unwrap();
        assert!(matches!(
            check_stable_identity(d, p, 500, &mut RngStream::new(1, 0)),
            Err(Error::TooFewSamples { .. })
        ));
    }
}
