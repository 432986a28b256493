//! Exact simulation of the mixing variable `V_p` through order statistics of uniforms and a
//! Bernoulli counting process.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Dimension, PowerParam};
use crate::rng::{par_batch, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VpSample {
    pub value: f64,
    /// Set iff the counting process reached `N_d = d`; the value is then exactly 1.
    pub is_atom: bool,
}

/// Sampler for `W_(N_k)`, the level-`k` variable whose law is `F_d^k`.
#[derive(Debug, Clone, Copy)]
pub struct VpSampler {
    d: Dimension,
    p: PowerParam,
}

impl VpSampler {
    pub fn new(d: Dimension, p: PowerParam) -> Self {
        VpSampler { d, p }
    }

    pub fn dimension(&self) -> Dimension {
        self.d
    }

    pub fn power(&self) -> PowerParam {
        self.p
    }

    /// Draws `V_p`, the level-`d` variable.
    pub fn sample(&self, rng: &mut RngStream) -> VpSample {
        self.draw(self.d.get(), rng)
    }

    pub fn sample_level(&self, k: usize, rng: &mut RngStream) -> Result<f64> {
        if k == 0 || k > self.d.get() {
            return Err(Error::Level { k, d: self.d.get() });
        }
        Ok(self.draw(k, rng).value)
    }

    fn draw(&self, k: usize, rng: &mut RngStream) -> VpSample {
        let d = self.d.get();
        let theta = self.p.theta();
        let mut w: Vec<f64> = (0..d - 1).map(|_| rng.uniform()).collect();
        w.sort_unstable_by(f64::total_cmp);

        let mut count = 1usize;
        for j in 2..=k {
            let prob = theta * count as f64 / (j - 1) as f64;
            debug_assert!((0.0..=1.0).contains(&prob), "chain probability {prob} out of range");
            if rng.uniform() < prob {
                count += 1;
            }
        }
        if count == d {
            VpSample { value: 1.0, is_atom: true }
        } else {
            VpSample { value: w[count - 1], is_atom: false }
        }
    }
}

pub fn sample_vp(d: Dimension, p: PowerParam, rng: &mut RngStream) -> VpSample {
    VpSampler::new(d, p).sample(rng)
}

pub fn sample_vp_level(d: Dimension, p: PowerParam, k: usize, rng: &mut RngStream) -> Result<f64> {
    VpSampler::new(d, p).sample_level(k, rng)
}

/// `n` independent draws over derived sub-streams of `rng`; reproducible for any thread count.
pub fn sample_vp_batch(d: Dimension, p: PowerParam, n: usize, rng: &RngStream) -> Result<Vec<VpSample>> {
    let sampler = VpSampler::new(d, p);
    par_batch(rng, n, |r| Ok(sampler.sample(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(d: usize, p: f64) -> (Dimension, PowerParam) {
        (Dimension::new(d).unwrap(), PowerParam::new(p).unwrap())
    }

    #[test]
    fn p_one_always_atom() {
        let (d, p) = dp(6, 1.0);
        let mut rng = RngStream::new(3, 0);
        for _ in 0..1000 {
            assert_eq!(sample_vp(d, p, &mut rng), VpSample { value: 1.0, is_atom: true });
        }
    }

    #[test]
    fn values_in_unit_interval() {
        let (d, p) = dp(4, 2.5);
        let mut rng = RngStream::new(5, 0);
        for _ in 0..10_000 {
            let s = sample_vp(d, p, &mut rng);
            assert!(s.value > 0.0 && s.value <= 1.0);
            assert_eq!(s.is_atom, s.value == 1.0);
        }
    }

    #[test]
    fn atom_frequency_d3_p2() {
        let (d, p) = dp(3, 2.0);
        let n = 100_000;
        let draws = sample_vp_batch(d, p, n, &RngStream::new(11, 0)).unwrap();
        let freq = draws.iter().filter(|s| s.is_atom).count() as f64 / n as f64;
        let sigma = (0.25 * 0.75 / n as f64).sqrt();
        assert!((freq - 0.25).abs() <= 4.0 * sigma, "{freq}");
    }

    #[test]
    fn level_one_is_minimum_of_uniforms() {
        let (d, p) = dp(4, 3.0);
        let mut rng = RngStream::new(8, 1);
        let n = 20_000;
        let mean: f64 = (0..n).map(|_| sample_vp_level(d, p, 1, &mut rng).unwrap()).sum::<f64>() / n as f64;
        // Minimum of three uniforms has mean 1/4 and variance 3/80.
        assert!((mean - 0.25).abs() < 4.0 * (3.0 / 80.0 / n as f64).sqrt());
        assert!(sample_vp_level(d, p, 0, &mut rng).is_err());
        assert!(sample_vp_level(d, p, 5, &mut rng).is_err());
    }

    #[test]
    fn batch_deterministic_and_nonempty() {
        let (d, p) = dp(5, 1.5);
        let base = RngStream::new(42, 0);
        let a = sample_vp_batch(d, p, 3000, &base).unwrap();
        let b = sample_vp_batch(d, p, 3000, &base).unwrap();
        assert_eq!(a, b);
        assert_eq!(sample_vp_batch(d, p, 0, &base), Err(Error::EmptyBatch));
    }
}
