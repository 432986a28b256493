//! Random vectors with lp-norm symmetric survival function `P(Z > z) = phi(||z||_p)`,
//! built as `Z = R * V_p * U^theta` with `U` uniform on the unit simplex.

use rand_distr::{Distribution, Gamma};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Dimension, PowerParam};
use crate::radial::{Generator, RadialLaw};
use crate::rng::{par_batch, RngStream};
use crate::vp::VpSampler;

/// A point of the standard unit simplex `{x >= 0 : ||x||_1 = 1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SimplexPoint(pub Vec<f64>);

/// A point of the positive part of the unit lp-sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSpherePoint {
    pub coords: Vec<f64>,
    pub p: f64,
}

/// Normalized iid unit exponentials.
pub fn sample_simplex(d: Dimension, rng: &mut RngStream) -> SimplexPoint {
    let mut xi: Vec<f64> = (0..d.get()).map(|_| rng.exp1()).collect();
    let total: f64 = xi.iter().sum();
    xi.iter_mut().for_each(|x| *x /= total);
    SimplexPoint(xi)
}

/// `xi / ||xi||_p` where `xi_i^p ~ Gamma(shape 1/p, rate 1/p)` iid.
pub fn sample_lp_sphere(d: Dimension, p: PowerParam, rng: &mut RngStream) -> LpSpherePoint {
    let xi: Vec<f64> = if p.p() == 1.0 {
        (0..d.get()).map(|_| rng.exp1()).collect()
    } else {
        let gamma = Gamma::new(p.theta(), p.p()).expect("shape and scale are positive");
        (0..d.get()).map(|_| p.root(gamma.sample(rng))).collect()
    };
    let norm = p.norm(&xi);
    LpSpherePoint { coords: xi.into_iter().map(|x| x / norm).collect(), p: p.p() }
}

/// The `(r, v_p, u)` draws a survival sample was assembled from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub r: f64,
    pub vp: f64,
    pub u: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalSample {
    pub z: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// Sampler for `Z = R * V_p * U^theta` with a fixed radial law.
#[derive(Debug, Clone)]
pub struct SurvivalSampler {
    p: PowerParam,
    radial: RadialLaw,
    vp: VpSampler,
    keep_provenance: bool,
}

impl SurvivalSampler {
    pub fn new(p: PowerParam, radial: RadialLaw) -> Self {
        let vp = VpSampler::new(radial.dimension(), p);
        SurvivalSampler { p, radial, vp, keep_provenance: false }
    }

    pub fn with_provenance(mut self, keep: bool) -> Self {
        self.keep_provenance = keep;
        self
    }

    pub fn dimension(&self) -> Dimension {
        self.radial.dimension()
    }

    pub fn power(&self) -> PowerParam {
        self.p
    }

    pub fn radial(&self) -> &RadialLaw {
        &self.radial
    }

    pub fn sample(&self, rng: &mut RngStream) -> SurvivalSample {
        let r = self.radial.sample(rng);
        let v = self.vp.sample(rng).value;
        let u = sample_simplex(self.dimension(), rng).0;
        let scale = r * v;
        let z = u.iter().map(|&ui| scale * self.p.root(ui)).collect();
        let provenance = self.keep_provenance.then_some(Provenance { r, vp: v, u });
        SurvivalSample { z, provenance }
    }

    /// Componentwise `phi(Z_j)`, a draw from the outer power Archimedean copula.
    pub fn sample_copula(&self, rng: &mut RngStream) -> Vec<f64> {
        let mut z = self.sample(rng).z;
        z.iter_mut().for_each(|x| *x = self.radial.generator_value(*x));
        z
    }
}

pub fn sample_survival(p: PowerParam, radial: &RadialLaw, rng: &mut RngStream) -> SurvivalSample {
    SurvivalSampler::new(p, radial.clone()).sample(rng)
}

pub fn copula_sample(p: PowerParam, radial: &RadialLaw, rng: &mut RngStream) -> Vec<f64> {
    SurvivalSampler::new(p, radial.clone()).sample_copula(rng)
}

pub fn sample_survival_batch(sampler: &SurvivalSampler, n: usize, rng: &RngStream) -> Result<Vec<SurvivalSample>> {
    par_batch(rng, n, |r| Ok(sampler.sample(r)))
}

pub fn copula_batch(sampler: &SurvivalSampler, n: usize, rng: &RngStream) -> Result<Vec<Vec<f64>>> {
    par_batch(rng, n, |r| Ok(sampler.sample_copula(r)))
}

/// `phi(||z||_p)`.
pub fn survival_value<G: Generator + ?Sized>(generator: &G, z: &[f64], p: PowerParam) -> f64 {
    generator.value(p.norm(z))
}

/// Kendall's tau between two coordinates of the outer power construction, `1 - theta + theta * tau_phi`.
pub fn kendall_tau_outer_power(p: PowerParam, tau_phi: f64) -> f64 {
    1.0 - p.theta() + p.theta() * tau_phi
}

/// The smallest Kendall's tau attainable for `p = 1`, reached at `R == 1`: `-1 / (2d - 3)`.
pub fn min_kendall_tau(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::Dimension(d));
    }
    Ok(-1.0 / (2 * d - 3) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::GeneratorFn;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn pw(p: f64) -> PowerParam {
        PowerParam::new(p).unwrap()
    }

    #[test]
    fn simplex_on_unit_sum() {
        let mut rng = RngStream::new(1, 0);
        for d in [2, 3, 7] {
            for _ in 0..1000 {
                let s = sample_simplex(dim(d), &mut rng);
                assert!((s.0.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!(s.0.iter().all(|&x| x > 0.0));
            }
        }
    }

    #[test]
    fn lp_sphere_norm() {
        let mut rng = RngStream::new(2, 0);
        for p in [1.0, 1.5, 2.0, 4.0, 10.0] {
            for _ in 0..1000 {
                let s = sample_lp_sphere(dim(4), pw(p), &mut rng);
                assert!((pw(p).norm(&s.coords) - 1.0).abs() < 1e-10);
                let powered: f64 = s.coords.iter().map(|x| x.powf(p)).sum();
                assert!((powered - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn unit_radial_stays_in_unit_ball() {
        let sampler = SurvivalSampler::new(pw(2.5), RadialLaw::unit(dim(3)));
        let mut rng = RngStream::new(3, 0);
        for _ in 0..5000 {
            let z = sampler.sample(&mut rng).z;
            assert!(z.iter().all(|&x| x > 0.0 && x <= 1.0));
            assert!(pw(2.5).norm(&z) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn provenance_is_opt_in_and_consistent() {
        let base = SurvivalSampler::new(pw(2.0), RadialLaw::erlang(dim(3)));
        let mut rng = RngStream::new(4, 0);
        assert!(base.sample(&mut rng).provenance.is_none());
        let traced = base.with_provenance(true);
        let s = traced.sample(&mut rng);
        let prov = s.provenance.unwrap();
        for (z, u) in s.z.iter().zip(&prov.u) {
            assert!((z - prov.r * prov.vp * u.sqrt()).abs() <= 1e-15 * z.max(1.0));
        }
    }

    #[test]
    fn survival_value_examples() {
        let unit = RadialLaw::unit(dim(3));
        assert_eq!(survival_value(&unit, &[0.6, 0.6, 0.6], pw(1.0)), 0.0);
        let clayton = RadialLaw::clayton(1.75, dim(2)).unwrap();
        let want = (1.0 - 0.5 * 2f64.powf(0.4) / 1.75).powf(1.75);
        assert!((survival_value(&clayton, &[0.5, 0.5], pw(2.5)) - want).abs() < 1e-14);
        let g = GeneratorFn::new(dim(2), |x: f64| (-x).exp());
        assert!((survival_value(&g, &[1e-300, 1e-300], pw(2.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn copula_coordinates_in_unit_interval() {
        let sampler = SurvivalSampler::new(pw(2.5), RadialLaw::clayton(1.75, dim(2)).unwrap());
        let mut rng = RngStream::new(5, 0);
        for _ in 0..5000 {
            let u = sampler.sample_copula(&mut rng);
            assert!(u.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn kendall_formulas() {
        assert_eq!(kendall_tau_outer_power(pw(1.0), 0.3), 0.3);
        assert_eq!(kendall_tau_outer_power(pw(2.0), -1.0), 0.0);
        assert_eq!(min_kendall_tau(2).unwrap(), -1.0);
        assert!((min_kendall_tau(3).unwrap() + 1.0 / 3.0).abs() < 1e-16);
        assert!((kendall_tau_outer_power(pw(2.0), min_kendall_tau(3).unwrap()) - 1.0 / 3.0).abs() < 1e-15);
        assert!(min_kendall_tau(1).is_err());
    }
}
