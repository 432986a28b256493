//! Quadrature checks of the analytic identities satisfied by the beta mixtures.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixture::{beta_density, coefficient_table, mixture_for_level, BetaMixture};
use crate::params::{Dimension, PowerParam};
use crate::quadrature::integrate;

/// Absolute tolerance requested from the quadrature oracles.
pub const QUAD_TOL: f64 = 1e-10;

/// Residual threshold of the identity checks.
pub const IDENTITY_TOL: f64 = 1e-8;

const MAX_SEGMENTS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub max_residual: f64,
    /// Grid point attaining `max_residual`.
    pub worst_at: f64,
    pub points: usize,
    /// False if any quadrature stopped short of its requested tolerance.
    pub converged: bool,
}

impl IdentityCheck {
    pub fn pass(&self, tol: f64) -> bool {
        self.converged && self.max_residual <= tol
    }
}

/// `atom (1 - c)^(k-1) + int_{c^theta}^1 (1 - c / x^p)^(k-1) f(x) dx` for the level-`k` mixture.
fn level_transform(mix: &BetaMixture, density: &impl Fn(f64) -> f64, p: PowerParam, c: f64) -> (f64, bool) {
    let e = mix.level() as i32 - 1;
    let atom = mix.atom_mass();
    let atom_term = if atom == 0.0 { 0.0 } else { atom * (1.0 - c).powi(e) };
    let lower = p.root(c);
    if lower >= 1.0 {
        return (atom_term, true);
    }
    let integrand = |x: f64| {
        let base = (1.0 - c / x.powf(p.p())).max(0.0);
        base.powi(e) * density(x)
    };
    let r = integrate(integrand, lower, 1.0, QUAD_TOL, MAX_SEGMENTS);
    (atom_term + r.value, r.converged)
}

fn check_grid(d: Dimension, p: PowerParam, k: usize, grid: &[f64]) -> Result<IdentityCheck> {
    let table = coefficient_table(d, p);
    let mix = mixture_for_level(&table, k)?;
    let density = mix.continuous_density_fn();
    let e = d.get() as i32 - 1;
    let mut out = IdentityCheck { max_residual: 0.0, worst_at: f64::NAN, points: grid.len(), converged: true };
    for &c in grid {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::Probability(c));
        }
        let (lhs, ok) = level_transform(&mix, &density, p, c);
        let rhs = (1.0 - p.root(c)).max(0.0).powi(e);
        let res = (lhs - rhs).abs();
        out.converged &= ok;
        if res > out.max_residual || res.is_nan() {
            out.max_residual = res;
            out.worst_at = c;
        }
    }
    Ok(out)
}

/// `int_{c^theta}^1 (1 - c/x^p)^(k-1) dF_d^k(x) = (1 - c^theta)^(d-1)` on every grid point.
pub fn check_recur1(d: Dimension, p: PowerParam, k: usize, c_grid: &[f64]) -> Result<IdentityCheck> {
    if k < 1 || k > d.get() {
        return Err(Error::Level { k, d: d.get() });
    }
    check_grid(d, p, k, c_grid)
}

/// `E[(1 - x / V_p^p)_+^(d-1)] = (1 - x^theta)_+^(d-1)` on every grid point.
pub fn check_williamson_vp(d: Dimension, p: PowerParam, x_grid: &[f64]) -> Result<IdentityCheck> {
    check_grid(d, p, d.get(), x_grid)
}

/// Regularized incomplete beta function by adaptive quadrature of the density.
pub fn beta_cdf_quadrature(m: u32, n: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if n == 0 {
        return 0.0;
    }
    // Integrate over the shorter tail for accuracy near one.
    if x <= 0.5 {
        integrate(|t| beta_density(m, n, t), 0.0, x, QUAD_TOL * 1e-2, MAX_SEGMENTS).value
    } else {
        1.0 - integrate(|t| beta_density(m, n, t), x, 1.0, QUAD_TOL * 1e-2, MAX_SEGMENTS).value
    }
}

/// `n` equally spaced points covering `[0, 1]` including both ends.
pub fn unit_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixture::beta_cdf;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn pw(p: f64) -> PowerParam {
        PowerParam::new(p).unwrap()
    }

    #[test]
    fn hand_integrated_point() {
        let r = check_williamson_vp(dim(2), pw(2.0), &[0.25]).unwrap();
        assert!(r.max_residual < 1e-12, "{r:?}");
    }

    #[test]
    fn grid_endpoints_exact() {
        for (d, p) in [(2, 1.0), (3, 2.0), (5, 4.0)] {
            let r = check_williamson_vp(dim(d), pw(p), &[0.0, 1.0]).unwrap();
            assert!(r.max_residual < 1e-12, "d={d} p={p}: {r:?}");
        }
    }

    #[test]
    fn recursion_holds_on_small_grid() {
        let grid = unit_grid(11);
        for d in 2..=5 {
            for p in [1.0, 1.5, 3.0] {
                for k in 1..=d {
                    let r = check_recur1(dim(d), pw(p), k, &grid).unwrap();
                    assert!(r.pass(IDENTITY_TOL), "d={d} p={p} k={k}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn level_out_of_range() {
        assert!(check_recur1(dim(3), pw(2.0), 0, &[0.5]).is_err());
        assert!(check_recur1(dim(3), pw(2.0), 4, &[0.5]).is_err());
    }

    #[test]
    fn quadrature_oracle_agrees_with_closed_form() {
        for (m, n) in [(1, 1), (2, 3), (5, 1), (4, 7)] {
            for x in [0.05, 0.3, 0.5, 0.77, 0.99] {
                let a = beta_cdf_quadrature(m, n, x);
                let b = beta_cdf(m, n, x).unwrap();
                assert!((a - b).abs() < 1e-10, "m={m} n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn broken_table_is_detected() {
        // A wrong mixture (uniform instead of F_2^2) must violate the identity.
        let c: f64 = 0.25;
        let lhs = integrate(|x| (1.0 - c / (x * x)).max(0.0), c.sqrt(), 1.0, 1e-12, 100).value;
        assert!((lhs - (1.0 - c.sqrt())).abs() > 1e-3);
    }
}
