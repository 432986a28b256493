//! The executable check suite: every invariant as a named, timed, self-describing check.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maxid::{maxid_cdf, sample_maxid_batch, MaxIdSampler, RadialRadonMeasure};
use crate::mixture::{beta_cdf, beta_identity_residuals, coefficient_table, exact, mixture_for_level};
use crate::params::{Dimension, PowerParam};
use crate::radial::{clayton_radial_cdf, williamson_residual, RadialLaw};
use crate::rng::{par_batch, RngStream, DEFAULT_SEED};
use crate::survival::{
    kendall_tau_outer_power, min_kendall_tau, sample_lp_sphere, sample_simplex, sample_survival_batch, survival_value,
    SurvivalSampler,
};
use crate::vp::{sample_vp_batch, VpSampler};

use super::identities::{beta_cdf_quadrature, check_recur1, check_williamson_vp, unit_grid, IDENTITY_TOL};
use super::ks::{ks_one_sample, ks_two_sample, sorted, KsResult};
use super::stable::check_stable_identity;
use super::stats::{kendall_tau, FrequencyCheck};

/// Monte Carlo frequencies must lie within this many binomial standard deviations.
pub const Z_TOL: f64 = 4.0;

/// Absolute tolerance on estimated Kendall's tau.
pub const KENDALL_TOL: f64 = 0.03;

/// Tolerance of the coefficient table checks.
pub const TABLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: String,
    pub metric: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub seed: u64,
}

impl VerificationReport {
    pub fn from_checks(checks: Vec<CheckResult>, seed: u64) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport { checks, pass, seed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteMode {
    Quick,
    Full,
}

/// Sample sizes and grids of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub mode: SuiteMode,
    pub n_vp: usize,
    pub n_survival: usize,
    pub n_kendall: usize,
    pub n_clayton: usize,
    pub n_maxid: usize,
    pub n_stable: usize,
    pub n_williamson: usize,
    pub identity_grid: usize,
}

impl SuiteConfig {
    pub fn full(seed: u64) -> Self {
        SuiteConfig {
            seed,
            mode: SuiteMode::Full,
            n_vp: 100_000,
            n_survival: 100_000,
            n_kendall: 5_000,
            n_clayton: 100_000,
            n_maxid: 100_000,
            n_stable: 100_000,
            n_williamson: 100_000,
            identity_grid: 50,
        }
    }

    pub fn quick(seed: u64) -> Self {
        SuiteConfig {
            seed,
            mode: SuiteMode::Quick,
            n_vp: 20_000,
            n_survival: 20_000,
            n_kendall: 5_000,
            n_clayton: 20_000,
            n_maxid: 10_000,
            n_stable: 20_000,
            n_williamson: 20_000,
            identity_grid: 20,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sizes = [
            ("n_vp", self.n_vp),
            ("n_survival", self.n_survival),
            ("n_kendall", self.n_kendall),
            ("n_clayton", self.n_clayton),
            ("n_maxid", self.n_maxid),
            ("n_williamson", self.n_williamson),
        ];
        for (name, n) in sizes {
            if n < 100 {
                return Err(Error::Config(format!("{name} = {n} is below the KS minimum of 100")));
            }
        }
        if self.n_stable < super::stable::STABLE_MIN_SAMPLES {
            return Err(Error::Config(format!("n_stable = {} is below 10000", self.n_stable)));
        }
        if self.identity_grid < 2 {
            return Err(Error::Config("identity_grid needs at least two points".into()));
        }
        Ok(())
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::full(DEFAULT_SEED)
    }
}

/// What a check measured against which threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub metric: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Outcome {
    /// Passes iff `metric <= tolerance` (NaN fails).
    pub fn at_most(metric: f64, tolerance: f64) -> Self {
        Outcome { metric, tolerance, pass: metric <= tolerance }
    }

    pub fn ks(r: &KsResult) -> Self {
        Outcome { metric: r.statistic, tolerance: r.critical_1pct, pass: r.pass }
    }
}

/// Runs `f`, timing it; an error becomes a failed check with an infinite metric.
pub fn timed(name: &str, params: String, f: impl FnOnce() -> Result<Outcome>) -> CheckResult {
    let start = Instant::now();
    let out = f();
    let seconds = start.elapsed().as_secs_f64();
    match out {
        Ok(o) => {
            CheckResult { name: name.into(), params, metric: o.metric, tolerance: o.tolerance, pass: o.pass, seconds }
        }
        Err(e) => CheckResult {
            name: name.into(),
            params: format!("{params};error={e}"),
            metric: f64::INFINITY,
            tolerance: f64::NAN,
            pass: false,
            seconds,
        },
    }
}

fn dim(d: usize) -> Result<Dimension> {
    Dimension::new(d)
}

fn pw(p: f64) -> Result<PowerParam> {
    PowerParam::new(p)
}

pub const TABLE_DIMS: std::ops::RangeInclusive<usize> = 2..=12;
pub const TABLE_POWERS: [(u64, u64); 5] = [(1, 1), (5, 4), (2, 1), (4, 1), (10, 1)];

/// `d = 3, p = 2` table against the hand-derived rows.
pub fn coefficient_example_check() -> CheckResult {
    timed("coefficients_d3_p2", "d=3,p=2".into(), || {
        let t = coefficient_table(dim(3)?, pw(2.0)?);
        let want: [&[f64]; 3] = [&[1.0], &[0.5, 0.5], &[0.25, 0.375, 0.375]];
        let mut err = 0.0_f64;
        for (k, w) in want.iter().enumerate() {
            let row = t.row(k + 1)?;
            if row.len() != w.len() {
                return Ok(Outcome::at_most(f64::INFINITY, TABLE_TOL));
            }
            err = row.iter().zip(w.iter()).map(|(a, b)| (a - b).abs()).fold(err, f64::max);
        }
        Ok(Outcome::at_most(err, TABLE_TOL))
    })
}

/// Row sums, first coefficient `p^-(d-1)` and sign over the table grid.
pub fn coefficient_structure_check() -> CheckResult {
    timed("coefficients_structure", "d=2..12,p={1,1.25,2,4,10}".into(), || {
        let mut err = 0.0_f64;
        for d in TABLE_DIMS {
            for (num, den) in TABLE_POWERS {
                let p = num as f64 / den as f64;
                let t = coefficient_table(dim(d)?, pw(p)?);
                for row in t.rows() {
                    err = err.max((row.iter().sum::<f64>() - 1.0).abs());
                    err = err.max(row.iter().map(|&a| (-a).max(0.0)).fold(0.0, f64::max));
                }
                err = err.max((t.row(d)?[0] - p.powi(-(d as i32 - 1))).abs());
            }
        }
        Ok(Outcome::at_most(err, TABLE_TOL))
    })
}

/// Floating table against exact rational arithmetic.
pub fn coefficient_exact_check() -> CheckResult {
    timed("coefficients_exact", "d=2..12,p={1,1.25,2,4,10}".into(), || {
        let mut err = 0.0_f64;
        for d in TABLE_DIMS {
            for (num, den) in TABLE_POWERS {
                let t = coefficient_table(dim(d)?, pw(num as f64 / den as f64)?);
                let ex = exact::to_f64_rows(&exact::exact_coefficient_rows(d, num, den)?);
                for (a, b) in t.rows().iter().zip(&ex) {
                    err = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(err, f64::max);
                }
            }
        }
        Ok(Outcome::at_most(err, TABLE_TOL))
    })
}

/// Closed-form beta CDFs against quadrature of the density, and the two shape identities.
pub fn beta_checks() -> Vec<CheckResult> {
    let grid = [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99];
    let cdf = timed("beta_cdf_vs_quadrature", "m+n<=15".into(), || {
        let mut err = 0.0_f64;
        for m in 1..15u32 {
            for n in 1..=(15 - m) {
                for &x in &grid {
                    err = err.max((beta_cdf(m, n, x)? - beta_cdf_quadrature(m, n, x)).abs());
                }
            }
        }
        Ok(Outcome::at_most(err, 1e-10))
    });
    let ids = timed("beta_shape_identities", "m+n<=15".into(), || {
        let mut err = 0.0_f64;
        for m in 1..15u32 {
            for n in 2..=(15 - m) {
                for &x in &grid {
                    let (a, b) = beta_identity_residuals(m, n, x)?;
                    err = err.max(a).max(b);
                }
            }
        }
        Ok(Outcome::at_most(err, 1e-12))
    });
    vec![cdf, ids]
}

/// Recursion residual over all levels, and the Williamson identity of `V_p`, for one `(d, p)`.
pub fn identity_checks(d: usize, p: f64, grid_points: usize) -> Vec<CheckResult> {
    let grid = unit_grid(grid_points);
    let params = format!("d={d},p={p},grid={grid_points}");
    let recur = timed("recursion_identity", params.clone(), || {
        let (dd, pp) = (dim(d)?, pw(p)?);
        let mut worst = 0.0_f64;
        let mut converged = true;
        for k in 1..=d {
            let r = check_recur1(dd, pp, k, &grid)?;
            worst = worst.max(r.max_residual);
            converged &= r.converged;
        }
        Ok(Outcome { pass: converged && worst <= IDENTITY_TOL, ..Outcome::at_most(worst, IDENTITY_TOL) })
    });
    let will = timed("williamson_vp", params, || {
        let r = check_williamson_vp(dim(d)?, pw(p)?, &grid)?;
        Ok(Outcome { pass: r.pass(IDENTITY_TOL), ..Outcome::at_most(r.max_residual, IDENTITY_TOL) })
    });
    vec![recur, will]
}

/// Atom frequency and KS of the continuous part of `V_p` samples against `F_d^d`.
pub fn vp_law_checks(d: usize, p: f64, n: usize, rng: &RngStream) -> Vec<CheckResult> {
    let params = format!("d={d},p={p},n={n}");
    let start = Instant::now();
    let prepared = (|| -> Result<_> {
        let (dd, pp) = (dim(d)?, pw(p)?);
        let samples = sample_vp_batch(dd, pp, n, rng)?;
        let mix = mixture_for_level(&coefficient_table(dd, pp), d)?;
        Ok((samples, mix))
    })();
    let setup = start.elapsed().as_secs_f64();
    let (samples, mix) = match prepared {
        Ok(v) => v,
        Err(e) => {
            let fail = |name: &str| timed(name, params.clone(), || Err(e.clone()));
            return vec![fail("vp_atom_frequency"), fail("vp_continuous_ks")];
        }
    };
    let mut atom = timed("vp_atom_frequency", params.clone(), || {
        let hits = samples.iter().filter(|s| s.is_atom).count();
        let f = FrequencyCheck::new(hits, n, mix.atom_mass());
        Ok(Outcome::at_most(f.z, Z_TOL))
    });
    atom.seconds += setup;
    let cont: Vec<f64> = sorted(samples.iter().filter(|s| !s.is_atom).map(|s| s.value).collect());
    let ks = if mix.atom_mass() >= 1.0 {
        // No continuous part: every draw must be the atom.
        timed("vp_continuous_ks", format!("{params};continuous_part=empty"), || {
            Ok(Outcome::at_most(cont.len() as f64, 0.0))
        })
    } else {
        timed("vp_continuous_ks", params, || {
            let r = ks_one_sample(&cont, |x| mix.continuous_cdf(x).unwrap_or(1.0))?;
            Ok(Outcome::ks(&r))
        })
    };
    vec![atom, ks]
}

/// KS of `V_p` drawn at an intermediate level `k` against `F_d^k`.
pub fn vp_level_check(d: usize, p: f64, k: usize, n: usize, rng: &RngStream) -> CheckResult {
    timed("vp_level_ks", format!("d={d},p={p},k={k},n={n}"), || {
        let (dd, pp) = (dim(d)?, pw(p)?);
        let sampler = VpSampler::new(dd, pp);
        let xs = sorted(par_batch(rng, n, |r| sampler.sample_level(k, r))?);
        let mix = mixture_for_level(&coefficient_table(dd, pp), k)?;
        Ok(Outcome::ks(&ks_one_sample(&xs, |x| mix.cdf(x))?))
    })
}

/// KS of the first simplex coordinate against `Beta(1, d-1)`.
pub fn simplex_check(d: usize, n: usize, rng: &RngStream) -> CheckResult {
    timed("simplex_marginal_ks", format!("d={d},n={n}"), || {
        let dd = dim(d)?;
        let xs = sorted(par_batch(rng, n, |r| Ok(sample_simplex(dd, r).0[0]))?);
        let e = d as i32 - 1;
        Ok(Outcome::ks(&ks_one_sample(&xs, |x| 1.0 - (1.0 - x.clamp(0.0, 1.0)).powi(e))?))
    })
}

/// First coordinate of the planar Euclidean sphere sampler is the cosine of a uniform angle.
pub fn lp_sphere_check(n: usize, rng: &RngStream) -> CheckResult {
    timed("lp_sphere_angle_ks", format!("d=2,p=2,n={n}"), || {
        let (dd, pp) = (dim(2)?, pw(2.0)?);
        let xs = sorted(par_batch(rng, n, |r| Ok(sample_lp_sphere(dd, pp, r).coords[0]))?);
        let cdf = |x: f64| 1.0 - x.clamp(0.0, 1.0).acos() / std::f64::consts::FRAC_PI_2;
        Ok(Outcome::ks(&ks_one_sample(&xs, cdf)?))
    })
}

/// KS of `R / a` for the Clayton radial law against its closed-form CDF.
pub fn clayton_check(a: f64, d: usize, n: usize, rng: &RngStream) -> CheckResult {
    timed("clayton_radial_ks", format!("a={a},d={d},n={n}"), || {
        let dd = dim(d)?;
        let law = RadialLaw::clayton(a, dd)?;
        let xs = sorted(par_batch(rng, n, |r| Ok(law.sample(r) / a))?);
        let r = ks_one_sample(&xs, |x| clayton_radial_cdf(a, dd, a * x).unwrap_or(f64::NAN))?;
        Ok(Outcome::ks(&r))
    })
}

/// Monte Carlo Williamson transform of a radial law against its generator.
pub fn williamson_radial_check(label: &str, law: &RadialLaw, n: usize, rng: &RngStream) -> CheckResult {
    let d = law.dimension().get();
    timed("williamson_radial", format!("radial={label},d={d},n={n}"), || {
        let grid: Vec<f64> = (1..=20).map(|i| i as f64 * 0.25).collect();
        let r = williamson_residual(law, &grid, n, &mut rng.clone())?;
        Ok(Outcome::at_most(r.max_z, Z_TOL))
    })
}

/// Empirical `P(Z > z)` against `phi(||z||_p)`.
pub fn survival_check(label: &str, law: &RadialLaw, p: f64, z: &[f64], n: usize, rng: &RngStream) -> CheckResult {
    let d = law.dimension().get();
    let zs = z.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    timed("survival_probability", format!("radial={label},d={d},p={p},z=({zs}),n={n}"), || {
        if z.len() != d {
            return Err(Error::Config(format!("point has {} coordinates, expected {d}", z.len())));
        }
        let pp = pw(p)?;
        let sampler = SurvivalSampler::new(pp, law.clone());
        let samples = sample_survival_batch(&sampler, n, rng)?;
        let hits = samples.iter().filter(|s| s.z.iter().zip(z).all(|(a, b)| a > b)).count();
        let f = FrequencyCheck::new(hits, n, survival_value(law, z, pp));
        Ok(Outcome::at_most(f.z, Z_TOL))
    })
}

/// Uniformity of a copula margin.
pub fn copula_margin_check(label: &str, law: &RadialLaw, p: f64, n: usize, rng: &RngStream) -> CheckResult {
    let d = law.dimension().get();
    timed("copula_margin_ks", format!("radial={label},d={d},p={p},n={n}"), || {
        let sampler = SurvivalSampler::new(pw(p)?, law.clone());
        let xs = sorted(par_batch(rng, n, |r| Ok(sampler.sample_copula(r)[d - 1]))?);
        Ok(Outcome::ks(&ks_one_sample(&xs, |x| x.clamp(0.0, 1.0))?))
    })
}

/// Kendall's tau of two coordinates at the unit radial law against `1 - theta + theta tau_phi`.
pub fn kendall_check(d: usize, p: f64, n: usize, rng: &RngStream) -> CheckResult {
    timed("kendall_tau", format!("radial=unit,d={d},p={p},n={n}"), || {
        let (dd, pp) = (dim(d)?, pw(p)?);
        let sampler = SurvivalSampler::new(pp, RadialLaw::unit(dd));
        let samples = sample_survival_batch(&sampler, n, rng)?;
        let x: Vec<f64> = samples.iter().map(|s| s.z[0]).collect();
        let y: Vec<f64> = samples.iter().map(|s| s.z[1]).collect();
        let want = kendall_tau_outer_power(pp, min_kendall_tau(d)?);
        Ok(Outcome::at_most((kendall_tau(&x, &y) - want).abs(), KENDALL_TOL))
    })
}

/// Bisection for `y` with `exp(-phi(y)) = u`, i.e. the marginal `u`-quantile of the max-id vector.
pub fn maxid_marginal_quantile(phi: impl Fn(f64) -> f64, u: f64) -> f64 {
    let target = -u.ln();
    let (mut lo, mut hi) = (1e-12_f64, 1.0_f64);
    while phi(hi) > target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Marginal levels of the max-id CDF grid.
pub const MAXID_LEVELS: [f64; 3] = [0.3, 0.6, 0.9];

/// All points of the product grid `levels^d`, mapped through the marginal quantile.
pub fn maxid_grid(phi: &impl Fn(f64) -> f64, d: usize) -> Vec<Vec<f64>> {
    let ys: Vec<f64> = MAXID_LEVELS.iter().map(|&u| maxid_marginal_quantile(phi, u)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|pt| {
                ys.iter().map(move |&y| {
                    let mut q = pt.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    out
}

/// Empirical `P(Y <= y)` against the inclusion-exclusion CDF on the `3^d` grid; the metric is
/// the largest z-score.
pub fn maxid_check(d: usize, p: f64, a: f64, n: usize, rng: &RngStream) -> CheckResult {
    timed("maxid_cdf", format!("measure=harmonic:{a},d={d},p={p},n={n}"), || {
        let (dd, pp) = (dim(d)?, pw(p)?);
        let sampler = MaxIdSampler::new(dd, pp, RadialRadonMeasure::harmonic(a)?);
        let samples = sample_maxid_batch(&sampler, n, rng)?;
        let gen = sampler.generator();
        let phi = |t: f64| gen.value(t);
        let mut worst = 0.0_f64;
        for y in maxid_grid(&phi, d) {
            let hits = samples.iter().filter(|s| s.y.iter().zip(&y).all(|(a, b)| a <= b)).count();
            let f = FrequencyCheck::new(hits, n, maxid_cdf(phi, &y, pp)?);
            worst = worst.max(f.z);
        }
        Ok(Outcome::at_most(worst, Z_TOL))
    })
}

/// Two-sample KS between two coordinates of the reciprocal copula (exchangeability) plus
/// uniformity of the first margin; the metric is the larger ratio statistic / critical value.
pub fn rcopula_margin_check(d: usize, p: f64, a: f64, n: usize, rng: &RngStream) -> CheckResult {
    timed("rcopula_margins", format!("measure=harmonic:{a},d={d},p={p},n={n}"), || {
        let sampler = MaxIdSampler::new(dim(d)?, pw(p)?, RadialRadonMeasure::harmonic(a)?);
        let draws = par_batch(rng, n, |r| sampler.sample_copula(r))?;
        let first = sorted(draws.iter().map(|(u, _)| u[0]).collect());
        let last = sorted(draws.iter().map(|(u, _)| u[d - 1]).collect());
        let one = ks_one_sample(&first, |x| x.clamp(0.0, 1.0))?;
        let two = ks_two_sample(&first, &last)?;
        let ratio = (one.statistic / one.critical_1pct).max(two.statistic / two.critical_1pct);
        Ok(Outcome { metric: ratio, tolerance: 1.0, pass: one.pass && two.pass })
    })
}

/// Two-sample KS of the positive stable distributional identity.
pub fn stable_check(d: usize, p: f64, n: usize, rng: &RngStream) -> CheckResult {
    timed("stable_identity_ks", format!("d={d},p={p},n={n}"), || {
        let r = check_stable_identity(dim(d)?, pw(p)?, n, &mut rng.clone())?;
        Ok(Outcome::ks(&r))
    })
}

type Task<'a> = Box<dyn Fn(&RngStream) -> Vec<CheckResult> + Send + Sync + 'a>;

fn one<'a>(f: impl Fn(&RngStream) -> CheckResult + Send + Sync + 'a) -> Task<'a> {
    Box::new(move |r| vec![f(r)])
}

fn tasks(cfg: &SuiteConfig) -> Result<Vec<Task<'_>>> {
    let mut t: Vec<Task> = vec![
        one(|_| coefficient_example_check()),
        one(|_| coefficient_structure_check()),
        one(|_| coefficient_exact_check()),
        Box::new(|_| beta_checks()),
    ];
    for d in 2..=8 {
        for p in [1.0, 1.5, 2.0, 4.0] {
            t.push(Box::new(move |_| identity_checks(d, p, cfg.identity_grid)));
        }
    }
    for d in [2, 3, 5, 10] {
        for p in [1.0, 1.5, 2.0, 4.0] {
            t.push(Box::new(move |r| vp_law_checks(d, p, cfg.n_vp, r)));
        }
    }
    t.push(one(|r| vp_level_check(4, 2.0, 2, cfg.n_vp, r)));
    t.push(one(|r| vp_level_check(5, 1.5, 4, cfg.n_vp, r)));
    for d in [2, 4] {
        t.push(one(move |r| simplex_check(d, cfg.n_survival, r)));
    }
    t.push(one(|r| lp_sphere_check(cfg.n_survival, r)));
    t.push(one(|r| clayton_check(1.75, 2, cfg.n_clayton, r)));
    t.push(one(|r| clayton_check(4.5, 3, cfg.n_clayton, r)));
    let d2 = dim(2)?;
    let d3 = dim(3)?;
    let d4 = dim(4)?;
    let radial: Vec<(&str, RadialLaw)> = vec![
        ("unit", RadialLaw::unit(d3)),
        ("clayton:1.75", RadialLaw::clayton(1.75, d2)?),
        ("clayton:3", RadialLaw::clayton(3.0, d3)?),
        ("erlang", RadialLaw::erlang(d3)),
    ];
    for (label, law) in radial {
        t.push(one(move |r| williamson_radial_check(label, &law, cfg.n_williamson, r)));
    }
    let survival: Vec<(&str, RadialLaw, f64, Vec<f64>)> = vec![
        ("unit", RadialLaw::unit(d2), 2.0, vec![0.3, 0.4]),
        ("unit", RadialLaw::unit(d3), 1.0, vec![0.2, 0.2, 0.2]),
        ("unit", RadialLaw::unit(d3), 4.0, vec![0.5, 0.3, 0.6]),
        ("clayton:1.75", RadialLaw::clayton(1.75, d2)?, 2.5, vec![0.5, 0.5]),
        ("clayton:3", RadialLaw::clayton(3.0, d3)?, 1.5, vec![0.2, 0.3, 0.1]),
        ("erlang", RadialLaw::erlang(d4), 4.0, vec![0.3, 0.5, 0.2, 0.4]),
        ("erlang", RadialLaw::erlang(d2), 1.0, vec![0.7, 0.2]),
    ];
    for (label, law, p, z) in survival {
        t.push(one(move |r| survival_check(label, &law, p, &z, cfg.n_survival, r)));
    }
    let clayton = RadialLaw::clayton(1.75, d2)?;
    t.push(one(move |r| copula_margin_check("clayton:1.75", &clayton, 2.5, cfg.n_survival, r)));
    for (d, p) in [(2, 1.0), (2, 2.0), (3, 1.0), (3, 2.0)] {
        t.push(one(move |r| kendall_check(d, p, cfg.n_kendall, r)));
    }
    for d in [2, 3] {
        for p in [1.0, 2.0, 4.0] {
            t.push(one(move |r| maxid_check(d, p, 1.125, cfg.n_maxid, r)));
        }
    }
    t.push(one(|r| rcopula_margin_check(2, 4.0, 1.125, cfg.n_maxid, r)));
    t.push(one(|r| rcopula_margin_check(3, 2.0, 1.125, cfg.n_maxid, r)));
    for (d, p) in [(3, 2.0), (2, 4.0), (4, 1.0)] {
        t.push(one(move |r| stable_check(d, p, cfg.n_stable, r)));
    }
    Ok(t)
}

/// Runs every check, concurrently, each on its own stream derived from the master seed.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let master = RngStream::new(cfg.seed, 0);
    let tasks = tasks(cfg)?;
    let checks: Vec<CheckResult> = tasks
        .par_iter()
        .enumerate()
        .map(|(i, task)| task(&master.derive(i as u64)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::from_checks(checks, cfg.seed))
}
