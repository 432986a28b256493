//! Max-infinitely divisible vectors whose exponent measure has lp-norm symmetric survival
//! function, simulated exactly as `Y_j = max_k eta_k Z_j^(k)` over the decreasing points
//! `eta_k = G^-1(T_k)` of a Poisson random measure.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Dimension, PowerParam};
use crate::rng::{par_batch, RngStream};
use crate::vp::VpSampler;

/// Default number of Poisson points after which [`MaxIdSampler::sample`] gives up.
pub const DEFAULT_ITERATION_CAP: u64 = 10_000_000;

/// Largest dimension accepted by [`maxid_cdf`]; the sum has `2^d - 1` terms.
pub const MAX_CDF_DIMENSION: usize = 25;

/// Non-finite radial Radon measure `nu` on `(0, inf]` with `nu({inf}) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RadialRadonMeasure {
    /// `a * sum_k delta_{1/k}`, with `G^-1(t) = 1 / ceil(t / a)`.
    HarmonicAtoms { a: f64 },
    /// Step table for `G^-1`: value `x_i` on `(t_{i-1}, t_i]` (with `t_0 = 0`) and the reciprocal
    /// tail `x_last * t_last / t` beyond the last knot. Equivalently, atoms of mass
    /// `t_i - t_{i-1}` at `x_i` plus density `x_last t_last / r^2` on `(0, x_last)`.
    CustomInverse { knots: Vec<(f64, f64)> },
}

impl RadialRadonMeasure {
    pub fn harmonic(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::NonPositive { what: "harmonic measure parameter", value: a });
        }
        Ok(RadialRadonMeasure::HarmonicAtoms { a })
    }

    pub fn custom_inverse(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::Measure("inverse table is empty".into()));
        }
        if knots.iter().any(|&(t, x)| !(t.is_finite() && t > 0.0 && x.is_finite() && x > 0.0)) {
            return Err(Error::Measure("knots must be positive and finite".into()));
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 > w[0].1) {
            return Err(Error::Measure("t must increase strictly and G^-1(t) must not increase".into()));
        }
        Ok(RadialRadonMeasure::CustomInverse { knots })
    }

    /// Parses CSV text with a header naming columns `t` and `x`.
    pub fn custom_from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Measure("empty table".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        let find = |name: &str| {
            cols.iter().position(|c| *c == name).ok_or_else(|| Error::Measure(format!("missing column `{name}`")))
        };
        let (it, ix) = (find("t")?, find("x")?);
        let knots = lines
            .enumerate()
            .map(|(i, line)| {
                let fields: Vec<&str> = line.split(',').map(str::trim).collect();
                let get = |c: usize| fields.get(c).and_then(|s| s.parse::<f64>().ok());
                get(it).zip(get(ix)).ok_or_else(|| Error::Measure(format!("bad number on data line {}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        RadialRadonMeasure::custom_inverse(knots)
    }

    pub fn custom_from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Measure(format!("{}: {e}", path.display())))?;
        RadialRadonMeasure::custom_from_csv_str(&text)
    }

    pub fn from_spec(spec: &MeasureSpec) -> Result<Self> {
        match spec {
            MeasureSpec::Harmonic(a) => RadialRadonMeasure::harmonic(*a),
            MeasureSpec::Inverse(path) => RadialRadonMeasure::custom_from_csv_path(path),
        }
    }

    /// Generalized inverse `G^-1(t) = sup { x > 0 : nu((x, inf]) >= t }`, for `t > 0`.
    pub fn inverse(&self, t: f64) -> f64 {
        match self {
            RadialRadonMeasure::HarmonicAtoms { a } => 1.0 / (t / a).ceil().max(1.0),
            RadialRadonMeasure::CustomInverse { knots } => {
                let i = knots.partition_point(|&(tk, _)| tk < t);
                match knots.get(i) {
                    Some(&(_, x)) => x,
                    None => {
                        let (tl, xl) = knots[knots.len() - 1];
                        xl * tl / t
                    }
                }
            }
        }
    }

    /// Survival function `G(x) = nu((x, inf])` for `x > 0`.
    pub fn survival(&self, x: f64) -> f64 {
        match self {
            RadialRadonMeasure::HarmonicAtoms { a } => {
                if x >= 1.0 {
                    0.0
                } else {
                    a * ((1.0 / x).ceil() - 1.0)
                }
            }
            RadialRadonMeasure::CustomInverse { knots } => {
                let (tl, xl) = knots[knots.len() - 1];
                if x < xl {
                    return xl * tl / x;
                }
                let mut prev_t = 0.0;
                let mut mass = 0.0;
                for &(t, xi) in knots {
                    if xi > x {
                        mass += t - prev_t;
                    }
                    prev_t = t;
                }
                mass
            }
        }
    }

    /// `phi_nu(t) = int (1 - t/r)_+^(d-1) nu(dr)`.
    pub fn generator(&self, d: Dimension, t: f64) -> f64 {
        let e = d.get() as i32 - 1;
        match self {
            RadialRadonMeasure::HarmonicAtoms { a } => harmonic_sum(*a, e, t),
            RadialRadonMeasure::CustomInverse { knots } => {
                let mut prev_t = 0.0;
                let mut s = 0.0;
                for &(tk, x) in knots {
                    if x > t {
                        s += (tk - prev_t) * (1.0 - t / x).powi(e);
                    }
                    prev_t = tk;
                }
                let (tl, xl) = knots[knots.len() - 1];
                if t < xl {
                    s += xl * tl / t * (1.0 - t / xl).powi(e + 1) / (e + 1) as f64;
                }
                s
            }
        }
    }
}

fn harmonic_sum(a: f64, e: i32, t: f64) -> f64 {
    if t >= 1.0 {
        return 0.0;
    }
    let terms = (1.0 / t).floor() as u64;
    a * (1..=terms).map(|k| (1.0 - k as f64 * t).max(0.0).powi(e)).sum::<f64>()
}

/// `1 / ceil(t / a)`.
pub fn harmonic_inverse(a: f64, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::NonPositive { what: "t", value: t });
    }
    Ok(RadialRadonMeasure::harmonic(a)?.inverse(t))
}

/// `a * sum_{k=1}^{floor(1/t)} (1 - k t)^(d-1)`, zero for `t >= 1`.
pub fn harmonic_generator(a: f64, d: Dimension, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::NonPositive { what: "t", value: t });
    }
    Ok(RadialRadonMeasure::harmonic(a)?.generator(d, t))
}

/// The generator `t -> phi_nu(t)` of a radial measure in dimension `d`.
#[derive(Debug, Clone)]
pub struct MaxIdGenerator {
    measure: RadialRadonMeasure,
    d: Dimension,
}

impl MaxIdGenerator {
    pub fn new(measure: RadialRadonMeasure, d: Dimension) -> Self {
        MaxIdGenerator { measure, d }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.measure.generator(self.d, t)
    }

    /// Checks monotonicity on `grid` (ascending) and that the end points show the required
    /// limits: above `big` at the first point and below `small` at the last.
    pub fn check_limits(&self, grid: &[f64], big: f64, small: f64) -> bool {
        let vals: Vec<f64> = grid.iter().map(|&t| self.value(t)).collect();
        let monotone = vals.windows(2).all(|w| w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0));
        monotone && vals.first().is_some_and(|&v| v > big) && vals.last().is_some_and(|&v| v < small)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxIdSample {
    pub y: Vec<f64>,
    /// Number of Poisson points `eta` inspected, including the final one that stopped the loop.
    pub n_points: u64,
}

#[derive(Debug, Clone)]
pub struct MaxIdSampler {
    p: PowerParam,
    measure: RadialRadonMeasure,
    vp: VpSampler,
    cap: u64,
}

impl MaxIdSampler {
    pub fn new(d: Dimension, p: PowerParam, measure: RadialRadonMeasure) -> Self {
        MaxIdSampler { p, measure, vp: VpSampler::new(d, p), cap: DEFAULT_ITERATION_CAP }
    }

    pub fn with_iteration_cap(mut self, cap: u64) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn dimension(&self) -> Dimension {
        self.vp.dimension()
    }

    pub fn measure(&self) -> &RadialRadonMeasure {
        &self.measure
    }

    pub fn generator(&self) -> MaxIdGenerator {
        MaxIdGenerator::new(self.measure.clone(), self.dimension())
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<MaxIdSample> {
        let d = self.dimension().get();
        let mut y = vec![0.0_f64; d];
        let mut xi = vec![0.0_f64; d];
        let mut t = rng.exp1();
        let mut eta = self.measure.inverse(t);
        let mut n_points: u64 = 1;
        let mut floor = 0.0_f64;
        while eta > floor {
            if n_points >= self.cap {
                return Err(Error::IterationCap(n_points));
            }
            xi.iter_mut().for_each(|x| *x = rng.exp1());
            let v = self.vp.sample(rng).value;
            let total: f64 = xi.iter().sum();
            for (yj, &x) in y.iter_mut().zip(&xi) {
                let z = v * self.p.root(x / total);
                *yj = yj.max(eta * z);
            }
            floor = y.iter().copied().fold(f64::INFINITY, f64::min);
            t += rng.exp1();
            let next = self.measure.inverse(t);
            debug_assert!(next <= eta, "G^-1 increased along the arrivals");
            eta = next;
            n_points += 1;
        }
        Ok(MaxIdSample { y, n_points })
    }

    /// Componentwise `exp(-phi_nu(Y_j))`, a draw of the outer power reciprocal Archimedean copula.
    pub fn sample_copula(&self, rng: &mut RngStream) -> Result<(Vec<f64>, u64)> {
        let s = self.sample(rng)?;
        let d = self.dimension();
        let u = s.y.iter().map(|&y| (-self.measure.generator(d, y)).exp()).collect();
        Ok((u, s.n_points))
    }
}

pub fn sample_maxid(d: Dimension, p: PowerParam, nu: &RadialRadonMeasure, rng: &mut RngStream) -> Result<MaxIdSample> {
    MaxIdSampler::new(d, p, nu.clone()).sample(rng)
}

pub fn reciprocal_copula_sample(
    d: Dimension,
    p: PowerParam,
    nu: &RadialRadonMeasure,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    Ok(MaxIdSampler::new(d, p, nu.clone()).sample_copula(rng)?.0)
}

pub fn sample_maxid_batch(sampler: &MaxIdSampler, n: usize, rng: &RngStream) -> Result<Vec<MaxIdSample>> {
    par_batch(rng, n, |r| sampler.sample(r))
}

pub fn reciprocal_copula_batch(sampler: &MaxIdSampler, n: usize, rng: &RngStream) -> Result<Vec<(Vec<f64>, u64)>> {
    par_batch(rng, n, |r| sampler.sample_copula(r))
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `P(Y <= y) = exp(-sum_{I != {}} (-1)^(|I|+1) phi(||y_I||_p))`.
pub fn maxid_cdf<F: Fn(f64) -> f64>(phi: F, y: &[f64], p: PowerParam) -> Result<f64> {
    let d = y.len();
    if d == 0 {
        return Err(Error::Config("empty point".into()));
    }
    if d > MAX_CDF_DIMENSION {
        return Err(Error::DimensionCap { d, max: MAX_CDF_DIMENSION });
    }
    if let Some(&bad) = y.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::NonPositive { what: "y coordinate", value: bad });
    }
    let scale = y.iter().copied().fold(0.0, f64::max);
    let powered: Vec<f64> = y.iter().map(|v| (v / scale).powf(p.p())).collect();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); d + 1];
    for mask in 1u32..(1u32 << d) {
        buckets[mask.count_ones() as usize].push(mask);
    }
    let mut acc = CompensatedSum::default();
    for (card, masks) in buckets.iter().enumerate().skip(1) {
        let sign = if card % 2 == 1 { 1.0 } else { -1.0 };
        for &mask in masks {
            let norm = if card == 1 {
                y[mask.trailing_zeros() as usize]
            } else {
                let s: f64 = (0..d).filter(|j| mask & (1 << j) != 0).map(|j| powered[j]).sum();
                scale * p.root(s)
            };
            acc.add(sign * phi(norm));
        }
    }
    Ok((-acc.total()).exp().clamp(0.0, 1.0))
}

/// Command-line measure specification: `harmonic:A` or `inverse:PATH`.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    Harmonic(f64),
    Inverse(String),
}

impl FromStr for MeasureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some(("harmonic", a)) => a
                .parse::<f64>()
                .map(MeasureSpec::Harmonic)
                .map_err(|_| Error::Config(format!("bad harmonic parameter `{a}`"))),
            Some(("inverse", path)) if !path.is_empty() => Ok(MeasureSpec::Inverse(path.to_string())),
            _ => Err(Error::Config(format!("unknown measure spec `{s}`"))),
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::Harmonic(a) => write!(f, "harmonic:{a}"),
            MeasureSpec::Inverse(p) => write!(f, "inverse:{p}"),
        }
    }
}
