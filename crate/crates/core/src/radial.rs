//! Radial variables `R` and their Williamson d-transforms `phi(x) = E[(1 - x/R)_+^(d-1)]`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand_distr::{Distribution, Gamma};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Dimension;
use crate::quadrature;
use crate::rng::RngStream;

/// Absolute tolerance of the quadrature behind [`RadialLaw::generator_value`] for tables.
pub const TABLE_GENERATOR_TOL: f64 = 1e-11;

/// A one-variable generator `phi` together with the dimension it is asserted d-monotone for.
pub trait Generator {
    fn value(&self, x: f64) -> f64;
    fn dimension(&self) -> Dimension;
}

/// Closure-backed generator.
pub struct GeneratorFn<F> {
    f: F,
    d: Dimension,
}

impl<F: Fn(f64) -> f64> GeneratorFn<F> {
    pub fn new(d: Dimension, f: F) -> Self {
        GeneratorFn { f, d }
    }
}

impl<F: Fn(f64) -> f64> Generator for GeneratorFn<F> {
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn dimension(&self) -> Dimension {
        self.d
    }
}

/// Piecewise-linear quantile function through `(u, q(u))` knots, clamped outside the knot range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantileTable {
    u: Vec<f64>,
    q: Vec<f64>,
}

impl QuantileTable {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::QuantileTable("need at least two knots".into()));
        }
        let (u, q): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        if u.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::QuantileTable("u values must lie in [0, 1]".into()));
        }
        if q.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::QuantileTable("q values must be positive and finite".into()));
        }
        if u.windows(2).any(|w| w[1] <= w[0]) || q.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::QuantileTable("knots must be strictly increasing in u and q".into()));
        }
        Ok(QuantileTable { u, q })
    }

    /// Parses CSV text with a header naming columns `u` and `q` (any order, extra columns ignored).
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::QuantileTable("empty table".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        let find = |name: &str| {
            cols.iter().position(|c| *c == name).ok_or_else(|| Error::QuantileTable(format!("missing column `{name}`")))
        };
        let (iu, iq) = (find("u")?, find("q")?);
        let mut points = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let parse = |i: usize| -> Result<f64> {
                fields
                    .get(i)
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| Error::QuantileTable(format!("bad number on data line {}", lineno + 1)))
            };
            points.push((parse(iu)?, parse(iq)?));
        }
        QuantileTable::new(points)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::QuantileTable(format!("{}: {e}", path.display())))?;
        QuantileTable::from_csv_str(&text)
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let n = self.u.len();
        if u <= self.u[0] {
            return self.q[0];
        }
        if u >= self.u[n - 1] {
            return self.q[n - 1];
        }
        let i = self.u.partition_point(|&x| x <= u) - 1;
        let t = (u - self.u[i]) / (self.u[i + 1] - self.u[i]);
        self.q[i] + t * (self.q[i + 1] - self.q[i])
    }

    /// `E[(1 - x/R)_+^(d-1)]` for `R = q(U)`, integrated knot by knot in `u`.
    fn williamson(&self, x: f64, d: usize) -> f64 {
        let e = (d - 1) as i32;
        let kernel = |r: f64| if r > x { (1.0 - x / r).powi(e) } else { 0.0 };
        let n = self.u.len();
        let mut total = self.u[0] * kernel(self.q[0]) + (1.0 - self.u[n - 1]) * kernel(self.q[n - 1]);
        let seg_tol = TABLE_GENERATOR_TOL / n as f64;
        for i in 0..n - 1 {
            let (u0, u1, q0, q1) = (self.u[i], self.u[i + 1], self.q[i], self.q[i + 1]);
            if q1 <= x {
                continue;
            }
            // Only the part of the segment where q(u) > x contributes.
            let start = if q0 >= x { u0 } else { u0 + (x - q0) / (q1 - q0) * (u1 - u0) };
            let f = |u: f64| kernel(q0 + (u - u0) / (u1 - u0) * (q1 - q0));
            total += quadrature::integrate(f, start, u1, seg_tol, 200).value;
        }
        total
    }
}

#[derive(Debug, Clone)]
enum Kind {
    UnitPointMass,
    Clayton { a: f64, shapes: Option<(Gamma<f64>, Gamma<f64>)> },
    Erlang,
    Table(QuantileTable),
}

/// A positive radial law with a sampler and an evaluable Williamson d-transform.
#[derive(Debug, Clone)]
pub struct RadialLaw {
    d: Dimension,
    kind: Kind,
}

impl RadialLaw {
    pub fn unit(d: Dimension) -> Self {
        RadialLaw { d, kind: Kind::UnitPointMass }
    }

    /// Radial law of the strict Clayton generator `(1 - x/a)_+^a`; needs `a >= d - 1`, and
    /// `a == d - 1` is the point mass at `a`.
    pub fn clayton(a: f64, d: Dimension) -> Result<Self> {
        let min = (d.get() - 1) as f64;
        if !(a.is_finite() && a >= min) {
            return Err(Error::Clayton { a, min });
        }
        let shapes = if a > min {
            let g1 = Gamma::new(d.get() as f64, 1.0).map_err(|_| Error::Clayton { a, min })?;
            let g2 = Gamma::new(a - min, 1.0).map_err(|_| Error::Clayton { a, min })?;
            Some((g1, g2))
        } else {
            None
        };
        Ok(RadialLaw { d, kind: Kind::Clayton { a, shapes } })
    }

    /// Erlang-d radial law, whose Williamson transform is `exp(-x)`.
    pub fn erlang(d: Dimension) -> Self {
        RadialLaw { d, kind: Kind::Erlang }
    }

    pub fn table(table: QuantileTable, d: Dimension) -> Self {
        RadialLaw { d, kind: Kind::Table(table) }
    }

    pub fn from_spec(spec: &RadialSpec, d: Dimension) -> Result<Self> {
        Ok(match spec {
            RadialSpec::Unit => RadialLaw::unit(d),
            RadialSpec::Clayton(a) => RadialLaw::clayton(*a, d)?,
            RadialSpec::Erlang => RadialLaw::erlang(d),
            RadialSpec::Table(path) => RadialLaw::table(QuantileTable::from_csv_path(path)?, d),
        })
    }

    pub fn dimension(&self) -> Dimension {
        self.d
    }

    /// True when `R` is a constant, so Monte Carlo averages are exact.
    pub fn is_degenerate(&self) -> bool {
        matches!(self.kind, Kind::UnitPointMass | Kind::Clayton { shapes: None, .. })
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        match &self.kind {
            Kind::UnitPointMass => 1.0,
            Kind::Clayton { a, shapes: None } => *a,
            Kind::Clayton { a, shapes: Some((g1, g2)) } => {
                let x = g1.sample(rng);
                let y = g2.sample(rng);
                a * x / (x + y)
            }
            Kind::Erlang => (0..self.d.get()).map(|_| rng.exp1()).sum(),
            Kind::Table(t) => t.quantile(rng.uniform()),
        }
    }

    pub fn generator_value(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match &self.kind {
            Kind::UnitPointMass => positive_part(1.0 - x).powi(self.d.get() as i32 - 1),
            Kind::Clayton { a, .. } => positive_part(1.0 - x / a).powf(*a),
            Kind::Erlang => (-x).exp(),
            Kind::Table(t) => t.williamson(x, self.d.get()),
        }
    }
}

impl Generator for RadialLaw {
    fn value(&self, x: f64) -> f64 {
        self.generator_value(x)
    }

    fn dimension(&self) -> Dimension {
        self.d
    }
}

#[inline]
fn positive_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

pub fn sample_radial(law: &RadialLaw, rng: &mut RngStream) -> f64 {
    law.sample(rng)
}

pub fn generator_value(law: &RadialLaw, x: f64) -> f64 {
    law.generator_value(x)
}

/// Distribution function of the strict Clayton radial variable, supported on `[0, a]`.
pub fn clayton_radial_cdf(a: f64, d: Dimension, x: f64) -> Result<f64> {
    let dd = d.get();
    let min = (dd - 1) as f64;
    if !(a.is_finite() && a >= min) {
        return Err(Error::Clayton { a, min });
    }
    if x.is_nan() {
        return Err(Error::Config("x is NaN".into()));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x >= a {
        return Ok(1.0);
    }
    let t = x / a;
    let mut coef = 1.0; // a (a-1) ... (a-k+1) / k!
    let mut tail = 0.0;
    for k in 0..dd {
        if k > 0 {
            coef *= (a - (k - 1) as f64) / k as f64;
        }
        tail += coef * t.powi(k as i32) * (1.0 - t).powf(a - k as f64);
    }
    Ok((1.0 - tail).clamp(0.0, 1.0))
}

/// Monte Carlo check of the Williamson transform of a radial law against its closed form.
#[derive(Debug, Clone, Serialize)]
pub struct WilliamsonResidual {
    /// Largest `|mean - phi(x)|` over the grid.
    pub max_residual: f64,
    /// Largest residual in units of its Monte Carlo standard error (0 when the error is 0).
    pub max_z: f64,
    pub points: Vec<WilliamsonPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WilliamsonPoint {
    pub x: f64,
    pub estimate: f64,
    pub exact: f64,
    pub std_err: f64,
}

pub fn williamson_residual(
    law: &RadialLaw,
    x_grid: &[f64],
    n: usize,
    rng: &mut RngStream,
) -> Result<WilliamsonResidual> {
    if n == 0 {
        return Err(Error::EmptyBatch);
    }
    let e = law.d.get() as i32 - 1;
    let draws: Vec<f64> =
        if law.is_degenerate() { vec![law.sample(rng)] } else { (0..n).map(|_| law.sample(rng)).collect() };
    let m = draws.len() as f64;
    let mut points = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let vals = draws.iter().map(|&r| positive_part(1.0 - x / r).powi(e));
        let (s, s2) = vals.fold((0.0, 0.0), |(s, s2), v| (s + v, s2 + v * v));
        let mean = s / m;
        let var = if draws.len() > 1 { ((s2 - s * s / m) / (m - 1.0)).max(0.0) } else { 0.0 };
        points.push(WilliamsonPoint { x, estimate: mean, exact: law.generator_value(x), std_err: (var / m).sqrt() });
    }
    let max_residual = points.iter().map(|p| (p.estimate - p.exact).abs()).fold(0.0, f64::max);
    let max_z = points
        .iter()
        .map(|p| {
            let r = (p.estimate - p.exact).abs();
            if r == 0.0 {
                0.0
            } else if p.std_err == 0.0 {
                f64::INFINITY
            } else {
                r / p.std_err
            }
        })
        .fold(0.0, f64::max);
    Ok(WilliamsonResidual { max_residual, max_z, points })
}

/// Command-line radial specification: `unit`, `clayton:A`, `erlang` or `table:PATH`.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialSpec {
    Unit,
    Clayton(f64),
    Erlang,
    Table(String),
}

impl FromStr for RadialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("unit", None) => Ok(RadialSpec::Unit),
            ("erlang", None) => Ok(RadialSpec::Erlang),
            ("clayton", Some(a)) => a
                .parse::<f64>()
                .map(RadialSpec::Clayton)
                .map_err(|_| Error::Config(format!("bad Clayton parameter `{a}`"))),
            ("table", Some(path)) if !path.is_empty() => Ok(RadialSpec::Table(path.to_string())),
            _ => Err(Error::Config(format!("unknown radial spec `{s}`"))),
        }
    }
}

impl fmt::Display for RadialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialSpec::Unit => write!(f, "unit"),
            RadialSpec::Clayton(a) => write!(f, "clayton:{a}"),
            RadialSpec::Erlang => write!(f, "erlang"),
            RadialSpec::Table(p) => write!(f, "table:{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn closed_form_generators() {
        assert!((RadialLaw::unit(dim(3)).generator_value(0.5) - 0.25).abs() < 1e-15);
        let c = RadialLaw::clayton(1.75, dim(2)).unwrap();
        assert_eq!(c.generator_value(1.75), 0.0);
        assert_eq!(c.generator_value(0.0), 1.0);
        assert_eq!(c.generator_value(3.0), 0.0);
        assert!((RadialLaw::erlang(dim(4)).generator_value(1.0) - (-1f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn clayton_domain() {
        assert!(matches!(RadialLaw::clayton(1.5, dim(3)), Err(Error::Clayton { .. })));
        let deg = RadialLaw::clayton(2.0, dim(3)).unwrap();
        assert!(deg.is_degenerate());
        let mut rng = RngStream::new(1, 0);
        assert_eq!(deg.sample(&mut rng), 2.0);
    }

    #[test]
    fn clayton_cdf_endpoints_and_monotone() {
        for (a, d) in [(1.75, 2), (3.5, 3), (4.0, 4)] {
            let d = dim(d);
            assert_eq!(clayton_radial_cdf(a, d, 0.0).unwrap(), 0.0);
            assert_eq!(clayton_radial_cdf(a, d, a).unwrap(), 1.0);
            let mut prev = 0.0;
            for i in 0..=100 {
                let v = clayton_radial_cdf(a, d, a * i as f64 / 100.0).unwrap();
                assert!(v >= prev - 1e-15);
                prev = v;
            }
        }
        assert_eq!(clayton_radial_cdf(1.75, dim(2), 2.0).unwrap(), 1.0);
        assert_eq!(clayton_radial_cdf(1.75, dim(2), -0.1).unwrap(), 0.0);
        assert!(clayton_radial_cdf(1.75, dim(2), f64::NAN).is_err());
        assert!(clayton_radial_cdf(0.5, dim(2), 0.1).is_err());
    }

    #[test]
    fn clayton_cdf_degenerates_to_step() {
        let d = dim(4);
        for x in [0.0, 1.0, 2.5, 2.999] {
            assert!(clayton_radial_cdf(3.0, d, x).unwrap().abs() < 1e-12);
        }
        assert_eq!(clayton_radial_cdf(3.0, d, 3.0).unwrap(), 1.0);
    }

    #[test]
    fn table_quantile_interpolation_and_clamping() {
        let t = QuantileTable::new(vec![(0.1, 1.0), (0.5, 2.0), (0.9, 4.0)]).unwrap();
        assert_eq!(t.quantile(0.05), 1.0);
        assert_eq!(t.quantile(0.95), 4.0);
        assert!((t.quantile(0.3) - 1.5).abs() < 1e-15);
        assert!((t.quantile(0.7) - 3.0).abs() < 1e-15);
        assert!(QuantileTable::new(vec![(0.1, 1.0)]).is_err());
        assert!(QuantileTable::new(vec![(0.1, 1.0), (0.1, 2.0)]).is_err());
        assert!(QuantileTable::new(vec![(0.1, 2.0), (0.2, 1.0)]).is_err());
        assert!(QuantileTable::new(vec![(0.1, 0.0), (0.2, 1.0)]).is_err());
    }

    #[test]
    fn table_generator_matches_exact_law() {
        // R uniform on [1, 3]: E[(1 - x/R)_+] for d = 2 and x <= 1 is 1 - x ln(3) / 2.
        let t = QuantileTable::new(vec![(0.0, 1.0), (1.0, 3.0)]).unwrap();
        let law = RadialLaw::table(t, dim(2));
        for x in [0.0, 0.3, 0.8, 1.0] {
            let want = 1.0 - x * 3f64.ln() / 2.0;
            assert!((law.generator_value(x) - want).abs() < 1e-10, "{x}");
        }
        // For x in (1, 3): (1/2) * int_x^3 (1 - x/r) dr.
        let x: f64 = 2.0;
        let want = 0.5 * ((3.0 - x) - x * (3.0 / x).ln());
        assert!((law.generator_value(x) - want).abs() < 1e-10);
        assert_eq!(law.generator_value(3.5), 0.0);
    }

    #[test]
    fn table_csv_parsing() {
        let t = QuantileTable::from_csv_str("q,u\n1.0,0.0\n2.0,0.5\n3.5,1.0\n").unwrap();
        assert!((t.quantile(0.25) - 1.5).abs() < 1e-15);
        assert!(QuantileTable::from_csv_str("").is_err());
        assert!(QuantileTable::from_csv_str("u,x\n0.1,1\n").is_err());
        assert!(QuantileTable::from_csv_str("u,q\n0.1,abc\n0.2,2\n").is_err());
    }

    #[test]
    fn spec_strings() {
        assert_eq!("unit".parse::<RadialSpec>().unwrap(), RadialSpec::Unit);
        assert_eq!("erlang".parse::<RadialSpec>().unwrap(), RadialSpec::Erlang);
        assert_eq!("clayton:1.75".parse::<RadialSpec>().unwrap(), RadialSpec::Clayton(1.75));
        assert_eq!("table:r.csv".parse::<RadialSpec>().unwrap(), RadialSpec::Table("r.csv".into()));
        for bad in ["clayton", "clayton:x", "unit:1", "gauss", "table:"] {
            assert!(bad.parse::<RadialSpec>().is_err(), "{bad}");
        }
        assert_eq!(RadialSpec::Clayton(1.75).to_string(), "clayton:1.75");
    }

    #[test]
    fn unit_williamson_residual_is_zero() {
        let grid: Vec<f64> = (0..20).map(|i| i as f64 / 10.0).collect();
        let res = williamson_residual(&RadialLaw::unit(dim(3)), &grid, 1000, &mut RngStream::new(0, 0)).unwrap();
        assert_eq!(res.max_residual, 0.0);
        assert_eq!(res.max_z, 0.0);
    }

    #[test]
    fn erlang_mean() {
        let law = RadialLaw::erlang(dim(3));
        let mut rng = RngStream::new(4, 4);
        let n = 100_000;
        let mean = (0..n).map(|_| law.sample(&mut rng)).sum::<f64>() / n as f64;
        // Erlang-3 has variance 3.
        assert!((mean - 3.0).abs() < 4.0 * (3.0 / n as f64).sqrt());
    }
}
