//! Coefficient recursion and beta-mixture representation of the mixing variable.
//!
//! For level `k` in `1..=d`, the law `F_d^k` is the finite mixture
//! `sum_i a[k][i] * Beta(k + 1 - i, d - k - 1 + i)`, where the convention `Beta(m, 0)` denotes
//! the unit point mass. The weights come from a triangular recursion that depends on `p` only.

pub mod exact;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Dimension, PowerParam};

const CLAMP_FLOOR: f64 = -1e-15;
const QUANTILE_TOL: f64 = 1e-12;

/// Triangular array `a[k][i]`, `1 <= i <= k <= d`, stored zero-based as `rows[k - 1][i - 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientTable {
    d: Dimension,
    p: f64,
    rows: Vec<Vec<f64>>,
}

impl CoefficientTable {
    pub fn dimension(&self) -> Dimension {
        self.d
    }

    pub fn power(&self) -> PowerParam {
        PowerParam::new(self.p).expect("validated at construction")
    }

    /// Row `k` (one-based), i.e. `(a[k][1], ..., a[k][k])`.
    pub fn row(&self, k: usize) -> Result<&[f64]> {
        if k == 0 || k > self.d.get() {
            return Err(Error::Level { k, d: self.d.get() });
        }
        Ok(&self.rows[k - 1])
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Mass of the atom at one in `F_d^d`, equal to `p^-(d-1)`.
    pub fn atom_mass(&self) -> f64 {
        self.rows[self.d.get() - 1][0]
    }
}

/// Runs the coefficient recursion up to level `d` with boundary values `a[k-1][0] = a[k-1][k] = 0`.
pub fn coefficient_table(d: Dimension, p: PowerParam) -> CoefficientTable {
    let theta = p.theta();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(d.get());
    rows.push(vec![1.0]);
    for k in 2..=d.get() {
        let prev = &rows[k - 2];
        let km1 = (k - 1) as f64;
        let row: Vec<f64> = (1..=k)
            .map(|i| {
                let stay = if i < k { prev[i - 1] * theta * (k - i) as f64 / km1 } else { 0.0 };
                let shift = if i > 1 { prev[i - 2] * (1.0 - theta * (k - i + 1) as f64 / km1) } else { 0.0 };
                let a = stay + shift;
                if (CLAMP_FLOOR..0.0).contains(&a) {
                    0.0
                } else {
                    a
                }
            })
            .collect();
        rows.push(row);
    }
    CoefficientTable { d, p: p.p(), rows }
}

/// One beta law `Beta(m, n)` with its mixture weight; `n == 0` is the unit point mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaComponent {
    pub m: u32,
    pub n: u32,
    pub weight: f64,
}

impl BetaComponent {
    #[inline]
    pub fn is_atom(&self) -> bool {
        self.n == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaMixture {
    d: Dimension,
    k: usize,
    components: Vec<BetaComponent>,
}

impl BetaMixture {
    pub fn components(&self) -> &[BetaComponent] {
        &self.components
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn dimension(&self) -> Dimension {
        self.d
    }

    /// Weight of the point mass at one, read off the `n == 0` component.
    pub fn atom_mass(&self) -> f64 {
        self.components.iter().filter(|c| c.is_atom()).map(|c| c.weight).sum()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let s: f64 = self
            .components
            .iter()
            .filter(|c| c.weight != 0.0)
            .map(|c| c.weight * beta_cdf_unchecked(c.m, c.n, x))
            .sum();
        s.clamp(0.0, 1.0)
    }

    /// CDF of the absolutely continuous part, renormalized to total mass one.
    /// Returns `None` when the mixture is a pure atom.
    pub fn continuous_cdf(&self, x: f64) -> Option<f64> {
        let mass = 1.0 - self.atom_mass();
        if mass <= 0.0 {
            return None;
        }
        if x >= 1.0 {
            return Some(1.0);
        }
        if x <= 0.0 {
            return Some(0.0);
        }
        let s: f64 = self
            .components
            .iter()
            .filter(|c| !c.is_atom() && c.weight != 0.0)
            .map(|c| c.weight * beta_cdf_unchecked(c.m, c.n, x))
            .sum();
        Some((s / mass).clamp(0.0, 1.0))
    }

    /// Weighted density of the continuous components (not renormalized).
    pub fn continuous_density(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        self.components
            .iter()
            .filter(|c| !c.is_atom() && c.weight != 0.0)
            .map(|c| c.weight * beta_density(c.m, c.n, x))
            .sum()
    }

    /// Same as [`Self::continuous_density`] with normalizing constants computed once.
    pub fn continuous_density_fn(&self) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
        let terms: Vec<(f64, f64, f64)> = self
            .components
            .iter()
            .filter(|c| !c.is_atom() && c.weight != 0.0)
            .map(|c| {
                let (mu, nu) = (c.m as usize, c.n as usize);
                let lf = ln_factorials(mu + nu - 1);
                let ln_w = c.weight.ln() + lf[mu + nu - 1] - lf[mu - 1] - lf[nu - 1];
                (ln_w, (mu - 1) as f64, (nu - 1) as f64)
            })
            .collect();
        move |x: f64| {
            if x <= 0.0 || x >= 1.0 {
                return 0.0;
            }
            let (lx, l1x) = (x.ln(), (-x).ln_1p());
            terms.iter().map(|&(ln_w, a, b)| (ln_w + a * lx + b * l1x).exp()).sum()
        }
    }

    /// Generalized inverse `inf { x : cdf(x) >= u }` by bisection.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Probability(u));
        }
        if u >= 1.0 - self.atom_mass() {
            return Ok(1.0);
        }
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        while hi - lo > QUANTILE_TOL {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) >= u {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// The beta mixture `F_d^k` for level `k`.
pub fn mixture_for_level(table: &CoefficientTable, k: usize) -> Result<BetaMixture> {
    let d = table.dimension();
    let row = table.row(k)?;
    let dd = d.get();
    let components = row
        .iter()
        .enumerate()
        .map(|(idx, &weight)| {
            let i = idx + 1;
            BetaComponent { m: (k + 1 - i) as u32, n: (dd + i - k - 1) as u32, weight }
        })
        .collect();
    Ok(BetaMixture { d, k, components })
}

pub fn mixture_cdf(mix: &BetaMixture, x: f64) -> f64 {
    mix.cdf(x)
}

pub fn mixture_quantile(mix: &BetaMixture, u: f64) -> Result<f64> {
    mix.quantile(u)
}

/// `ln(j!)` for `j = 0..=n`.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for j in 1..=n {
        acc += (j as f64).ln();
        out.push(acc);
    }
    out
}

fn check_shape(m: u32, n: u32) -> Result<()> {
    if m < 1 {
        return Err(Error::Shape { m: m as i64, n: n as i64 });
    }
    Ok(())
}

/// CDF of `Beta(m, n)` for integer shapes via the finite-sum closed form; `n == 0` is the
/// indicator of `x >= 1`.
pub fn beta_cdf(m: u32, n: u32, x: f64) -> Result<f64> {
    check_shape(m, n)?;
    Ok(beta_cdf_unchecked(m, n, x))
}

fn beta_cdf_unchecked(m: u32, n: u32, x: f64) -> f64 {
    if x >= 1.0 {
        return 1.0;
    }
    if x <= 0.0 || n == 0 {
        return 0.0;
    }
    let (m, n) = (m as usize, n as usize);
    let lf = ln_factorials(m + n - 1);
    let (lx, l1x) = (x.ln(), (-x).ln_1p());
    // Each term is exp(ln((m+n-1)!) - ln((m+j)!) - ln((n-1-j)!) + (m+j) ln x + (n-1-j) ln(1-x)).
    let s: f64 = (0..n)
        .map(|j| {
            let e = lf[m + n - 1] - lf[m + j] - lf[n - 1 - j] + (m + j) as f64 * lx + (n - 1 - j) as f64 * l1x;
            e.exp()
        })
        .sum();
    s.clamp(0.0, 1.0)
}

/// Density of `Beta(m, n)` for `m, n >= 1`, zero outside `(0, 1)`.
pub fn beta_density(m: u32, n: u32, x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 || n == 0 || m == 0 {
        return 0.0;
    }
    let (mu, nu) = (m as usize, n as usize);
    let lf = ln_factorials(mu + nu - 1);
    let ln_norm = lf[mu + nu - 1] - lf[mu - 1] - lf[nu - 1];
    (ln_norm + (mu - 1) as f64 * x.ln() + (nu - 1) as f64 * (-x).ln_1p()).exp()
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, j| acc * (n - k + j) as f64 / j as f64)
}

/// Residuals of the two shape-shifting identities
/// `B(m+1, n-1) - B(m, n) = -C(m+n-1, m) x^m (1-x)^(n-1)` and
/// `B(m, n-1) - B(m, n) = -C(m+n-2, m-1) x^m (1-x)^(n-1)`.
pub fn beta_identity_residuals(m: u32, n: u32, x: f64) -> Result<(f64, f64)> {
    if m < 1 || n < 1 {
        return Err(Error::Shape { m: m as i64, n: n as i64 });
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Probability(x));
    }
    let base = beta_cdf_unchecked(m, n, x);
    let mono = x.powi(m as i32) * (1.0 - x).powi(n as i32 - 1);
    let first = beta_cdf_unchecked(m + 1, n - 1, x) - base + binomial(m + n - 1, m) * mono;
    let second = beta_cdf_unchecked(m, n - 1, x) - base + binomial(m + n - 2, m - 1) * mono;
    Ok((first.abs(), second.abs()))
}
