use serde::Serialize;

use crate::error::{Error, Result};

/// Number of coordinates of the simulated vectors, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension(d));
        }
        Ok(Dimension(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

/// The norm exponent `p >= 1` together with its reciprocal `theta = 1/p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerParam {
    p: f64,
    #[serde(skip)]
    theta: f64,
}

impl PowerParam {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::Power(p));
        }
        Ok(PowerParam { p, theta: 1.0 / p })
    }

    #[inline]
    pub fn p(self) -> f64 {
        self.p
    }

    #[inline]
    pub fn theta(self) -> f64 {
        self.theta
    }

    /// `||x||_p`; exact sum of absolute values when `p == 1`.
    pub fn norm(self, x: &[f64]) -> f64 {
        if self.p == 1.0 {
            return x.iter().map(|v| v.abs()).sum();
        }
        let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return scale;
        }
        let s: f64 = x.iter().map(|v| (v.abs() / scale).powf(self.p)).sum();
        scale * s.powf(self.theta)
    }

    /// `x^theta`, exact for `p == 1`.
    #[inline]
    pub fn root(self, x: f64) -> f64 {
        if self.p == 1.0 {
            x
        } else {
            x.powf(self.theta)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(Dimension::new(1), Err(Error::Dimension(1)));
        assert_eq!(Dimension::new(0), Err(Error::Dimension(0)));
        assert_eq!(Dimension::new(2).unwrap().get(), 2);
    }

    #[test]
    fn power_domain() {
        assert!(PowerParam::new(0.999).is_err());
        assert!(PowerParam::new(f64::NAN).is_err());
        assert!(PowerParam::new(f64::INFINITY).is_err());
        for p in [1.0, 1.25, 2.0, 2.5, 4.0, 10.0] {
            let pp = PowerParam::new(p).unwrap();
            assert!((pp.theta() * pp.p() - 1.0).abs() <= f64::EPSILON);
            assert!(pp.theta() > 0.0 && pp.theta() <= 1.0);
        }
    }

    #[test]
    fn norms() {
        let two = PowerParam::new(2.0).unwrap();
        assert!((two.norm(&[0.3, 0.4]) - 0.5).abs() < 1e-15);
        let one = PowerParam::new(1.0).unwrap();
        assert_eq!(one.norm(&[0.25, 0.5]), 0.75);
        let p = PowerParam::new(2.5).unwrap();
        let expected = 0.5 * 2f64.powf(0.4);
        assert!((p.norm(&[0.5, 0.5]) - expected).abs() < 1e-15);
        assert_eq!(p.norm(&[0.0, 0.0]), 0.0);
    }
}
