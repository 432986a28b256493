//! Frequency tests and rank correlation used by the Monte Carlo checks.

use serde::Serialize;

/// Outcome of comparing an observed frequency with a target probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyCheck {
    pub hits: usize,
    pub n: usize,
    pub expected: f64,
    pub frequency: f64,
    pub sigma: f64,
    /// `|frequency - expected| / sigma`; zero on exact agreement, infinite if `sigma == 0` otherwise.
    pub z: f64,
}

impl FrequencyCheck {
    pub fn new(hits: usize, n: usize, expected: f64) -> Self {
        let frequency = hits as f64 / n as f64;
        let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
        let diff = (frequency - expected).abs();
        let z = if diff == 0.0 {
            0.0
        } else if sigma == 0.0 {
            f64::INFINITY
        } else {
            diff / sigma
        };
        FrequencyCheck { hits, n, expected, frequency, sigma, z }
    }

    pub fn within(&self, k_sigma: f64) -> bool {
        self.z <= k_sigma
    }
}

/// Kendall's tau-b by exhaustive pair comparison.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "paired samples required");
    let n = x.len();
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut tie_x, mut tie_y) = (0i64, 0i64);
    for i in 0..n {
        let (xi, yi) = (x[i], y[i]);
        for j in i + 1..n {
            let dx = xi - x[j];
            let dy = yi - y[j];
            if dx == 0.0 && dy == 0.0 {
                continue;
            }
            if dx == 0.0 {
                tie_x += 1;
            } else if dy == 0.0 {
                tie_y += 1;
            } else if (dx > 0.0) == (dy > 0.0) {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let nx = (concordant + discordant + tie_y) as f64;
    let ny = (concordant + discordant + tie_x) as f64;
    if nx == 0.0 || ny == 0.0 {
        return 0.0;
    }
    (concordant - discordant) as f64 / (nx * ny).sqrt()
}

/// Sample mean and standard error of the mean.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_z_scores() {
        let f = FrequencyCheck::new(250, 1000, 0.25);
        assert_eq!(f.z, 0.0);
        assert!(f.within(4.0));
        let f = FrequencyCheck::new(1000, 1000, 1.0);
        assert_eq!(f.z, 0.0);
        let f = FrequencyCheck::new(999, 1000, 1.0);
        assert!(f.z.is_infinite() && !f.within(4.0));
        let f = FrequencyCheck::new(300, 1000, 0.25);
        assert!((f.z - 0.05 / (0.1875f64 / 1000.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kendall_extremes() {
        let x: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| v * v).collect();
        let z: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(kendall_tau(&x, &y), 1.0);
        assert_eq!(kendall_tau(&x, &z), -1.0);
    }

    #[test]
    fn kendall_small_hand_case() {
        // Pairs: (1,2) (2,1) (3,3): concordant 2, discordant 1 -> tau = 1/3.
        let t = kendall_tau(&[1.0, 2.0, 3.0], &[2.0, 1.0, 3.0]);
        assert!((t - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn mean_stderr() {
        let (m, se) = mean_and_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }
}
