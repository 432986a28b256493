//! Exact rational evaluation of the coefficient recursion for rational `p = num / den`.
//!
//! Used as a test oracle for the floating-point table: every entry is a rational with
//! denominator dividing `(k - 1)! * num^(k - 1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn exact_coefficient_rows(d: usize, p_num: u64, p_den: u64) -> Result<Vec<Vec<BigRational>>> {
    if d < 2 {
        return Err(Error::Dimension(d));
    }
    if p_den == 0 || p_num < p_den {
        return Err(Error::Power(p_num as f64 / p_den as f64));
    }
    let theta = BigRational::new(BigInt::from(p_den), BigInt::from(p_num));
    let one = BigRational::from_integer(BigInt::from(1));
    let mut rows: Vec<Vec<BigRational>> = vec![vec![one.clone()]];
    for k in 2..=d {
        let prev = &rows[k - 2];
        let km1 = BigInt::from(k - 1);
        let row = (1..=k)
            .map(|i| {
                let mut a = BigRational::zero();
                if i < k {
                    let f = &theta * BigRational::new(BigInt::from(k - i), km1.clone());
                    a += &prev[i - 1] * f;
                }
                if i > 1 {
                    let f = &one - &theta * BigRational::new(BigInt::from(k - i + 1), km1.clone());
                    a += &prev[i - 2] * f;
                }
                a
            })
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// Converts exact rows to the nearest doubles.
pub fn to_f64_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<f64>> {
    rows.iter().map(|r| r.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect()).collect()
}
