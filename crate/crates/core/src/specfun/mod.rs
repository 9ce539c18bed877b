//! Real-valued special-function kernel: gamma family, double factorial and
//! Bessel functions of the first kind.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;

pub use bessel::{bessel_j, bessel_j_array, bessel_j_series, SeriesValue};
#[allow(unused_imports)]
pub(crate) use gamma::sin_pi;
pub use gamma::{gamma_fn, ln_gamma, recip_gamma, GAMMA_MAX_ARG};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::BigRational;

/// Truncation policy shared by every infinite sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccuracyBudget {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            max_terms: 10_000,
        }
    }
}

impl AccuracyBudget {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        let b = Self { rel_tol, max_terms };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(domain(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(domain("max_terms must be at least 1"));
        }
        Ok(())
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }
}

/// n!! with (−1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(domain(format!("double factorial undefined for n = {n}")));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// (2n−1)!!/(2n)!!, which equals Γ(n+½)/(n!√π).
pub fn wallis_ratio(n: u32) -> BigRational {
    let n = i64::from(n);
    let num = double_factorial(2 * n - 1).expect("2n-1 >= -1");
    let den = double_factorial(2 * n).expect("2n >= 0");
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn budget_validation() {
        assert!(AccuracyBudget::new(0.0, 10).is_err());
        assert!(AccuracyBudget::new(1.0, 10).is_err());
        assert!(AccuracyBudget::new(1e-10, 0).is_err());
        assert!(AccuracyBudget::new(1e-10, 1).is_ok());
        let d = AccuracyBudget::default();
        assert_eq!((d.rel_tol, d.max_terms), (1e-13, 10_000));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(6).unwrap(), BigInt::from(48));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn wallis_values() {
        assert_eq!(wallis_ratio(0), BigRational::one());
        assert_eq!(wallis_ratio(1), BigRational::new(1.into(), 2.into()));
        assert_eq!(wallis_ratio(3), BigRational::new(5.into(), 16.into()));
    }

    #[test]
    fn wallis_matches_gamma_ratio() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        for n in 0..=20u32 {
            let w = wallis_ratio(n).to_f64().unwrap();
            let g =
                gamma_fn(n as f64 + 0.5).unwrap() / (gamma_fn(n as f64 + 1.0).unwrap() * sqrt_pi);
            assert!(((w - g) / g).abs() < 1e-12, "n={n}");
        }
    }
}
