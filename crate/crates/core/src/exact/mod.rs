//! Exact rational arithmetic and the "radical rational" function class
//! z^s · P(z²) · (1 − 4z²)^(e/2).
//!
//! Polynomials are stored in u = z²; the single parity bit `s` carries
//! oddness in z.

mod radical;

pub use num_rational::BigRational;
pub use radical::{RadicalSum, RadicalTerm};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Generalized binomial coefficient C(a, j) for rational a.
pub fn binomial(a: &BigRational, j: usize) -> BigRational {
    let mut c = BigRational::one();
    for i in 0..j {
        c = c * (a - int(i as i64)) / int(i as i64 + 1);
    }
    c
}

/// Polynomial in u with exact rational coefficients, lowest degree first.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// c · u^k
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest k with u^k dividing the polynomial (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by u^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Divide by u^k, dropping the low coefficients (caller checks divisibility).
    pub fn unshift(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// dP/du
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, u: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * u + c)
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + to_f64(c))
    }

    /// P(a + b·t) as a polynomial in t.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Self {
        let lin = UPoly::new(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, c| {
            &(&acc * &lin) + &UPoly::constant(c.clone())
        })
    }

    /// (1 − 4u)^k
    pub fn one_minus_4u_pow(k: usize) -> Self {
        let base = UPoly::from_ints(&[1, -4]);
        (0..k).fold(UPoly::one(), |acc, _| &acc * &base)
    }

    /// P / (1 − 4u) when the division is exact.
    pub fn div_one_minus_4u(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let quarter = rat(1, 4);
        if !self.eval(&quarter).is_zero() {
            return None;
        }
        // synthetic division by (u − 1/4), then multiply by −1/4
        let n = self.coeffs.len();
        let mut q = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + &carry * &quarter;
            q[i - 1] = carry.clone();
        }
        Some(UPoly::new(q).scale(&rat(-1, 4)))
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        &self - &rhs
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}

fn write_coeff_times(f: &mut fmt::Formatter<'_>, c: &BigRational, var: &str) -> fmt::Result {
    if var.is_empty() {
        return write!(f, "{c}");
    }
    if c.is_one() {
        write!(f, "{var}")
    } else if c.is_integer() {
        write!(f, "{c}{var}")
    } else {
        write!(f, "({c}){var}")
    }
}

/// Renders as e.g. `1 + 37u + 118u^2 + 27u^3`.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_coeff_times(f, &c.abs(), &var)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = UPoly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.coeffs().len(), 1);
        assert!(UPoly::new(vec![int(0)]).is_zero());
        assert_eq!(UPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = UPoly::from_ints(&[1, 1]);
        let b = UPoly::from_ints(&[1, -1]);
        assert_eq!(&a * &b, UPoly::from_ints(&[1, 0, -1]));
        assert_eq!(&a + &b, UPoly::from_ints(&[2]));
        assert!((&a - &a).is_zero());
        assert_eq!(
            UPoly::from_ints(&[3, 2, 1]).derivative(),
            UPoly::from_ints(&[2, 2])
        );
    }

    #[test]
    fn rational_sum_is_reduced() {
        let s = rat(1, 6) + rat(1, 3);
        assert_eq!(s, rat(1, 2));
        assert_eq!(*s.denom(), BigInt::from(2));
        // cross multiplication check
        let (a, b, c, d) = (7i64, 12i64, -5i64, 18i64);
        let r = rat(a, b) + rat(c, d);
        assert_eq!(
            r.numer() * BigInt::from(b * d),
            r.denom() * BigInt::from(a * d + c * b)
        );
    }

    #[test]
    fn compose_and_divide() {
        // P(u) = u, P((1 - v)/4) = 1/4 - v/4
        let p = UPoly::from_ints(&[0, 1]);
        let q = p.compose_affine(&rat(1, 4), &rat(-1, 4));
        assert_eq!(q, UPoly::new(vec![rat(1, 4), rat(-1, 4)]));
        let m = &UPoly::from_ints(&[2, 3]) * &UPoly::from_ints(&[1, -4]);
        assert_eq!(m.div_one_minus_4u().unwrap(), UPoly::from_ints(&[2, 3]));
        assert!(UPoly::from_ints(&[1, 1]).div_one_minus_4u().is_none());
        assert_eq!(UPoly::one_minus_4u_pow(2), UPoly::from_ints(&[1, -8, 16]));
    }

    #[test]
    fn binomial_series_coefficients() {
        // (1-4u)^(-1/2) = Σ C(2j, j) u^j
        let a = rat(-1, 2);
        let c: Vec<BigRational> = (0..5)
            .map(|j| binomial(&a, j) * int(-4).pow(j as i32))
            .collect();
        assert_eq!(c, vec![int(1), int(2), int(6), int(20), int(70)]);
    }

    #[test]
    fn display() {
        assert_eq!(
            UPoly::from_ints(&[1, 37, 118, 27]).to_string(),
            "1 + 37u + 118u^2 + 27u^3"
        );
        assert_eq!(UPoly::from_ints(&[1, -8]).to_string(), "1 - 8u");
        assert_eq!(
            UPoly::new(vec![rat(-1, 2), int(0), rat(3, 4)]).to_string(),
            "-1/2 + (3/4)u^2"
        );
        assert_eq!(UPoly::zero().to_string(), "0");
    }
}
