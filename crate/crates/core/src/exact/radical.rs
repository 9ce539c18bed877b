use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{binomial, int, rat, BigRational, UPoly};
use crate::error::{domain, Error, Result};

/// z^parity · poly(u) · (1 − 4u)^(half_exp/2), with u = z².
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadicalTerm {
    parity: u8,
    poly: UPoly,
    half_exp: i64,
}

impl RadicalTerm {
    pub fn new(parity: u8, poly: UPoly, half_exp: i64) -> Result<Self> {
        if parity > 1 {
            return Err(Error::Parity(format!(
                "parity must be 0 or 1, got {parity}"
            )));
        }
        Ok(Self {
            parity,
            poly,
            half_exp,
        })
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    /// The exponent of (1 − 4u) is `half_exp / 2`.
    pub fn half_exp(&self) -> i64 {
        self.half_exp
    }

    fn eval(&self, z: f64) -> Result<f64> {
        let w = 1.0 - 4.0 * z * z;
        let e = self.half_exp;
        if (e < 0 && w <= 0.0) || (e % 2 != 0 && w < 0.0) {
            return Err(domain(format!(
                "|z| < 1/2 required for (1-4z^2)^({e}/2), got z = {z}"
            )));
        }
        let radical = if e % 2 == 0 {
            w.powi((e / 2) as i32)
        } else {
            w.sqrt().powi(e as i32)
        };
        let zs = if self.parity == 1 { z } else { 1.0 };
        Ok(zs * self.poly.eval_f64(z * z) * radical)
    }
}

/// Finite sum of [`RadicalTerm`]s kept in canonical form.
///
/// Terms sharing the parity bit and the parity of the half-exponent are
/// merged over the common (lowest) exponent, and factors of (1 − 4u) are
/// pulled out of the numerator. So the representation of a function is
/// unique, and structural equality is mathematical equality. In particular
/// there is at most one term per (parity, half_exp) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalSum {
    terms: Vec<RadicalTerm>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(0, UPoly::constant(c), 0).expect("parity 0")
    }

    /// A single term z^parity · poly · (1 − 4u)^(half_exp/2).
    pub fn term(parity: u8, poly: UPoly, half_exp: i64) -> Result<Self> {
        Ok(Self::from_terms(vec![RadicalTerm::new(
            parity, poly, half_exp,
        )?]))
    }

    pub fn from_terms(terms: Vec<RadicalTerm>) -> Self {
        Self {
            terms: normalize(terms),
        }
    }

    pub fn terms(&self) -> &[RadicalTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term is even in z.
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|t| t.parity == 0)
    }

    pub fn add(&self, other: &RadicalSum) -> RadicalSum {
        let mut v = self.terms.clone();
        v.extend(other.terms.iter().cloned());
        Self::from_terms(v)
    }

    pub fn neg(&self) -> RadicalSum {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> RadicalSum {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| RadicalTerm {
                    poly: t.poly.scale(c),
                    ..t.clone()
                })
                .collect(),
        )
    }

    /// Exact d/dz.
    pub fn derivative(&self) -> RadicalSum {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            let e = t.half_exp;
            let dp = t.poly.derivative();
            // z^(s-1) [s P + 2u P'] (1-4u)^(e/2)
            let inner = &t.poly.scale(&int(i64::from(t.parity))) + &dp.shift(1).scale(&int(2));
            // z^(s+1) (-4e) P (1-4u)^((e-2)/2)
            let outer = t.poly.scale(&int(-4 * e));
            if t.parity == 1 {
                out.push(RadicalTerm {
                    parity: 0,
                    poly: inner,
                    half_exp: e,
                });
                out.push(RadicalTerm {
                    parity: 0,
                    poly: outer.shift(1),
                    half_exp: e - 2,
                });
            } else {
                // s = 0: z^(-1)·2uP' = z·2P'
                out.push(RadicalTerm {
                    parity: 1,
                    poly: dp.scale(&int(2)),
                    half_exp: e,
                });
                out.push(RadicalTerm {
                    parity: 1,
                    poly: outer,
                    half_exp: e - 2,
                });
            }
        }
        Self::from_terms(out)
    }

    /// Exact ∫_0^z of an odd integrand.
    ///
    /// With u = w² and v = 1 − 4u each term integrates to powers of v. A
    /// vanishing exponent would need a logarithm; that case is rejected.
    pub fn integrate(&self) -> Result<RadicalSum> {
        if let Some(t) = self.terms.iter().find(|t| t.parity != 1) {
            return Err(Error::Parity(format!(
                "integrand term with half-exponent {} is even in z",
                t.half_exp
            )));
        }
        let mut out = Vec::new();
        for t in &self.terms {
            let e = t.half_exp;
            // P(u) with u = (1 - v)/4, as a polynomial in v
            let in_v = t.poly.compose_affine(&rat(1, 4), &rat(-1, 4));
            let mut d = Vec::with_capacity(in_v.coeffs().len());
            for (j, c) in in_v.coeffs().iter().enumerate() {
                let k = 2 * j as i64 + e + 2; // exponent of v is k/2
                if k == 0 {
                    return Err(Error::Structural(
                        "integral would produce a logarithmic term".into(),
                    ));
                }
                d.push(-c / int(4 * k));
            }
            let d = UPoly::new(d);
            let constant: BigRational = d.coeffs().iter().cloned().sum();
            // D(1 - 4u) (1-4u)^((e+2)/2) - D(1)
            out.push(RadicalTerm {
                parity: 0,
                poly: d.compose_affine(&int(1), &int(-4)),
                half_exp: e + 2,
            });
            out.push(RadicalTerm {
                parity: 0,
                poly: UPoly::constant(-constant),
                half_exp: 0,
            });
        }
        Ok(Self::from_terms(out))
    }

    /// Multiply every term by z^parity · poly · (1 − 4u)^(half_exp/2).
    pub fn mul_term(&self, parity: u8, poly: &UPoly, half_exp: i64) -> Result<RadicalSum> {
        if parity > 1 {
            return Err(Error::Parity(format!(
                "parity must be 0 or 1, got {parity}"
            )));
        }
        let out = self
            .terms
            .iter()
            .map(|t| {
                let s = t.parity + parity;
                let p = &t.poly * poly;
                let (s, p) = if s == 2 { (0, p.shift(1)) } else { (s, p) };
                RadicalTerm {
                    parity: s,
                    poly: p,
                    half_exp: t.half_exp + half_exp,
                }
            })
            .collect();
        Ok(Self::from_terms(out))
    }

    pub fn mul(&self, other: &RadicalSum) -> RadicalSum {
        let mut acc = RadicalSum::zero();
        for t in &other.terms {
            let part = self
                .mul_term(t.parity, &t.poly, t.half_exp)
                .expect("terms carry valid parity");
            acc = acc.add(&part);
        }
        acc
    }

    /// Floating-point value at z.
    pub fn eval(&self, z: f64) -> Result<f64> {
        self.terms
            .iter()
            .try_fold(0.0, |acc, t| Ok(acc + t.eval(z)?))
    }

    /// First `n_terms` Taylor coefficients in u of an even function.
    pub fn taylor(&self, n_terms: usize) -> Result<Vec<BigRational>> {
        if let Some(t) = self.terms.iter().find(|t| t.parity != 0) {
            return Err(Error::Parity(format!(
                "odd term (half-exponent {}) has no expansion in u",
                t.half_exp
            )));
        }
        let mut out = vec![BigRational::zero(); n_terms];
        for t in &self.terms {
            let a = rat(t.half_exp, 2);
            let mut four = BigRational::one();
            let series: Vec<BigRational> = (0..n_terms)
                .map(|j| {
                    let c = binomial(&a, j) * &four;
                    four *= int(-4);
                    c
                })
                .collect();
            for (i, p) in t.poly.coeffs().iter().enumerate().take(n_terms) {
                for (j, s) in series.iter().enumerate().take(n_terms - i) {
                    out[i + j] += p * s;
                }
            }
        }
        Ok(out)
    }
}

fn normalize(terms: Vec<RadicalTerm>) -> Vec<RadicalTerm> {
    let mut groups: BTreeMap<(u8, i64), Vec<RadicalTerm>> = BTreeMap::new();
    for t in terms.into_iter().filter(|t| !t.poly.is_zero()) {
        groups
            .entry((t.parity, t.half_exp.rem_euclid(2)))
            .or_default()
            .push(t);
    }
    let mut out = Vec::new();
    for ((parity, _), group) in groups {
        let e_min = group
            .iter()
            .map(|t| t.half_exp)
            .min()
            .expect("non-empty group");
        let mut poly = UPoly::zero();
        for t in &group {
            let lift = ((t.half_exp - e_min) / 2) as usize;
            poly = &poly + &(&t.poly * &UPoly::one_minus_4u_pow(lift));
        }
        let mut e = e_min;
        while !poly.is_zero() {
            match poly.div_one_minus_4u() {
                Some(q) => {
                    poly = q;
                    e += 2;
                }
                None => break,
            }
        }
        if !poly.is_zero() {
            out.push(RadicalTerm {
                parity,
                poly,
                half_exp: e,
            });
        }
    }
    out.sort_by_key(|t| (t.parity, t.half_exp));
    out
}

impl fmt::Display for RadicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.poly.valuation();
        let rest = self.poly.unshift(m);
        let zpow = 2 * m + self.parity as usize;
        let mut parts = Vec::new();
        match zpow {
            0 => {}
            1 => parts.push("z".to_string()),
            k => parts.push(format!("z^{k}")),
        }
        let e = self.half_exp;
        let trivial_poly = rest == UPoly::one() && (zpow > 0 || e != 0);
        if !trivial_poly {
            parts.push(format!("({rest})"));
        }
        if e != 0 {
            if e % 2 == 0 {
                parts.push(format!("(1-4u)^({})", e / 2));
            } else {
                parts.push(format!("(1-4u)^({e}/2)"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Renders e.g. `z^2*(1 + 37u + 118u^2 + 27u^3)*(1-4u)^(-13/2)`.
impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_q0() -> RadicalSum {
        RadicalSum::constant(rat(-1, 2))
            .add(&RadicalSum::term(0, UPoly::constant(rat(1, 2)), -1).unwrap())
    }

    #[test]
    fn add_identity_and_cancellation() {
        let f = k2_q0();
        assert_eq!(f.add(&RadicalSum::zero()), f);
        let g = RadicalSum::term(0, UPoly::one(), -1).unwrap();
        assert!(g.add(&g.neg()).is_zero());
        assert_eq!(f.terms().len(), 2);
    }

    #[test]
    fn derivative_examples() {
        assert!(RadicalSum::constant(rat(-1, 2)).derivative().is_zero());
        let z2 = RadicalSum::term(0, UPoly::from_ints(&[0, 1]), 0).unwrap();
        assert_eq!(
            z2.derivative(),
            RadicalSum::term(1, UPoly::from_ints(&[2]), 0).unwrap()
        );
        let half = RadicalSum::term(0, UPoly::constant(rat(1, 2)), -1).unwrap();
        assert_eq!(
            half.derivative(),
            RadicalSum::term(1, UPoly::from_ints(&[2]), -3).unwrap()
        );
    }

    #[test]
    fn integrate_examples() {
        assert!(RadicalSum::zero().integrate().unwrap().is_zero());
        let f = RadicalSum::term(1, UPoly::one(), -1).unwrap();
        let expected = RadicalSum::constant(rat(1, 4))
            .add(&RadicalSum::term(0, UPoly::constant(rat(-1, 4)), 1).unwrap());
        assert_eq!(f.integrate().unwrap(), expected);
        // z^3 -> z^4/4
        let z3 = RadicalSum::term(1, UPoly::from_ints(&[0, 1]), 0).unwrap();
        let z4 = RadicalSum::term(0, UPoly::new(vec![int(0), int(0), rat(1, 4)]), 0).unwrap();
        assert_eq!(z3.integrate().unwrap(), z4);
        assert!(matches!(k2_q0().integrate(), Err(Error::Parity(_))));
    }

    #[test]
    fn logarithmic_case_is_rejected() {
        // z (1-4u)^(-1) integrates to a logarithm
        let f = RadicalSum::term(1, UPoly::one(), -2).unwrap();
        assert!(matches!(f.integrate(), Err(Error::Structural(_))));
    }

    #[test]
    fn mul_term_examples() {
        let f = k2_q0();
        assert_eq!(f.mul_term(0, &UPoly::one(), 0).unwrap(), f);
        let z2 = RadicalSum::term(0, UPoly::from_ints(&[0, 1]), 0).unwrap();
        let p = z2.mul_term(0, &UPoly::from_ints(&[0, 1]), 0).unwrap();
        assert_eq!(
            p,
            RadicalSum::term(0, UPoly::from_ints(&[0, 0, 1]), 0).unwrap()
        );
        let z = RadicalSum::term(1, UPoly::one(), 0).unwrap();
        assert_eq!(
            z.mul_term(1, &UPoly::one(), 0).unwrap(),
            RadicalSum::term(0, UPoly::from_ints(&[0, 1]), 0).unwrap()
        );
        let r = RadicalSum::term(0, UPoly::one(), -1).unwrap();
        assert_eq!(
            r.mul_term(0, &UPoly::from_ints(&[0, 1]), -6).unwrap(),
            RadicalSum::term(0, UPoly::from_ints(&[0, 1]), -7).unwrap()
        );
    }

    #[test]
    fn eval_examples() {
        let f = k2_q0();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        assert!((f.eval(0.3).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(RadicalSum::zero().eval(0.7).unwrap(), 0.0);
        assert!(f.eval(0.5).is_err());
        assert!(f.eval(-0.6).is_err());
    }

    #[test]
    fn taylor_examples() {
        let r = RadicalSum::term(0, UPoly::one(), -1).unwrap();
        assert_eq!(r.taylor(3).unwrap(), vec![int(1), int(2), int(6)]);
        assert_eq!(k2_q0().taylor(3).unwrap()[1], int(1));
        assert_eq!(
            RadicalSum::constant(int(1)).taylor(3).unwrap(),
            vec![int(1), int(0), int(0)]
        );
        let odd = RadicalSum::term(1, UPoly::one(), 0).unwrap();
        assert!(odd.taylor(2).is_err());
    }

    #[test]
    fn canonical_form_merges_exponents() {
        // (1-4u)·(1-4u)^(-3/2) and (1-4u)^(-1/2) are the same function
        let a = RadicalSum::term(0, UPoly::from_ints(&[1, -4]), -3).unwrap();
        let b = RadicalSum::term(0, UPoly::one(), -1).unwrap();
        assert_eq!(a, b);
        let c = RadicalSum::term(0, UPoly::one(), -3)
            .unwrap()
            .add(&RadicalSum::term(0, UPoly::one(), -1).unwrap());
        assert_eq!(c.terms().len(), 1);
        assert_eq!(c.terms()[0].half_exp(), -3);
        assert_eq!(c.terms()[0].poly(), &UPoly::from_ints(&[2, -4]));
    }

    #[test]
    fn display() {
        let f = RadicalSum::term(0, UPoly::from_ints(&[0, 1, 37, 118, 27]), -13).unwrap();
        assert_eq!(
            f.to_string(),
            "z^2*(1 + 37u + 118u^2 + 27u^3)*(1-4u)^(-13/2)"
        );
        assert_eq!(k2_q0().to_string(), "(1/2)*(1-4u)^(-1/2) + (-1/2)");
        assert_eq!(RadicalSum::zero().to_string(), "0");
        assert_eq!(
            RadicalSum::term(1, UPoly::one(), 1).unwrap().to_string(),
            "z*(1-4u)^(1/2)"
        );
    }
}
