//! K2(z, q) = Σ n^(2q) J_n²(2nz) for integer q ≥ 0, generated exactly.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{rat, BigRational, RadicalSum, UPoly};

fn binomial_int(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficient of z^(2n) in K2(z, q):
/// (1/(n!)²) Σ_{k=0..n} (−1)^k C(2n, k) (n−k)^(2(n+q)).
pub fn coeff_second_kind_pos(q: u32, n: u32) -> Result<BigRational> {
    if n < 1 {
        return Err(domain("coefficient index n must be at least 1"));
    }
    let mut s = BigInt::zero();
    for k in 0..=n {
        let t =
            binomial_int(2 * n, k) * num_traits::pow(BigInt::from(n - k), (2 * (n + q)) as usize);
        if k % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    let fact = (2..=n).fold(BigInt::one(), |acc, k| acc * k);
    Ok(BigRational::new(s, &fact * &fact))
}

/// K2(z, 0) = −1/2 + 1/(2√(1 − 4z²)).
pub fn k2_q0(z: f64) -> Result<f64> {
    if z.abs() >= 0.5 || z.is_nan() {
        return Err(domain(format!("|z| < 1/2 required, got z = {z}")));
    }
    Ok(-0.5 + 0.5 / (1.0 - 4.0 * z * z).sqrt())
}

/// One member of the K2(·, q) family in exact form.
#[derive(Debug, Clone, PartialEq)]
pub struct K2Family {
    q: u32,
    symbolic: RadicalSum,
    numerator: Option<UPoly>,
}

impl K2Family {
    /// K2(z, 0) as a radical sum.
    pub fn initial() -> Self {
        let half = RadicalSum::term(0, UPoly::constant(rat(1, 2)), -1).expect("parity 0");
        Self {
            q: 0,
            symbolic: RadicalSum::constant(rat(-1, 2)).add(&half),
            numerator: None,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn symbolic(&self) -> &RadicalSum {
        &self.symbolic
    }

    /// P_q with K2(z, q) = z² P_q(z²) (1 − 4z²)^(−(3q + 1/2)); absent for q = 0.
    pub fn numerator(&self) -> Option<&UPoly> {
        self.numerator.as_ref()
    }

    /// The exponent 3q + 1/2 of the denominator.
    pub fn radical_exponent(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(3 * self.q)) + rat(1, 2)
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        if z.abs() >= 0.5 || z.is_nan() {
            return Err(domain(format!("|z| < 1/2 required, got z = {z}")));
        }
        self.symbolic.eval(z)
    }
}

/// K2(·, q+1) from K2(·, q) through the integrated recurrence
///
/// K(q+1) = [z²/(4(1−4z²)) D² + z(1−8z²)/(4(1−4z²)²) D + 2z²(1+2z²)/(1−4z²)³] K(q)
///          − 4/√(1−4z²) ∫_0^z w(1+10w²+4w⁴)(1−4w²)^(−7/2) K(w, q) dw.
pub fn next_k2(f: &K2Family) -> Result<K2Family> {
    let k = &f.symbolic;
    if !k.is_even() {
        return Err(Error::Parity("K2 family members are even in z".into()));
    }
    let d1 = k.derivative();
    let d2 = d1.derivative();
    let bracket = d2
        .mul_term(0, &UPoly::new(vec![rat(0, 1), rat(1, 4)]), -2)?
        .add(&d1.mul_term(1, &UPoly::new(vec![rat(1, 4), rat(-2, 1)]), -4)?)
        .add(&k.mul_term(0, &UPoly::from_ints(&[0, 2, 4]), -6)?);
    let integral = k
        .mul_term(1, &UPoly::from_ints(&[1, 10, 4]), -7)?
        .integrate()?
        .mul_term(0, &UPoly::from_ints(&[-4]), -1)?;
    let next = bracket.add(&integral);

    let q = f.q + 1;
    let expected_exp = -(6 * i64::from(q) + 1);
    let [term] = next.terms() else {
        return Err(Error::Structural(format!(
            "K2(z, {q}) has {} radical terms, expected one: {next}",
            next.terms().len()
        )));
    };
    if term.parity() != 0 || term.half_exp() != expected_exp || term.poly().valuation() < 1 {
        return Err(Error::Structural(format!(
            "K2(z, {q}) is not of the form z^2 P(z^2)(1-4z^2)^({expected_exp}/2): {next}"
        )));
    }
    let numerator = term.poly().unshift(1);
    Ok(K2Family {
        q,
        numerator: Some(numerator),
        symbolic: next,
    })
}

/// Memoized chain K2(·, 0), K2(·, 1), ... extended on demand.
#[derive(Debug)]
pub struct K2Chain {
    families: RwLock<Vec<Arc<K2Family>>>,
}

impl Default for K2Chain {
    fn default() -> Self {
        Self::new()
    }
}

impl K2Chain {
    pub fn new() -> Self {
        Self {
            families: RwLock::new(vec![Arc::new(K2Family::initial())]),
        }
    }

    pub fn get(&self, q: u32) -> Result<Arc<K2Family>> {
        let q = q as usize;
        {
            let read = self.families.read().unwrap_or_else(|e| e.into_inner());
            if let Some(f) = read.get(q) {
                return Ok(Arc::clone(f));
            }
        }
        let mut write = self.families.write().unwrap_or_else(|e| e.into_inner());
        while write.len() <= q {
            let next = next_k2(write.last().expect("chain starts at q = 0"))?;
            write.push(Arc::new(next));
        }
        Ok(Arc::clone(&write[q]))
    }
}

/// K2(·, q) from the process-wide chain.
pub fn k2_family(q: u32) -> Result<Arc<K2Family>> {
    static CHAIN: OnceLock<K2Chain> = OnceLock::new();
    CHAIN.get_or_init(K2Chain::new).get(q)
}

/// K2(z, q) = z² P_q(z²) / (1 − 4z²)^(3q + 1/2).
pub fn eval_k2_pos(q: u32, z: f64) -> Result<f64> {
    if q == 0 {
        return k2_q0(z);
    }
    k2_family(q)?.eval(z)
}
