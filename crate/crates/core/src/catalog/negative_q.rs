//! Σ J_{2n}(2nz)/n^(2p) and Σ J_n²(nz)/n^(2p) as power series in z².

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{int, to_f64, BigRational, UPoly};
use crate::kahan::CompensatedSum;
use crate::specfun::{ln_gamma, wallis_ratio, AccuracyBudget};

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// b^e for integer e, exactly.
fn pow_rat(base: i64, e: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b, (-e) as usize).recip()
    }
}

fn ln_fact(k: u32) -> f64 {
    ln_gamma(f64::from(k) + 1.0).0
}

fn is_positive_integer(p: f64) -> bool {
    p >= 1.0 && p.fract() == 0.0 && p < f64::from(u32::MAX)
}

/// Coefficient of z^(2k) in Σ J_{2n}(2nz)/n^(2p):
/// Σ_{j=1..k} (−1)^(j+k) j^(2(k−p)) / ((k−j)!(k+j)!).
pub fn coeff_first_kind(p: u32, k: u32) -> Result<BigRational> {
    if k < 1 || k > p {
        return Err(domain(format!(
            "coefficient index k must lie in 1..={p}, got {k}"
        )));
    }
    Ok(first_kind_inner(p, k))
}

fn first_kind_inner(p: u32, k: u32) -> BigRational {
    let mut s = BigRational::zero();
    for j in 1..=k {
        let num = pow_rat(i64::from(j), 2 * (i64::from(k) - i64::from(p)));
        let den = factorial(k - j) * factorial(k + j);
        let t = num / BigRational::from_integer(den);
        if (j + k) % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

/// The terminating polynomial in u = z² for integer p.
pub fn first_kind_poly(p: u32) -> UPoly {
    let mut c = vec![BigRational::zero()];
    c.extend((1..=p).map(|k| first_kind_inner(p, k)));
    UPoly::new(c)
}

fn check_half_domain(z: f64) -> Result<()> {
    if z.abs() >= 0.5 || z.is_nan() {
        return Err(domain(format!("|z| < 1/2 required, got z = {z}")));
    }
    Ok(())
}

/// Σ_{k≥1} z^(2k) c_k with c_k from `inner`, stopped after three
/// consecutive terms below rel_tol·|partial|.
fn power_series(z: f64, budget: &AccuracyBudget, inner: impl Fn(u32) -> f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(0.0);
    }
    let ln_z2 = (z * z).ln();
    let mut sum = CompensatedSum::new();
    let mut quiet = 0;
    for k in 1..=budget.max_terms as u32 {
        let t = inner(k) * (f64::from(k) * ln_z2).exp();
        if !t.is_finite() {
            return Err(Error::NonFinite(i64::from(k)));
        }
        sum.add(t);
        if t.abs() <= budget.rel_tol * sum.value().abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum.value());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::BudgetExhausted {
        partial: sum.value(),
        terms: budget.max_terms,
    })
}

/// Σ_{n≥1} J_{2n}(2nz)/n^(2p).
///
/// Integer p uses the terminating polynomial; other p the rearranged
/// infinite power series, whose inner sums are formed in log space.
pub fn eval_first_kind(p: f64, z: f64, budget: &AccuracyBudget) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(domain(format!("p must be positive, got {p}")));
    }
    check_half_domain(z)?;
    if is_positive_integer(p) {
        return Ok(first_kind_poly(p as u32).eval_f64(z * z));
    }
    power_series(z, budget, |k| {
        let mut s = CompensatedSum::new();
        for j in 1..=k {
            let ln_mag =
                2.0 * (f64::from(k) - p) * f64::from(j).ln() - ln_fact(k - j) - ln_fact(k + j);
            let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
            s.add(sign * ln_mag.exp());
        }
        s.value()
    })
}

fn second_kind_inner_f64(p: f64, k: u32) -> f64 {
    let mut s = CompensatedSum::new();
    for j in 0..k {
        let ln_mag =
            2.0 * (f64::from(k) - p) * f64::from(k - j).ln() - ln_fact(j) - ln_fact(2 * k - j);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s.add(sign * ln_mag.exp());
    }
    let ln_wallis = ln_gamma(f64::from(k) + 0.5).0 - ln_fact(k) - 0.5 * std::f64::consts::PI.ln();
    ln_wallis.exp() * s.value()
}

/// Coefficient of z^(2k) in Σ J_n²(nz)/n^(2p):
/// [(2k−1)!!/(2k)!!] Σ_{j=0..k−1} (−1)^j (k−j)^(2(k−p)) / (j!(2k−j)!).
pub fn coeff_second_kind_neg(p: f64, k: u32) -> Result<f64> {
    if k < 1 {
        return Err(domain("coefficient index k must be at least 1"));
    }
    if is_positive_integer(p) {
        return Ok(to_f64(&coeff_second_kind_neg_exact(p as u32, k)?));
    }
    Ok(second_kind_inner_f64(p, k))
}

/// Exact coefficient for integer p; zero for every k > p.
pub fn coeff_second_kind_neg_exact(p: u32, k: u32) -> Result<BigRational> {
    if k < 1 {
        return Err(domain("coefficient index k must be at least 1"));
    }
    let mut s = BigRational::zero();
    for j in 0..k {
        let num = pow_rat(i64::from(k - j), 2 * (i64::from(k) - i64::from(p)));
        let t = num / BigRational::from_integer(factorial(j) * factorial(2 * k - j));
        if j % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    Ok(wallis_ratio(k) * s)
}

/// The terminating polynomial in u = z² for integer p.
pub fn second_kind_neg_poly(p: u32) -> UPoly {
    let mut c = vec![BigRational::zero()];
    c.extend((1..=p).map(|k| coeff_second_kind_neg_exact(p, k).expect("k >= 1")));
    UPoly::new(c)
}

/// Σ_{n≥1} J_n²(nz)/n^(2p).
///
/// Integer p terminates after p powers of z² and holds for |z| < 1. The
/// infinite series for other p is only used for |z| < 1/2.
pub fn eval_second_kind_neg(p: f64, z: f64, budget: &AccuracyBudget) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(domain(format!("p must be positive, got {p}")));
    }
    if is_positive_integer(p) {
        if z.abs() >= 1.0 || z.is_nan() {
            return Err(domain(format!("|z| < 1 required, got z = {z}")));
        }
        return Ok(second_kind_neg_poly(p as u32).eval_f64(z * z));
    }
    check_half_domain(z)?;
    power_series(z, budget, |k| second_kind_inner_f64(p, k))
}

/// The functions ξ_k(p), k = 2..5, whose zeros at p = 1..k−1 make the
/// integer-p series terminate.
pub fn xi(k: u32, p: f64) -> Result<f64> {
    let v = match k {
        2 => -1.0 / 16.0 + 4f64.powf(-(1.0 + p)),
        3 => (5.0 - 2f64.powf(7.0 - 2.0 * p) + 3f64.powf(5.0 - 2.0 * p)) / 768.0,
        4 => {
            (-7.0 + 2f64.powf(13.0 - 4.0 * p) + 7.0 * 2f64.powf(7.0 - 2.0 * p) - 9f64.powf(4.0 - p))
                / 18432.0
        }
        5 => {
            (42.0 - 2f64.powf(21.0 - 4.0 * p) - 3.0 * 2f64.powf(13.0 - 2.0 * p)
                + 5f64.powf(9.0 - 2.0 * p)
                + 9f64.powf(6.0 - p))
                / 2_949_120.0
        }
        _ => return Err(domain(format!("xi is defined for k in 2..=5, got {k}"))),
    };
    Ok(v)
}

/// ξ_k(p) for integer p, exactly.
pub fn xi_exact(k: u32, p: i64) -> Result<BigRational> {
    let v = match k {
        2 => -BigRational::new(1.into(), 16.into()) + pow_rat(4, -(1 + p)),
        3 => (int(5) - pow_rat(2, 7 - 2 * p) + pow_rat(3, 5 - 2 * p)) / int(768),
        4 => {
            (int(-7) + pow_rat(2, 13 - 4 * p) + int(7) * pow_rat(2, 7 - 2 * p) - pow_rat(9, 4 - p))
                / int(18432)
        }
        5 => {
            (int(42) - pow_rat(2, 21 - 4 * p) - int(3) * pow_rat(2, 13 - 2 * p)
                + pow_rat(5, 9 - 2 * p)
                + pow_rat(9, 6 - p))
                / int(2_949_120)
        }
        _ => return Err(domain(format!("xi is defined for k in 2..=5, got {k}"))),
    };
    Ok(v)
}

/// Checks (z d/dz)² S_p = 4(1 − z²) S_{p−1} exactly on the polynomials,
/// where S_p = Σ J_{2n}(2nz)/n^(2p).
pub fn verify_recurrence_eq43(p: u32) -> Result<bool> {
    if p < 2 {
        return Err(domain(format!("the recurrence needs p >= 2, got {p}")));
    }
    let s = first_kind_poly(p);
    // (z d/dz)² z^(2k) = 4k² z^(2k)
    let lhs = UPoly::new(
        s.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c * int(4 * (k * k) as i64))
            .collect(),
    );
    let rhs = &UPoly::from_ints(&[4, -4]) * &first_kind_poly(p - 1);
    Ok(lhs == rhs)
}
