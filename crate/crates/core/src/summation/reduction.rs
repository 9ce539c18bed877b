//! Second-kind series with fn + g = Λ(cn + b) rewritten as
//! K2 = Σ_n B_n ((cn+b)/2)^((α+γ)n+β+ε) Q_n, B_n = a_n Λ^(γn+ε),
//! where Q_n is a single power series in (cn+b)/2.

use super::{sum_accelerated, EvalReport, Phases, SeriesKind, SeriesSpec};
use crate::error::{domain, Error, Result};
use crate::kahan::CompensatedSum;
use crate::specfun::{ln_gamma, recip_gamma, AccuracyBudget};

#[derive(Debug, Clone, Copy)]
struct Orders {
    /// αn + β + 1
    a1: f64,
    /// γn + ε + 1
    a2: f64,
}

impl Orders {
    fn new(n: i64, alpha: f64, beta: f64, gamma: f64, epsilon: f64) -> Self {
        let x = n as f64;
        Self {
            a1: alpha * x + beta + 1.0,
            a2: gamma * x + epsilon + 1.0,
        }
    }
}

fn ln_factorial(k: usize) -> f64 {
    ln_gamma(k as f64 + 1.0).0
}

/// R_m = Σ_{k=0..m} Λ^(−2k) / (k!(m−k)!) · 1/Γ(αn+β+k+1) · 1/Γ(γn+ε+m−k+1).
///
/// The k-sum stops at m because 1/(m−k)! vanishes beyond it.
#[allow(clippy::too_many_arguments)]
pub fn eval_rm(
    m: usize,
    n: i64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    epsilon: f64,
    lambda: f64,
) -> Result<f64> {
    if lambda == 0.0 && m > 0 {
        return Err(domain("R_m carries Λ^(-2k) and needs Λ ≠ 0"));
    }
    let o = Orders::new(n, alpha, beta, gamma, epsilon);
    let mut s = CompensatedSum::new();
    for k in 0..=m {
        let lam = lambda.powi(-2 * k as i32);
        let fac = (-(ln_factorial(k) + ln_factorial(m - k))).exp();
        s.add(lam * fac * recip_gamma(o.a1 + k as f64) * recip_gamma(o.a2 + (m - k) as f64));
    }
    Ok(s.value())
}

/// Q_n = Σ_m (arg_half)^(2m) (−1)^m Λ^(2m) R_m.
#[allow(clippy::too_many_arguments)]
pub fn eval_qn(
    n: i64,
    arg_half: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    epsilon: f64,
    lambda: f64,
    budget: &AccuracyBudget,
) -> Result<f64> {
    let o = Orders::new(n, alpha, beta, gamma, epsilon);
    scaled_q(o, arg_half, 0.0, lambda, budget)
}

/// arg_half^prefix · Q_n, with every term assembled in log space so that
/// large n neither overflows the power nor underflows the gamma reciprocals.
fn scaled_q(
    o: Orders,
    arg_half: f64,
    prefix: f64,
    lambda: f64,
    budget: &AccuracyBudget,
) -> Result<f64> {
    if arg_half == 0.0 {
        return Ok(0f64.powf(prefix) * recip_gamma(o.a1) * recip_gamma(o.a2));
    }
    if arg_half < 0.0 && prefix.fract() != 0.0 {
        return Err(domain(format!(
            "negative Bessel argument {} with non-integer total order {prefix}",
            2.0 * arg_half
        )));
    }
    let ln_arg = arg_half.abs().ln();
    let ln_lam = lambda.abs().ln();
    let arg_sign = |p: f64| {
        if arg_half < 0.0 && (p as i64) % 2 != 0 {
            -1.0
        } else {
            1.0
        }
    };
    // terms vanish identically while a gamma pole is in range
    let m_min = (-o.a1).max(-o.a2).max(0.0).ceil() as usize + 2;
    let mut sum = CompensatedSum::new();
    let mut prev = f64::INFINITY;
    let mut quiet = 0;
    for m in 0..budget.max_terms {
        let mut inner = CompensatedSum::new();
        for k in 0..=m {
            let (g1, s1) = ln_gamma(o.a1 + k as f64);
            let (g2, s2) = ln_gamma(o.a2 + (m - k) as f64);
            if g1.is_infinite() || g2.is_infinite() {
                continue;
            }
            let r = m - k;
            let lam = if r == 0 { 0.0 } else { 2.0 * r as f64 * ln_lam };
            let p = prefix + 2.0 * m as f64;
            let ln_mag = p * ln_arg + lam - ln_factorial(k) - ln_factorial(r) - g1 - g2;
            inner.add(s1 * s2 * arg_sign(p) * ln_mag.exp());
        }
        let t = if m % 2 == 0 {
            inner.value()
        } else {
            -inner.value()
        };
        if !t.is_finite() {
            return Err(Error::NonFinite(m as i64));
        }
        sum.add(t);
        let small = t.abs() <= budget.rel_tol * sum.value().abs() || t == 0.0;
        if m >= m_min && small && t.abs() <= prev {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum.value());
            }
        } else {
            quiet = 0;
        }
        prev = t.abs();
    }
    Err(Error::BudgetExhausted {
        partial: sum.value(),
        terms: budget.max_terms,
    })
}

/// Evaluate a second-kind series through the Q_n reduction.
///
/// Requires fn + g = Λ(cn + b) for a constant Λ.
pub fn eval_series_reduced(spec: &SeriesSpec, budget: &AccuracyBudget) -> Result<EvalReport> {
    spec.validate()?;
    if spec.kind != SeriesKind::K2 {
        return Err(domain(
            "the Q_n reduction applies to second-kind series only",
        ));
    }
    let lambda = if spec.c != 0.0 {
        spec.f / spec.c
    } else if spec.b != 0.0 {
        spec.g / spec.b
    } else {
        1.0
    };
    let mismatch = (spec.f - lambda * spec.c).abs() + (spec.g - lambda * spec.b).abs();
    if mismatch > 1e-14 * (1.0 + spec.f.abs() + spec.g.abs()) {
        return Err(domain(format!(
            "fn + g must be a constant multiple of cn + b (f={}, g={}, c={}, b={})",
            spec.f, spec.g, spec.c, spec.b
        )));
    }
    let term = |n: i64| -> Result<f64> {
        let a = spec.coeff.coeff(n)?;
        if a == 0.0 {
            return Ok(0.0);
        }
        let x = n as f64;
        let o = Orders::new(n, spec.alpha, spec.beta, spec.gamma, spec.epsilon);
        let b_n = a * lambda.powf(spec.gamma * x + spec.epsilon);
        let prefix = (spec.alpha + spec.gamma) * x + spec.beta + spec.epsilon;
        let arg_half = 0.5 * (spec.c * x + spec.b);
        Ok(b_n * scaled_q(o, arg_half, prefix, lambda, budget)?)
    };
    sum_accelerated(term, spec.range, budget, Phases::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_j;
    use crate::summation::{eval_series, CoefficientRule, SumRange};

    fn b() -> AccuracyBudget {
        AccuracyBudget::default()
    }

    #[test]
    fn rm_small_cases() {
        assert_eq!(eval_rm(0, 0, 1.0, 0.0, 1.0, 0.0, 1.0).unwrap(), 1.0);
        assert!((eval_rm(1, 0, 1.0, 0.0, 1.0, 0.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        // m=2, n=1: 1/(0!2!·1!·3!) + 1/(1!1!·2!·2!) + 1/(2!0!·3!·1!)
        let exact = 1.0 / 12.0 + 1.0 / 4.0 + 1.0 / 12.0;
        assert!((eval_rm(2, 1, 1.0, 0.0, 1.0, 0.0, 1.0).unwrap() - exact).abs() < 1e-15);
        assert!(eval_rm(1, 0, 1.0, 0.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn qn_at_zero_argument_is_r0() {
        let r0 = eval_rm(0, 2, 1.0, 0.5, 1.0, 0.0, 1.3).unwrap();
        assert_eq!(eval_qn(2, 0.0, 1.0, 0.5, 1.0, 0.0, 1.3, &b()).unwrap(), r0);
    }

    #[test]
    fn qn_reproduces_bessel_products() {
        // arg^(μ+ν) Q_n = J_μ(2 arg) J_ν(2Λ arg) / Λ^ν
        for &(n, arg, lam, beta, eps) in &[
            (1i64, 0.25, 1.0, 0.0, 0.0),
            (3, 1.1, 0.7, 0.3, -0.4),
            (0, 2.0, -1.5, 0.0, 1.0),
        ] {
            let q = eval_qn(n, arg, 1.0, beta, 1.0, eps, lam, &b()).unwrap();
            let mu = n as f64 + beta;
            let nu = n as f64 + eps;
            let lhs = arg.powf(mu + nu) * q;
            let rhs = bessel_j(mu, 2.0 * arg, &b()).unwrap()
                * bessel_j(nu, 2.0 * lam * arg, &b()).unwrap()
                / lam.powf(nu);
            assert!(
                (lhs - rhs).abs() < 1e-12 * rhs.abs().max(1e-3),
                "n={n}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn reduced_assembly_matches_direct_for_schott() {
        for &z in &[0.5, 0.3] {
            let spec = SeriesSpec {
                kind: SeriesKind::K2,
                coeff: CoefficientRule::Constant,
                alpha: 1.0,
                beta: 0.0,
                gamma: 1.0,
                epsilon: 0.0,
                c: z,
                b: 0.0,
                f: z,
                g: 0.0,
                range: SumRange::OneSided { from: 1 },
            };
            let budget = AccuracyBudget::new(1e-12, 10_000).unwrap();
            let direct = eval_series(&spec, &budget).unwrap().value;
            let reduced = eval_series_reduced(&spec, &budget).unwrap().value;
            assert!(
                (direct - reduced).abs() < 1e-8,
                "z={z}: {direct} vs {reduced}"
            );
        }
    }

    #[test]
    fn reduction_rejects_unrelated_arguments() {
        let spec = SeriesSpec {
            kind: SeriesKind::K2,
            coeff: CoefficientRule::Constant,
            alpha: 1.0,
            beta: 0.0,
            gamma: 1.0,
            epsilon: 0.0,
            c: 0.5,
            b: 0.1,
            f: 0.5,
            g: 0.0,
            range: SumRange::default(),
        };
        assert!(eval_series_reduced(&spec, &b()).is_err());
    }
}
