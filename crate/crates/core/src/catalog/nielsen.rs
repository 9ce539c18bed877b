//! Nielsen's power-series forms of
//! sin(νπ)/(νπ) + 2Σ_{n≥1} J_{n+ν}(2nx) J_{n−ν}(2nx)          (even kind)
//! 2Σ_{n≥0} J_{n+ν}((2n+1)x) J_{n+1−ν}((2n+1)x)                (odd kind)
//! and the integral ∫_0^{π/2} cos^(ν−1)t cos(at) dt behind them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kahan::CompensatedSum;
use crate::specfun::{gamma_fn, ln_gamma, recip_gamma, sin_pi, AccuracyBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NielsenKind {
    Even,
    Odd,
}

/// sin(νπ)/(νπ), with the removable singularity at ν = 0.
pub fn sinc_pi(nu: f64) -> f64 {
    if nu.abs() < 1e-8 {
        let t = nu * PI;
        1.0 - t * t / 6.0
    } else {
        sin_pi(nu) / (nu * PI)
    }
}

/// (1/√π) Σ n! Γ(n+½) (2x)^(2n) / (Γ(n+1+ν) Γ(n+1−ν))          (even)
/// (1/√π) Σ n! Γ(n+3/2) (2x)^(2n+1) / (Γ(n+1+ν) Γ(n+2−ν))      (odd)
///
/// Terms follow from their ratio once the first non-vanishing one is known.
/// For integer ν the leading terms are killed by poles of the gamma
/// functions in the denominator.
pub fn nielsen_rhs(kind: NielsenKind, nu: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    if x.abs() >= 0.5 || x.is_nan() || !nu.is_finite() {
        return Err(domain(format!("|x| < 1/2 required, got x = {x}")));
    }
    let (half, shift) = match kind {
        NielsenKind::Even => (0.5, 1.0),
        NielsenKind::Odd => (1.5, 2.0),
    };
    let n0 = if nu.fract() == 0.0 {
        match kind {
            NielsenKind::Even => nu.abs(),
            NielsenKind::Odd => 0f64.max(-nu).max(nu - 1.0),
        }
    } else {
        0.0
    };
    let odd = kind == NielsenKind::Odd;
    if x == 0.0 {
        // only the n = 0 power survives, and only in the even kind
        return Ok(if !odd && n0 == 0.0 { sinc_pi(nu) } else { 0.0 });
    }
    let two_x = 2.0 * x;
    let power = 2.0 * n0 + if odd { 1.0 } else { 0.0 };
    let (g1, s1) = ln_gamma(n0 + 1.0 + nu);
    let (g2, s2) = ln_gamma(n0 + shift - nu);
    let ln_first = ln_gamma(n0 + 1.0).0 + ln_gamma(n0 + half).0 + power * two_x.abs().ln()
        - g1
        - g2
        - 0.5 * PI.ln();
    let sign = s1 * s2 * if odd && x < 0.0 { -1.0 } else { 1.0 };
    let mut t = sign * ln_first.exp();
    let r_inf = two_x * two_x;
    let mut sum = CompensatedSum::new();
    let mut n = n0;
    for _ in 0..budget.max_terms {
        if !t.is_finite() {
            return Err(Error::NonFinite(n as i64));
        }
        sum.add(t);
        let ratio = (n + 1.0) * (n + half) * r_inf / ((n + 1.0 + nu) * (n + shift - nu));
        // geometric tail bound once the ratio has settled below 1
        if ratio.abs() < 1.0
            && (t * ratio).abs() / (1.0 - r_inf.max(ratio.abs()))
                <= budget.rel_tol * sum.value().abs()
        {
            return Ok(sum.value());
        }
        t *= ratio;
        n += 1.0;
        if t == 0.0 {
            return Ok(sum.value());
        }
    }
    Err(Error::BudgetExhausted {
        partial: sum.value(),
        terms: budget.max_terms,
    })
}

/// ∫_0^{π/2} cos^(ν−1)t cos(at) dt = π Γ(ν+1) / (2^ν ν Γ((ν+1+a)/2) Γ((ν+1−a)/2)).
pub fn nielsen_integral(nu: f64, a: f64) -> Result<f64> {
    if nu.is_nan() || nu <= 0.0 {
        return Err(domain(format!("nu must be positive, got {nu}")));
    }
    let g = gamma_fn(nu + 1.0)?;
    Ok(PI * g / (2f64.powf(nu) * nu)
        * recip_gamma(0.5 * (nu + 1.0 + a))
        * recip_gamma(0.5 * (nu + 1.0 - a)))
}
