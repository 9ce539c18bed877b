//! Bessel functions of the first kind for real order and real argument.
//!
//! The ascending power series is the primary route. When it cancels too
//! badly to meet the budget (argument comparable to or larger than the
//! order), the value comes from Miller's backward recurrence instead.
//! That recurrence is normalized by J_0 + 2ΣJ_2k = 1 for integer orders and
//! by the Neumann series (x/2)^ν = Σ (ν+2k) Γ(ν+k)/k! J_{ν+2k}(x) for
//! fractional ones.

use crate::error::{domain, Error, Result};
use crate::kahan::CompensatedSum;

use super::gamma::{gamma_fn, ln_gamma, recip_gamma};
use super::AccuracyBudget;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// Outcome of the raw power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Rounding plus truncation bound, absolute.
    pub err_estimate: f64,
    /// Σ|t_k|; the ratio `abs_sum / |value|` measures cancellation.
    pub abs_sum: f64,
    pub terms: usize,
}

fn is_integer(x: f64) -> bool {
    x == x.floor()
}

fn parity_sign(n: f64) -> f64 {
    if (n.abs() as u64) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// (x/2)^ν / Γ(ν+1), guarded against intermediate overflow.
fn leading_term(order: f64, half: f64) -> f64 {
    let p = half.powf(order);
    let r = recip_gamma(order + 1.0);
    let t = p * r;
    if p.is_finite() && p != 0.0 && r != 0.0 && t.is_finite() && t.abs() > 1e-290 {
        return t;
    }
    let (lg, sign) = ln_gamma(order + 1.0);
    sign * (order * half.ln() - lg).exp()
}

/// Power series of J_ν(x) with compensated accumulation.
///
/// Negative integer orders are reflected first. Runs until the current term
/// drops below `rel_tol` times the running Σ|t_k| (and terms are shrinking),
/// or fails with [`Error::BudgetExhausted`] after `max_terms`.
pub fn bessel_j_series(order: f64, x: f64, budget: &AccuracyBudget) -> Result<SeriesValue> {
    budget.validate()?;
    if order.is_nan() || x.is_nan() {
        return Err(domain("NaN Bessel argument"));
    }
    if is_integer(order) && order < 0.0 {
        let s = bessel_j_series(-order, x, budget)?;
        return Ok(SeriesValue {
            value: parity_sign(order) * s.value,
            ..s
        });
    }
    if x < 0.0 {
        if !is_integer(order) {
            return Err(domain(format!(
                "J_{order}(x) is complex for x = {x} < 0 and non-integer order"
            )));
        }
        let s = bessel_j_series(order, -x, budget)?;
        return Ok(SeriesValue {
            value: parity_sign(order) * s.value,
            ..s
        });
    }
    if x == 0.0 {
        return zero_argument(order).map(|value| SeriesValue {
            value,
            err_estimate: 0.0,
            abs_sum: value.abs(),
            terms: 1,
        });
    }

    let half = 0.5 * x;
    let q = -half * half;
    let mut term = leading_term(order, half);
    if !term.is_finite() {
        return Err(Error::Overflow(x));
    }
    let mut sum = CompensatedSum::new();
    let mut abs_sum = 0.0;
    for k in 0..budget.max_terms {
        sum.add(term);
        abs_sum += term.abs();
        let kf = k as f64;
        let ratio = q / ((kf + 1.0) * (order + kf + 1.0));
        if term.abs() <= budget.rel_tol * abs_sum && ratio.abs() < 0.5 || abs_sum == 0.0 {
            return Ok(SeriesValue {
                value: sum.value(),
                err_estimate: 2.0 * f64::EPSILON * abs_sum + term.abs(),
                abs_sum,
                terms: k + 1,
            });
        }
        term *= ratio;
        if !abs_sum.is_finite() {
            return Err(Error::Overflow(x));
        }
    }
    Err(Error::BudgetExhausted {
        partial: sum.value(),
        terms: budget.max_terms,
    })
}

fn zero_argument(order: f64) -> Result<f64> {
    if order == 0.0 {
        Ok(1.0)
    } else if order > 0.0 || is_integer(order) {
        Ok(0.0)
    } else {
        Err(domain(format!(
            "J_{order}(0) is unbounded for negative non-integer order"
        )))
    }
}

/// J_ν(x) for real ν and real x.
///
/// Relative accuracy is about `100·rel_tol` wherever J_ν(x) is not close to
/// a zero.
pub fn bessel_j(order: f64, x: f64, budget: &AccuracyBudget) -> Result<f64> {
    budget.validate()?;
    if order.is_nan() || x.is_nan() {
        return Err(domain("NaN Bessel argument"));
    }
    if is_integer(order) && order < 0.0 {
        return Ok(parity_sign(order) * bessel_j(-order, x, budget)?);
    }
    if x < 0.0 {
        if !is_integer(order) {
            return Err(domain(format!(
                "J_{order}(x) is complex for x = {x} < 0 and non-integer order"
            )));
        }
        return Ok(parity_sign(order) * bessel_j(order, -x, budget)?);
    }
    if x == 0.0 {
        return zero_argument(order);
    }
    match bessel_j_series(order, x, budget) {
        Ok(s) if s.err_estimate <= 10.0 * budget.rel_tol * s.value.abs() || s.abs_sum == 0.0 => {
            Ok(s.value)
        }
        _ => Ok(bessel_j_recurrence(order, x)),
    }
}

/// Start index for the backward recurrence, even and well above both the
/// top order and the turning point at x.
fn miller_start(top: usize, x: f64) -> usize {
    let cx = x.ceil() as usize;
    let m = top.max(cx) + 20usize.max(cx);
    m + (m & 1)
}

/// J_{frac+k}(x) for k = 0..=top, x > 0, frac ∈ [0, 1).
fn miller(frac: f64, top: usize, x: f64) -> Vec<f64> {
    let start = miller_start(top, x);
    let mut f = vec![0.0; start + 2];
    f[start] = 1e-30;
    for k in (1..=start).rev() {
        let next = 2.0 * (frac + k as f64) / x * f[k] - f[k + 1];
        f[k - 1] = next;
        if next.abs() > RESCALE_ABOVE {
            f[k - 1..].iter_mut().for_each(|v| *v *= RESCALE_BY);
        }
    }

    // Neumann normalization; for frac = 0 the weights reduce to 1, 2, 2, ...
    let gamma1 = gamma_fn(frac + 1.0).expect("frac + 1 lies in [1, 2)");
    let mut norm = CompensatedSum::new();
    norm.add(gamma1 * f[0]);
    let mut g = gamma1; // Γ(frac+k)/k! at k = 1
    let mut k = 1usize;
    while 2 * k <= start {
        norm.add((frac + 2.0 * k as f64) * g * f[2 * k]);
        g *= (frac + k as f64) / (k as f64 + 1.0);
        k += 1;
    }
    let scale = (0.5 * x).powf(frac) / norm.value();
    f.truncate(top + 1);
    f.iter_mut().for_each(|v| *v *= scale);
    f
}

fn bessel_j_recurrence(order: f64, x: f64) -> f64 {
    let base = order.floor();
    let frac = order - base;
    if order >= 0.0 {
        let m = base as usize;
        return miller(frac, m, x)[m];
    }
    // negative non-integer order: continue the recurrence below frac
    let v = miller(frac, 1, x);
    let (mut lo, mut hi) = (v[0], v[1]);
    let mut nu = frac;
    while nu > order + 0.5 {
        let next = 2.0 * nu / x * lo - hi;
        hi = lo;
        lo = next;
        nu -= 1.0;
    }
    lo
}

/// J_0(x), …, J_{n_max}(x) by backward recurrence.
///
/// The recurrence starts at `n_max + max(20, ⌈x⌉)` (rounded up to even),
/// lifted to `⌈x⌉ + max(20, ⌈x⌉)` when x exceeds `n_max` so that the start
/// stays beyond the turning point.
pub fn bessel_j_array(n_max: usize, x: f64) -> Result<Vec<f64>> {
    if n_max < 1 {
        return Err(domain("n_max must be at least 1"));
    }
    if x.is_nan() || x < 0.0 || !x.is_finite() {
        return Err(domain(format!(
            "bessel_j_array needs finite x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        let mut v = vec![0.0; n_max + 1];
        v[0] = 1.0;
        return Ok(v);
    }
    Ok(miller(0.0, n_max, x))
}
