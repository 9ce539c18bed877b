//! Direct and accelerated summation of Kapteyn series, Gauss–Legendre
//! quadrature, and the Q_n/R_m power-series reduction of second-kind series.

mod quadrature;
mod reduction;
mod wynn;

pub use quadrature::{
    gauss_legendre, gauss_legendre_rule, product_rep_check, product_rep_check_with_nodes,
    ProductCheck,
};
pub use reduction::{eval_qn, eval_rm, eval_series_reduced};
pub use wynn::{wynn_epsilon, MAX_COLUMNS};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kahan::CompensatedSum;
use crate::specfun::{bessel_j, AccuracyBudget};

/// Number of consecutive negligible terms that ends a direct summation.
const QUIET_RUN: usize = 5;

/// Coefficient sequence a_n of a Kapteyn series.
#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "rule", content = "params", rename_all = "snake_case")]
pub enum CoefficientRule {
    /// a_n = 1
    Constant,
    /// a_n = n^s
    Power { s: f64 },
    /// a_n = t^n
    Geometric { t: f64 },
    /// a_n = 1/(n² − b²)
    InverseQuadratic { b: f64 },
    /// a_n = (−1)^(m−n)/((n + ½)² − b²)
    InverseShiftedHalf { m: i64, b: f64 },
    /// Arbitrary a_n. Not serializable.
    #[serde(skip)]
    Custom(Arc<dyn Fn(i64) -> f64 + Send + Sync>),
}

impl fmt::Debug for CoefficientRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant => write!(f, "Constant"),
            Self::Power { s } => write!(f, "Power {{ s: {s} }}"),
            Self::Geometric { t } => write!(f, "Geometric {{ t: {t} }}"),
            Self::InverseQuadratic { b } => write!(f, "InverseQuadratic {{ b: {b} }}"),
            Self::InverseShiftedHalf { m, b } => {
                write!(f, "InverseShiftedHalf {{ m: {m}, b: {b} }}")
            }
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl CoefficientRule {
    pub fn coeff(&self, n: i64) -> Result<f64> {
        let x = n as f64;
        let v = match self {
            Self::Constant => 1.0,
            Self::Power { s } => {
                if s.fract() == 0.0 && s.abs() < i32::MAX as f64 {
                    x.powi(*s as i32)
                } else {
                    x.powf(*s)
                }
            }
            Self::Geometric { t } => t.powf(x),
            Self::InverseQuadratic { b } => {
                let d = x * x - b * b;
                if d == 0.0 {
                    return Err(domain(format!(
                        "1/(n^2 - b^2) is singular at n = {n} for b = {b}"
                    )));
                }
                1.0 / d
            }
            Self::InverseShiftedHalf { m, b } => {
                let d = (x + 0.5).powi(2) - b * b;
                if d == 0.0 {
                    return Err(domain(format!(
                        "1/((n + 1/2)^2 - b^2) is singular at n = {n} for b = {b}"
                    )));
                }
                let sign = if (m - n).rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                };
                sign / d
            }
            Self::Custom(f) => f(n),
        };
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesKind {
    K1,
    K2,
}

/// Summation range of the index n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumRange {
    /// n = from, from + 1, ...
    OneSided { from: i64 },
    /// n = 0, 1, −1, 2, −2, ...
    Bilateral,
}

impl Default for SumRange {
    fn default() -> Self {
        Self::OneSided { from: 1 }
    }
}

impl SumRange {
    /// The i-th index visited.
    pub fn index(&self, i: usize) -> i64 {
        match *self {
            Self::OneSided { from } => from + i as i64,
            Self::Bilateral => {
                let h = i.div_ceil(2) as i64;
                if i % 2 == 1 {
                    h
                } else {
                    -h
                }
            }
        }
    }
}

/// K1 = Σ a_n J_{αn+β}(cn+b);  K2 = Σ a_n J_{αn+β}(cn+b) J_{γn+ε}(fn+g).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub coeff: CoefficientRule,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub epsilon: f64,
    pub c: f64,
    pub b: f64,
    #[serde(default)]
    pub f: f64,
    #[serde(default)]
    pub g: f64,
    #[serde(default)]
    pub range: SumRange,
}

impl SeriesSpec {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("epsilon", self.epsilon),
            ("c", self.c),
            ("b", self.b),
            ("f", self.f),
            ("g", self.g),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(domain(format!("field `{name}` must be finite, got {v}")));
            }
        }
        let params: &[(&str, f64)] = match &self.coeff {
            CoefficientRule::Power { s } => &[("coeff.s", *s)],
            CoefficientRule::Geometric { t } => &[("coeff.t", *t)],
            CoefficientRule::InverseQuadratic { b } => &[("coeff.b", *b)],
            CoefficientRule::InverseShiftedHalf { b, .. } => &[("coeff.b", *b)],
            _ => &[],
        };
        for &(name, v) in params {
            if !v.is_finite() {
                return Err(domain(format!("field `{name}` must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// The n-th term of the series.
    pub fn term(&self, n: i64, budget: &AccuracyBudget) -> Result<f64> {
        let a = self.coeff.coeff(n)?;
        if a == 0.0 {
            return Ok(0.0);
        }
        let x = n as f64;
        let j1 = bessel_j(self.alpha * x + self.beta, self.c * x + self.b, budget)?;
        match self.kind {
            SeriesKind::K1 => Ok(a * j1),
            SeriesKind::K2 => {
                if j1 == 0.0 {
                    return Ok(0.0);
                }
                let j2 = bessel_j(self.gamma * x + self.epsilon, self.f * x + self.g, budget)?;
                Ok(a * j1 * j2)
            }
        }
    }
}

/// Outcome of a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalReport {
    pub value: f64,
    pub err_estimate: f64,
    pub terms_used: usize,
    pub accelerated: bool,
    pub converged: bool,
}

/// Lengths of the two phases of [`sum_accelerated`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phases {
    pub direct: usize,
    pub block: usize,
}

impl Default for Phases {
    fn default() -> Self {
        Self {
            direct: 100,
            block: 100,
        }
    }
}

struct Direct {
    sum: CompensatedSum,
    quiet: usize,
    recent_max: f64,
    last: f64,
    used: usize,
}

impl Direct {
    fn new() -> Self {
        Self {
            sum: CompensatedSum::new(),
            quiet: 0,
            recent_max: 0.0,
            last: 0.0,
            used: 0,
        }
    }

    /// Adds one term; true once the stopping rule is met.
    fn push(&mut self, n: i64, t: f64, rel_tol: f64) -> Result<bool> {
        if !t.is_finite() {
            return Err(Error::NonFinite(n));
        }
        self.sum.add(t);
        self.used += 1;
        self.last = t.abs();
        if t.abs() < rel_tol * (1.0 + self.sum.value().abs()) {
            self.recent_max = if self.quiet == 0 {
                t.abs()
            } else {
                self.recent_max.max(t.abs())
            };
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        Ok(self.quiet >= QUIET_RUN)
    }

    fn report(&self, converged: bool) -> EvalReport {
        let err = if converged {
            self.recent_max
        } else {
            self.last
        };
        EvalReport {
            value: self.sum.value(),
            err_estimate: err,
            terms_used: self.used,
            accelerated: false,
            converged,
        }
    }
}

/// Compensated direct summation.
///
/// Stops after [`QUIET_RUN`] consecutive terms below rel_tol·(1 + |partial|),
/// or unconverged when `max_terms` runs out.
pub fn sum_direct<F>(term: F, range: SumRange, budget: &AccuracyBudget) -> Result<EvalReport>
where
    F: Fn(i64) -> Result<f64>,
{
    budget.validate()?;
    let mut d = Direct::new();
    for i in 0..budget.max_terms {
        let n = range.index(i);
        if d.push(n, term(n)?, budget.rel_tol)? {
            return Ok(d.report(true));
        }
    }
    Ok(d.report(false))
}

/// Direct summation followed, if needed, by Wynn-epsilon extrapolation.
///
/// After `phases.direct` terms without convergence, further terms are added
/// in blocks of `phases.block`; after each block the epsilon transform of the
/// collected partial sums is taken. Its error estimate is the spread of the
/// transform over the last three truncation points.
pub fn sum_accelerated<F>(
    term: F,
    range: SumRange,
    budget: &AccuracyBudget,
    phases: Phases,
) -> Result<EvalReport>
where
    F: Fn(i64) -> Result<f64>,
{
    budget.validate()?;
    let mut d = Direct::new();
    let mut partials = Vec::new();
    let mut best: Option<(f64, f64)> = None;
    for i in 0..budget.max_terms {
        let n = range.index(i);
        if d.push(n, term(n)?, budget.rel_tol)? {
            return Ok(d.report(true));
        }
        if i + 1 < phases.direct {
            continue;
        }
        partials.push(d.sum.value());
        let in_block = (i + 1 - phases.direct) % phases.block.max(1);
        if in_block != 0 || partials.len() < 5 {
            continue;
        }
        let len = partials.len();
        let w0 = wynn_epsilon(&partials)?;
        let w1 = wynn_epsilon(&partials[..len - 1])?;
        let w2 = wynn_epsilon(&partials[..len - 2])?;
        let err = (w0 - w1).abs().max((w0 - w2).abs());
        if best.is_none_or(|(_, e)| err <= e) {
            best = Some((w0, err));
        }
        if err <= budget.rel_tol * (1.0 + w0.abs()) {
            return Ok(EvalReport {
                value: w0,
                err_estimate: err,
                terms_used: d.used,
                accelerated: true,
                converged: true,
            });
        }
    }
    Ok(match best {
        Some((value, err)) if err < d.last => EvalReport {
            value,
            err_estimate: err,
            terms_used: d.used,
            accelerated: true,
            converged: false,
        },
        _ => d.report(false),
    })
}

/// Evaluate a K1 or K2 series with the default direct/acceleration phases.
pub fn eval_series(spec: &SeriesSpec, budget: &AccuracyBudget) -> Result<EvalReport> {
    spec.validate()?;
    sum_accelerated(
        |n| spec.term(n, budget),
        spec.range,
        budget,
        Phases::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(tol: f64) -> AccuracyBudget {
        AccuracyBudget::new(tol, 10_000).unwrap()
    }

    #[test]
    fn zero_terms() {
        let r = sum_direct(|_| Ok(0.0), SumRange::default(), &budget(1e-12)).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn geometric_direct() {
        let r = sum_direct(
            |n| Ok(0.5f64.powi(n as i32)),
            SumRange::default(),
            &budget(1e-15),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schott_direct() {
        let b = budget(1e-13);
        let r = sum_direct(
            |n| Ok(bessel_j(n as f64, 0.6 * n as f64, &b)?.powi(2)),
            SumRange::default(),
            &b,
        )
        .unwrap();
        assert!((r.value - 0.125).abs() < 1e-9, "{r:?}");
        assert!(r.converged);
    }

    #[test]
    fn non_finite_term_reports_index() {
        let r = sum_direct(
            |n| Ok(if n == 3 { f64::NAN } else { 1.0 }),
            SumRange::default(),
            &budget(1e-10),
        );
        assert_eq!(r.unwrap_err(), Error::NonFinite(3));
    }

    #[test]
    fn exhausted_budget_is_unconverged() {
        let b = AccuracyBudget::new(1e-12, 50).unwrap();
        let r = sum_direct(|n| Ok(1.0 / (n * n) as f64), SumRange::default(), &b).unwrap();
        assert!(!r.converged);
        assert_eq!(r.terms_used, 50);
    }

    #[test]
    fn bilateral_order_and_symmetry() {
        let idx: Vec<i64> = (0..5).map(|i| SumRange::Bilateral.index(i)).collect();
        assert_eq!(idx, vec![0, 1, -1, 2, -2]);
        let f = |n: i64| Ok((-0.3 * (n * n) as f64).exp());
        let b = budget(1e-15);
        let two = sum_direct(f, SumRange::Bilateral, &b).unwrap().value;
        let one = sum_direct(f, SumRange::OneSided { from: 1 }, &b)
            .unwrap()
            .value;
        assert!((two - (2.0 * one + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn acceleration_handles_slow_alternating_series() {
        let b = budget(1e-11);
        let f = |n: i64| Ok(if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64);
        let r = sum_accelerated(f, SumRange::default(), &b, Phases::default()).unwrap();
        assert!(r.accelerated && r.converged, "{r:?}");
        assert!((r.value - std::f64::consts::LN_2).abs() < 1e-10);
        assert!(r.err_estimate <= 1e-11 * (1.0 + r.value.abs()));
    }

    #[test]
    fn k1_geometric_matches_plain_partials() {
        let spec = SeriesSpec {
            kind: SeriesKind::K1,
            coeff: CoefficientRule::Geometric { t: 0.5 },
            alpha: 1.0,
            beta: 0.0,
            gamma: 0.0,
            epsilon: 0.0,
            c: 0.3,
            b: 0.0,
            f: 0.0,
            g: 0.0,
            range: SumRange::default(),
        };
        let b = budget(1e-13);
        let r = eval_series(&spec, &b).unwrap();
        assert!(r.converged);
        let mut s = 0.0;
        for n in 1..200 {
            s += 0.5f64.powi(n) * bessel_j(n as f64, 0.3 * n as f64, &b).unwrap();
        }
        assert!((r.value - s).abs() < 1e-10);
    }

    #[test]
    fn k2_schott_spec() {
        let json = r#"{"kind":"K2","coeff":{"rule":"power","params":{"s":0}},
            "alpha":1,"beta":0,"gamma":1,"epsilon":0,"c":0.5,"b":0,"f":0.5,"g":0,
            "range":{"one_sided":{"from":1}}}"#;
        let spec: SeriesSpec = serde_json::from_str(json).unwrap();
        let r = eval_series(&spec, &budget(1e-12)).unwrap();
        let exact = 0.5 * (2.0 / 3f64.sqrt() - 1.0);
        assert!((r.value - exact).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn zero_arguments_give_zero() {
        let json = r#"{"kind":"K2","coeff":{"rule":"constant"},"alpha":1,"beta":1,
            "gamma":1,"epsilon":1,"c":0,"b":0,"f":0,"g":0}"#;
        let spec: SeriesSpec = serde_json::from_str(json).unwrap();
        assert_eq!(eval_series(&spec, &budget(1e-12)).unwrap().value, 0.0);
    }

    #[test]
    fn invalid_specs() {
        let json = r#"{"kind":"K1","coeff":{"rule":"inverse_quadratic","params":{"b":2}},
            "alpha":1,"beta":0,"c":0.3,"b":0}"#;
        let spec: SeriesSpec = serde_json::from_str(json).unwrap();
        assert!(matches!(
            eval_series(&spec, &budget(1e-12)),
            Err(Error::Domain(_))
        ));
        let mut spec = spec;
        spec.c = f64::NAN;
        let err = spec.validate().unwrap_err().to_string();
        assert!(err.contains("`c`"), "{err}");
    }

    #[test]
    fn rule_round_trips_through_json() {
        let r = CoefficientRule::InverseShiftedHalf { m: 2, b: 0.1 };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"rule":"inverse_shifted_half","params":{"m":2,"b":0.1}}"#
        );
        let back: CoefficientRule = serde_json::from_str(&s).unwrap();
        assert_eq!(back.coeff(3).unwrap(), r.coeff(3).unwrap());
    }
}
