use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use super::negative_q::{eval_first_kind, eval_second_kind_neg};
use super::nielsen::{nielsen_rhs, sinc_pi, NielsenKind};
use super::positive_q::{eval_k2_pos, k2_family, k2_q0};
use crate::error::{domain, Error, Result};
use crate::exact::UPoly;
use crate::specfun::{bessel_j, gamma_fn, AccuracyBudget};
use crate::summation::{
    eval_series, sum_accelerated, CoefficientRule, EvalReport, Phases, SeriesKind, SeriesSpec,
    SumRange,
};

/// Named real parameters of an identity, e.g. `{"z": 0.5}`.
pub type Params = BTreeMap<String, f64>;

fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn get(p: &Params, name: &str) -> Result<f64> {
    p.get(name)
        .copied()
        .ok_or_else(|| domain(format!("missing parameter `{name}`")))
}

fn get_int(p: &Params, name: &str) -> Result<i64> {
    let v = get(p, name)?;
    if v.fract() != 0.0 || v.abs() > 1e9 {
        return Err(domain(format!(
            "parameter `{name}` must be an integer, got {v}"
        )));
    }
    Ok(v as i64)
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(domain(msg))
    }
}

/// A closed-form identity with a Kapteyn series on one side.
pub struct Identity {
    pub id: &'static str,
    pub statement: &'static str,
    pub param_names: &'static [&'static str],
    /// Pass threshold on |series − closed| / max(1, |closed|).
    pub tolerance: f64,
    /// Whether the series is the left-hand side of the statement.
    pub series_on_left: bool,
    defaults: fn() -> Vec<Params>,
    domain: fn(&Params) -> Result<()>,
    series: fn(&Params, &AccuracyBudget) -> Result<EvalReport>,
    closed: fn(&Params, &AccuracyBudget) -> Result<f64>,
    structural: Option<fn(&Params) -> Result<()>>,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("statement", &self.statement)
            .field("tolerance", &self.tolerance)
            .finish_non_exhaustive()
    }
}

/// Outcome of comparing both sides of an identity at one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    pub series: EvalReport,
    pub closed: f64,
    pub abs_gap: f64,
    /// |series − closed| / max(1, |closed|)
    pub gap: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub note: Option<String>,
}

impl Identity {
    pub fn default_params(&self) -> Vec<Params> {
        (self.defaults)()
    }

    /// Fills unspecified parameters from the first default set and rejects
    /// names the identity does not know.
    pub fn resolve_params(&self, given: &Params) -> Result<Params> {
        if let Some(bad) = given
            .keys()
            .find(|k| !self.param_names.contains(&k.as_str()))
        {
            return Err(domain(format!(
                "unknown parameter `{bad}` for identity {} (expected: {})",
                self.id,
                self.param_names.join(", ")
            )));
        }
        let mut p = self.default_params().into_iter().next().unwrap_or_default();
        p.extend(given.iter().map(|(k, v)| (k.clone(), *v)));
        Ok(p)
    }

    pub fn check_domain(&self, p: &Params) -> Result<()> {
        for name in self.param_names {
            let v = get(p, name)?;
            if !v.is_finite() {
                return Err(domain(format!(
                    "parameter `{name}` must be finite, got {v}"
                )));
            }
        }
        (self.domain)(p)
    }

    fn summation_budget(&self, budget: &AccuracyBudget) -> AccuracyBudget {
        budget.with_rel_tol(budget.rel_tol.min(self.tolerance / 1000.0))
    }

    /// The series side of the identity.
    pub fn eval_series(&self, p: &Params, budget: &AccuracyBudget) -> Result<EvalReport> {
        self.check_domain(p)?;
        (self.series)(p, &self.summation_budget(budget))
    }

    /// The closed-form (or canonical power-series) side.
    pub fn eval_closed(&self, p: &Params, budget: &AccuracyBudget) -> Result<f64> {
        self.check_domain(p)?;
        (self.closed)(p, budget)
    }

    pub fn check(&self, p: &Params, budget: &AccuracyBudget) -> Result<IdentityReport> {
        let series = self.eval_series(p, budget)?;
        let closed = self.eval_closed(p, budget)?;
        let abs_gap = (series.value - closed).abs();
        let gap = abs_gap / closed.abs().max(1.0);
        let mut pass = gap <= self.tolerance && series.converged;
        let mut note = (!series.converged).then(|| "series did not converge".to_string());
        if let Some(structural) = self.structural {
            if let Err(e) = structural(p) {
                pass = false;
                note = Some(e.to_string());
            }
        }
        let (lhs, rhs) = if self.series_on_left {
            (series.value, closed)
        } else {
            (closed, series.value)
        };
        Ok(IdentityReport {
            id: self.id.to_string(),
            params: p.clone(),
            lhs,
            rhs,
            series,
            closed,
            abs_gap,
            gap,
            tolerance: self.tolerance,
            pass,
            note,
        })
    }
}

fn affine(r: EvalReport, offset: f64, scale: f64) -> EvalReport {
    EvalReport {
        value: offset + scale * r.value,
        err_estimate: scale.abs() * r.err_estimate,
        ..r
    }
}

#[allow(clippy::too_many_arguments)]
fn k2(
    coeff: CoefficientRule,
    alpha: f64,
    beta: f64,
    gamma: f64,
    epsilon: f64,
    c: f64,
    b: f64,
    from: i64,
) -> SeriesSpec {
    SeriesSpec {
        kind: SeriesKind::K2,
        coeff,
        alpha,
        beta,
        gamma,
        epsilon,
        c,
        b,
        f: c,
        g: b,
        range: SumRange::OneSided { from },
    }
}

fn below_half(x: f64, name: &str) -> Result<()> {
    require(x.abs() < 0.5, &format!("|{name}| < 1/2 required"))
}

fn ratio_closed_form(x: f64) -> f64 {
    // (1/2x)[(1 − 4x²)^(−1/2) − 1], tending to x as x → 0
    if x == 0.0 {
        0.0
    } else {
        ((1.0 - 4.0 * x * x).powf(-0.5) - 1.0) / (2.0 * x)
    }
}

fn nielsen_domain(p: &Params) -> Result<()> {
    let nu = get(p, "nu")?;
    let x = get(p, "x")?;
    below_half(x, "x")?;
    require(
        x >= 0.0 || nu.fract() == 0.0,
        "x >= 0 required for non-integer nu",
    )
}

const P_TABLE: [&[i64]; 4] = [
    &[1, 1],
    &[1, 37, 118, 27],
    &[1, 217, 5036, 23630, 22910, 2250],
    &[1, 973, 80130, 1515705, 8635578, 15359862, 7119756, 385875],
];

fn numerator_structure(p: &Params) -> Result<()> {
    let q = get_int(p, "q")? as u32;
    let fam = k2_family(q)?;
    let poly = fam
        .numerator()
        .ok_or_else(|| Error::Structural("no numerator polynomial at q = 0".into()))?;
    if poly.degree() != Some(2 * q as usize - 1) {
        return Err(Error::Structural(format!(
            "P_{q} has degree {:?}, expected {}",
            poly.degree(),
            2 * q - 1
        )));
    }
    if let Some(table) = P_TABLE.get(q as usize - 1) {
        if *poly != UPoly::from_ints(table) {
            return Err(Error::Structural(format!(
                "P_{q} = {poly} differs from the tabulated polynomial"
            )));
        }
    }
    Ok(())
}

fn build() -> Vec<Identity> {
    vec![
        Identity {
            id: "schott",
            statement: "sum_{n>=1} J_n(nz)^2 = [(1-z^2)^(-1/2) - 1]/2",
            param_names: &["z"],
            tolerance: 1e-9,
            series_on_left: true,
            defaults: || vec![params(&[("z", 0.3)]), params(&[("z", 0.5)]), params(&[("z", 0.6)])],
            domain: |p| require(get(p, "z")?.abs() < 1.0, "|z| < 1 required"),
            series: |p, b| {
                let z = get(p, "z")?;
                eval_series(&k2(CoefficientRule::Constant, 1.0, 0.0, 1.0, 0.0, z, 0.0, 1), b)
            },
            closed: |p, _| {
                let z = get(p, "z")?;
                Ok(0.5 * ((1.0 - z * z).powf(-0.5) - 1.0))
            },
            structural: None,
        },
        Identity {
            id: "eq6",
            statement: "2 sum_{n>=1} J_n((2n+1)x) J'_n((2n+1)x) = [(1-4x^2)^(-1/2) - 1]/(2x)",
            param_names: &["x"],
            tolerance: 1e-8,
            series_on_left: true,
            defaults: || vec![params(&[("x", 0.1)]), params(&[("x", 0.3)])],
            domain: |p| {
                let x = get(p, "x")?;
                below_half(x, "x")
            },
            series: |p, b| {
                let x = get(p, "x")?;
                let term = |n: i64| -> Result<f64> {
                    let (nf, arg) = (n as f64, (2 * n + 1) as f64 * x);
                    let j = bessel_j(nf, arg, b)?;
                    let dj = 0.5 * (bessel_j(nf - 1.0, arg, b)? - bessel_j(nf + 1.0, arg, b)?);
                    Ok(2.0 * j * dj)
                };
                sum_accelerated(term, SumRange::OneSided { from: 1 }, b, Phases::default())
            },
            closed: |p, _| Ok(ratio_closed_form(get(p, "x")?)),
            structural: None,
        },
        Identity {
            id: "eq16",
            statement: "sum_{v>=1} J_{v+n}(av) J_{v-n}(av)/(v^2-b^2) = (-1)^(n-1) (pi/2b) csc(pi b) J_{n+b}(ab) J_{n-b}(ab)",
            param_names: &["a", "b", "n"],
            tolerance: 1e-8,
            series_on_left: true,
            defaults: || {
                vec![
                    params(&[("a", 0.5), ("b", 0.3), ("n", 1.0)]),
                    params(&[("a", 0.5), ("b", 0.3), ("n", 2.0)]),
                ]
            },
            domain: |p| {
                let (a, b) = (get(p, "a")?, get(p, "b")?);
                require(a > 0.0 && a < 1.0, "0 < a < 1 required")?;
                require(b > 0.0 && b < 1.0, "0 < b < 1 required")?;
                require(get_int(p, "n")? >= 1, "integer n >= 1 required")
            },
            series: |p, bud| {
                let (a, b, n) = (get(p, "a")?, get(p, "b")?, get_int(p, "n")? as f64);
                let spec = k2(CoefficientRule::InverseQuadratic { b }, 1.0, n, 1.0, -n, a, 0.0, 1);
                eval_series(&spec, bud)
            },
            closed: |p, bud| {
                let (a, b, n) = (get(p, "a")?, get(p, "b")?, get_int(p, "n")?);
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                let nf = n as f64;
                let jj = bessel_j(nf + b, a * b, bud)? * bessel_j(nf - b, a * b, bud)?;
                Ok(sign * PI / (2.0 * b) / (PI * b).sin() * jj)
            },
            structural: None,
        },
        Identity {
            id: "eq17",
            statement: "sum_{v>=0} (-1)^(n-v)/((v+1/2)^2-b^2) J_{n+v+1}(a(v+1/2)) J_{n-v}(a(v+1/2)) = (-1)^n (pi/2b) sec(pi b) J_{n+1/2+b}(ab) J_{n+1/2-b}(ab)",
            param_names: &["a", "b", "n"],
            tolerance: 1e-8,
            series_on_left: true,
            defaults: || {
                vec![
                    params(&[("a", 0.5), ("b", 0.25), ("n", 1.0)]),
                    params(&[("a", 0.7), ("b", 0.1), ("n", 2.0)]),
                ]
            },
            domain: |p| {
                let (a, b) = (get(p, "a")?, get(p, "b")?);
                require(a > 0.0 && a < 1.0, "0 < a < 1 required")?;
                require(b > 0.0 && b < 0.5, "0 < b < 1/2 required")?;
                require(get_int(p, "n")? >= 1, "integer n >= 1 required")
            },
            series: |p, bud| {
                let (a, b, n) = (get(p, "a")?, get(p, "b")?, get_int(p, "n")?);
                let nf = n as f64;
                let rule = CoefficientRule::InverseShiftedHalf { m: n, b };
                eval_series(&k2(rule, 1.0, nf + 1.0, -1.0, nf, a, 0.5 * a, 0), bud)
            },
            closed: |p, bud| {
                let (a, b, n) = (get(p, "a")?, get(p, "b")?, get_int(p, "n")?);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let h = n as f64 + 0.5;
                let jj = bessel_j(h + b, a * b, bud)? * bessel_j(h - b, a * b, bud)?;
                Ok(sign * PI / (2.0 * b) / (PI * b).cos() * jj)
            },
            structural: None,
        },
        Identity {
            id: "eq28",
            statement: "sin(nu pi)/(nu pi) + 2 sum_{n>=1} J_{n+nu}(2nx) J_{n-nu}(2nx) = (1/sqrt(pi)) sum n! G(n+1/2) (2x)^(2n) / (G(n+1+nu) G(n+1-nu))",
            param_names: &["nu", "x"],
            tolerance: 1e-8,
            series_on_left: true,
            defaults: nielsen_defaults,
            domain: nielsen_domain,
            series: |p, b| {
                let (nu, x) = (get(p, "nu")?, get(p, "x")?);
                let r = eval_series(&k2(CoefficientRule::Constant, 1.0, nu, 1.0, -nu, 2.0 * x, 0.0, 1), b)?;
                Ok(affine(r, sinc_pi(nu), 2.0))
            },
            closed: |p, b| nielsen_rhs(NielsenKind::Even, get(p, "nu")?, get(p, "x")?, b),
            structural: None,
        },
        Identity {
            id: "eq29",
            statement: "2 sum_{n>=0} J_{n+nu}((2n+1)x) J_{n+1-nu}((2n+1)x) = (1/sqrt(pi)) sum n! G(n+3/2) (2x)^(2n+1) / (G(n+1+nu) G(n+2-nu))",
            param_names: &["nu", "x"],
            tolerance: 1e-8,
            series_on_left: true,
            defaults: nielsen_defaults,
            domain: nielsen_domain,
            series: |p, b| {
                let (nu, x) = (get(p, "nu")?, get(p, "x")?);
                let r = eval_series(&k2(CoefficientRule::Constant, 1.0, nu, 1.0, 1.0 - nu, 2.0 * x, x, 0), b)?;
                Ok(affine(r, 0.0, 2.0))
            },
            closed: |p, b| nielsen_rhs(NielsenKind::Odd, get(p, "nu")?, get(p, "x")?, b),
            structural: None,
        },
        Identity {
            id: "eq30",
            statement: "1 + 2 sum_{n>=1} J_n(2nx)^2 = (1-4x^2)^(-1/2)",
            param_names: &["x"],
            tolerance: 1e-10,
            series_on_left: true,
            defaults: || [0.1, 0.2, 0.3, 0.4].iter().map(|&x| params(&[("x", x)])).collect(),
            domain: |p| below_half(get(p, "x")?, "x"),
            series: |p, b| {
                let x = get(p, "x")?;
                let r = eval_series(&k2(CoefficientRule::Constant, 1.0, 0.0, 1.0, 0.0, 2.0 * x, 0.0, 1), b)?;
                Ok(affine(r, 1.0, 2.0))
            },
            closed: |p, _| Ok((1.0 - 4.0 * get(p, "x")?.powi(2)).powf(-0.5)),
            structural: None,
        },
        Identity {
            id: "eq31",
            statement: "2 sum_{n>=0} J_n((2n+1)x) J_{n+1}((2n+1)x) = [(1-4x^2)^(-1/2) - 1]/(2x)",
            param_names: &["x"],
            tolerance: 1e-10,
            series_on_left: true,
            defaults: || vec![params(&[("x", 0.1)]), params(&[("x", 0.3)])],
            domain: |p| below_half(get(p, "x")?, "x"),
            series: |p, b| {
                let x = get(p, "x")?;
                let r = eval_series(&k2(CoefficientRule::Constant, 1.0, 0.0, 1.0, 1.0, 2.0 * x, x, 0), b)?;
                Ok(affine(r, 0.0, 2.0))
            },
            closed: |p, _| Ok(ratio_closed_form(get(p, "x")?)),
            structural: None,
        },
        Identity {
            id: "eq40",
            statement: "(x/2)^(mu+nu) = (mu+nu) G(1+mu) G(1+nu) sum_{n>=0} C(mu+nu+n-1, n) (mu+nu+2n)^(-(mu+nu+1)) J_{mu+n}((mu+nu+2n)x) J_{nu+n}((mu+nu+2n)x)",
            param_names: &["mu", "nu", "x"],
            tolerance: 1e-8,
            series_on_left: false,
            defaults: || {
                vec![
                    params(&[("mu", 0.5), ("nu", 0.5), ("x", 0.3)]),
                    params(&[("mu", 1.0), ("nu", 1.0), ("x", 0.3)]),
                ]
            },
            domain: |p| {
                let (mu, nu, x) = (get(p, "mu")?, get(p, "nu")?, get(p, "x")?);
                require(mu > -1.0 && nu > -1.0, "mu > -1 and nu > -1 required")?;
                require(mu + nu > 0.0, "mu + nu > 0 required")?;
                require(x > 0.0 && x < 0.5, "0 < x < 1/2 required")
            },
            series: |p, b| {
                let (mu, nu, x) = (get(p, "mu")?, get(p, "nu")?, get(p, "x")?);
                let s = mu + nu;
                let coeff = CoefficientRule::Custom(Arc::new(move |n: i64| {
                    // C(s + n − 1, n) = Π_{i<n} (s + i)/(i + 1)
                    let binom = (0..n).fold(1.0, |acc, i| acc * (s + i as f64) / (i + 1) as f64);
                    binom * (s + 2.0 * n as f64).powf(-(s + 1.0))
                }));
                let spec = SeriesSpec {
                    kind: SeriesKind::K2,
                    coeff,
                    alpha: 1.0,
                    beta: mu,
                    gamma: 1.0,
                    epsilon: nu,
                    c: 2.0 * x,
                    b: s * x,
                    f: 2.0 * x,
                    g: s * x,
                    range: SumRange::OneSided { from: 0 },
                };
                let pref = s * gamma_fn(1.0 + mu)? * gamma_fn(1.0 + nu)?;
                Ok(affine(eval_series(&spec, b)?, 0.0, pref))
            },
            closed: |p, _| Ok((0.5 * get(p, "x")?).powf(get(p, "mu")? + get(p, "nu")?)),
            structural: None,
        },
        Identity {
            id: "eq44",
            statement: "sum_{n>=1} J_{2n}(2nz)/n^2 = z^2/2",
            param_names: &["z"],
            tolerance: 1e-10,
            series_on_left: true,
            defaults: || vec![params(&[("z", 0.2)]), params(&[("z", 0.4)])],
            domain: |p| below_half(get(p, "z")?, "z"),
            series: |p, b| first_kind_series(1.0, get(p, "z")?, b),
            closed: |p, b| eval_first_kind(1.0, get(p, "z")?, b),
            structural: None,
        },
        Identity {
            id: "eq45",
            statement: "sum_{n>=1} J_{2n}(2nz)/n^(2p) = sum_k z^(2k) sum_{j=1..k} (-1)^(j+k) j^(2(k-p)) / ((k-j)!(k+j)!)",
            param_names: &["p", "z"],
            tolerance: 1e-10,
            series_on_left: true,
            defaults: || {
                vec![
                    params(&[("p", 2.0), ("z", 0.3)]),
                    params(&[("p", 3.0), ("z", 0.3)]),
                    params(&[("p", 1.5), ("z", 0.3)]),
                ]
            },
            domain: |p| {
                require(get(p, "p")? > 0.0, "p > 0 required")?;
                below_half(get(p, "z")?, "z")
            },
            series: |p, b| first_kind_series(get(p, "p")?, get(p, "z")?, b),
            closed: |p, b| eval_first_kind(get(p, "p")?, get(p, "z")?, b),
            structural: None,
        },
        Identity {
            id: "eq47",
            statement: "sum_{n>=1} J_n(nz)^2/n^(2p) = sum_k z^(2k) [G(k+1/2)/(k! sqrt(pi))] sum_{j<k} (-1)^j (k-j)^(2(k-p)) / (j!(2k-j)!)",
            param_names: &["p", "z"],
            tolerance: 1e-8,
            series_on_left: true,
            defaults: || {
                vec![
                    params(&[("p", 1.0), ("z", 0.3)]),
                    params(&[("p", 2.0), ("z", 0.3)]),
                    params(&[("p", 1.5), ("z", 0.3)]),
                ]
            },
            domain: |p| {
                let (pp, z) = (get(p, "p")?, get(p, "z")?);
                require(pp > 0.0, "p > 0 required")?;
                if pp.fract() == 0.0 {
                    require(z.abs() < 1.0, "|z| < 1 required")
                } else {
                    below_half(z, "z")
                }
            },
            series: |p, b| {
                let (pp, z) = (get(p, "p")?, get(p, "z")?);
                let spec = k2(CoefficientRule::Power { s: -2.0 * pp }, 1.0, 0.0, 1.0, 0.0, z, 0.0, 1);
                eval_series(&spec, b)
            },
            closed: |p, b| eval_second_kind_neg(get(p, "p")?, get(p, "z")?, b),
            structural: None,
        },
        Identity {
            id: "eq58",
            statement: "sum_{n>=1} J_n(2nz)^2 = -1/2 + 1/(2 sqrt(1-4z^2))",
            param_names: &["z"],
            tolerance: 1e-9,
            series_on_left: true,
            defaults: || vec![params(&[("z", 0.2)]), params(&[("z", 0.3)])],
            domain: |p| below_half(get(p, "z")?, "z"),
            series: |p, b| {
                let z = get(p, "z")?;
                eval_series(&k2(CoefficientRule::Constant, 1.0, 0.0, 1.0, 0.0, 2.0 * z, 0.0, 1), b)
            },
            closed: |p, _| k2_q0(get(p, "z")?),
            structural: None,
        },
        Identity {
            id: "eq62",
            statement: "sum_{n>=1} n^(2q) J_n(2nz)^2 = z^2 P_q(z^2) / (1-4z^2)^(3q+1/2)",
            param_names: &["q", "z"],
            tolerance: 1e-6,
            series_on_left: true,
            defaults: || (1..=4).map(|q| params(&[("q", f64::from(q)), ("z", 0.3)])).collect(),
            domain: |p| {
                let q = get_int(p, "q")?;
                require((1..=64).contains(&q), "integer q in 1..=64 required")?;
                below_half(get(p, "z")?, "z")
            },
            series: |p, b| {
                let (q, z) = (get_int(p, "q")? as f64, get(p, "z")?);
                let spec = k2(CoefficientRule::Power { s: 2.0 * q }, 1.0, 0.0, 1.0, 0.0, 2.0 * z, 0.0, 1);
                eval_series(&spec, b)
            },
            closed: |p, _| eval_k2_pos(get_int(p, "q")? as u32, get(p, "z")?),
            structural: Some(numerator_structure),
        },
    ]
}

fn nielsen_defaults() -> Vec<Params> {
    [(0.25, 0.3), (1.5, 0.3), (0.0, 0.45)]
        .iter()
        .map(|&(nu, x)| params(&[("nu", nu), ("x", x)]))
        .collect()
}

fn first_kind_series(p: f64, z: f64, b: &AccuracyBudget) -> Result<EvalReport> {
    let spec = SeriesSpec {
        kind: SeriesKind::K1,
        coeff: CoefficientRule::Power { s: -2.0 * p },
        alpha: 2.0,
        beta: 0.0,
        gamma: 0.0,
        epsilon: 0.0,
        c: 2.0 * z,
        b: 0.0,
        f: 0.0,
        g: 0.0,
        range: SumRange::OneSided { from: 1 },
    };
    eval_series(&spec, b)
}

/// Every catalog entry, in a fixed order.
pub fn catalog() -> &'static [Identity] {
    static CATALOG: std::sync::OnceLock<Vec<Identity>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn find_identity(id: &str) -> Result<&'static Identity> {
    catalog()
        .iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Compare both sides of identity `id` at `params` (missing names are taken
/// from the first default set).
pub fn identity_check(
    id: &str,
    params: &Params,
    budget: &AccuracyBudget,
) -> Result<IdentityReport> {
    let identity = find_identity(id)?;
    let p = identity.resolve_params(params)?;
    identity.check(&p, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> AccuracyBudget {
        AccuracyBudget::default()
    }

    #[test]
    fn ids_are_unique_and_stable() {
        let ids: Vec<&str> = catalog().iter().map(|i| i.id).collect();
        assert_eq!(
            ids,
            [
                "schott", "eq6", "eq16", "eq17", "eq28", "eq29", "eq30", "eq31", "eq40", "eq44",
                "eq45", "eq47", "eq58", "eq62"
            ]
        );
        assert!(matches!(
            find_identity("eq99"),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn unit_sum_at_desk_value() {
        let r = identity_check("eq30", &params(&[("x", 0.3)]), &b()).unwrap();
        assert_eq!(r.rhs, 1.25);
        assert!(r.gap <= 1e-10 && r.pass, "{r:?}");
    }

    #[test]
    fn domain_rejection() {
        let err = identity_check("eq30", &params(&[("x", 0.6)]), &b()).unwrap_err();
        assert!(err.to_string().contains("|x| < 1/2 required"));
        let err = identity_check("schott", &params(&[("w", 0.1)]), &b()).unwrap_err();
        assert!(err.to_string().contains("unknown parameter `w`"));
        assert!(identity_check("eq16", &params(&[("n", 1.5)]), &b()).is_err());
    }

    #[test]
    fn odd_nielsen_orders_sum_to_2n_plus_1() {
        // J_{n+ν}((2n+1)x) J_{n+1−ν}((2n+1)x): the orders sum to 2n+1
        let spec = k2(
            CoefficientRule::Constant,
            1.0,
            0.25,
            1.0,
            1.0 - 0.25,
            0.6,
            0.3,
            0,
        );
        for n in 0..5 {
            let nf = n as f64;
            let o1 = spec.alpha * nf + spec.beta;
            let o2 = spec.gamma * nf + spec.epsilon;
            assert_eq!(o1 + o2, 2.0 * nf + 1.0);
        }
        let r = identity_check("eq29", &params(&[("nu", 0.25), ("x", 0.3)]), &b()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn unit_sum_starts_at_one() {
        // with the n = 0 term J_0(0)^2 = 1 included the identity would be off by 2
        let r = identity_check("eq30", &params(&[("x", 0.2)]), &b()).unwrap();
        assert!(r.abs_gap < 1e-10);
        let with_zero = r.series.value + 2.0;
        assert!((with_zero - r.closed).abs() > 1.0);
    }

    #[test]
    fn double_series_desk_value() {
        let r = identity_check(
            "eq40",
            &params(&[("mu", 0.5), ("nu", 0.5), ("x", 0.3)]),
            &b(),
        )
        .unwrap();
        assert!((r.lhs - 0.15).abs() < 1e-15);
        assert!(r.gap <= 1e-8, "{r:?}");
    }

    #[test]
    fn tabulated_numerators_pass_structure_check() {
        for q in 1..=4 {
            numerator_structure(&params(&[("q", f64::from(q))])).unwrap();
        }
    }
}
