use std::cell::RefCell;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::specfun::{bessel_j, AccuracyBudget};

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// ∫_a^b f with an n-point Gauss–Legendre rule.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, nodes: usize) -> Result<f64> {
    if nodes < 2 {
        return Err(domain(format!(
            "at least 2 quadrature nodes required, got {nodes}"
        )));
    }
    let (x, w) = gauss_legendre_rule(nodes);
    let (half, mid) = (0.5 * (b - a), 0.5 * (b + a));
    Ok(half
        * x.iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * f(mid + half * xi))
            .sum::<f64>())
}

/// Both sides of J_μ(x)J_ν(x) = (2/π)∫_0^{π/2} J_{μ+ν}(2x cos θ) cos((μ−ν)θ) dθ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

pub fn product_rep_check(mu: f64, nu: f64, x: f64) -> Result<ProductCheck> {
    product_rep_check_with_nodes(mu, nu, x, 64)
}

pub fn product_rep_check_with_nodes(
    mu: f64,
    nu: f64,
    x: f64,
    nodes: usize,
) -> Result<ProductCheck> {
    let integral_orders = mu.fract() == 0.0 && nu.fract() == 0.0;
    if mu + nu <= -1.0 && !integral_orders {
        return Err(domain(format!(
            "product representation needs mu + nu > -1, got {}",
            mu + nu
        )));
    }
    let budget = AccuracyBudget::default();
    let lhs = bessel_j(mu, x, &budget)? * bessel_j(nu, x, &budget)?;
    let order = mu + nu;
    let failure = RefCell::new(None);
    let integral = gauss_legendre(
        |t| match bessel_j(order, 2.0 * x * t.cos(), &budget) {
            Ok(j) => j * ((mu - nu) * t).cos(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        PI / 2.0,
        nodes,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let rhs = 2.0 / PI * integral;
    Ok(ProductCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        assert!((gauss_legendre(|_| 1.0, 0.0, 1.0, 8).unwrap() - 1.0).abs() < 1e-15);
        // degree 2n-1 = 15 is exact for 8 nodes
        let v = gauss_legendre(|x| x.powi(15) + x.powi(4), -1.0, 2.0, 8).unwrap();
        let exact = (2f64.powi(16) - 1.0) / 16.0 + (32.0 + 1.0) / 5.0;
        assert!((v - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn trigonometric_integrals() {
        assert!((gauss_legendre(f64::cos, 0.0, PI / 2.0, 16).unwrap() - 1.0).abs() < 1e-13);
        let v = gauss_legendre(|x| x.cos().powi(2), 0.0, PI / 2.0, 16).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_two() {
        for n in [2, 3, 17, 64, 128] {
            let (_, w) = gauss_legendre_rule(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n={n}");
        }
        assert!(gauss_legendre(|x| x, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn product_representation() {
        let c = product_rep_check(1.0, 1.0, 1.0).unwrap();
        assert!(c.gap <= 1e-10, "{c:?}");
        let c = product_rep_check(0.3, 0.7, 1.2).unwrap();
        assert!(c.gap <= 1e-9, "{c:?}");
        let c = product_rep_check(0.0, 0.0, 0.0).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-15 && (c.rhs - 1.0).abs() < 1e-13);
        assert!(product_rep_check(-0.8, -0.7, 1.0).is_err());
    }
}
