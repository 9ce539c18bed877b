//! Fixtures shared by the criterion benches.

use kapteyn_core::summation::{CoefficientRule, SeriesKind, SeriesSpec, SumRange};

/// Σ_{n≥1} J_n(nz)², the slowest-decaying of the desk examples as z → 1.
pub fn schott_spec(z: f64) -> SeriesSpec {
    SeriesSpec {
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
    }
}

/// Σ_{n≥1} J_2n(2nz)/n^(2p).
pub fn first_kind_spec(p: f64, z: f64) -> SeriesSpec {
    SeriesSpec {
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
    }
}

/// Partial sums of the alternating harmonic series.
pub fn alternating_harmonic(n: usize) -> Vec<f64> {
    let mut s = 0.0;
    (1..=n)
        .map(|k| {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            s
        })
        .collect()
}
