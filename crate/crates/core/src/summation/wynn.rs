use crate::error::{domain, Result};

/// Columns of the epsilon table beyond this are dominated by rounding noise.
pub const MAX_COLUMNS: usize = 50;

const TINY: f64 = 1e-300;

fn recip_diff(hi: f64, lo: f64) -> f64 {
    // a frozen (infinite) entry contributes nothing further
    if hi.is_infinite() || lo.is_infinite() {
        return 0.0;
    }
    let d = hi - lo;
    if d.abs() < TINY {
        f64::INFINITY
    } else {
        1.0 / d
    }
}

/// Wynn's epsilon transform of a sequence of partial sums.
///
/// Returns the last entry of the highest finite even column. Only the final
/// `MAX_COLUMNS + 1` partials can reach the deepest column, so earlier ones
/// are ignored.
pub fn wynn_epsilon(partials: &[f64]) -> Result<f64> {
    if partials.len() < 3 {
        return Err(domain(format!(
            "epsilon algorithm needs at least 3 partial sums, got {}",
            partials.len()
        )));
    }
    let tail = &partials[partials.len().saturating_sub(MAX_COLUMNS + 1)..];
    let mut prev = vec![0.0; tail.len() + 1]; // column -1
    let mut cur = tail.to_vec(); // column 0
    let mut best = *tail.last().expect("non-empty");
    for k in 1..tail.len() {
        let next: Vec<f64> = (0..cur.len() - 1)
            .map(|i| prev[i + 1] + recip_diff(cur[i + 1], cur[i]))
            .collect();
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            if let Some(&v) = cur.last() {
                if v.is_finite() {
                    best = v;
                }
            }
        }
    }
    Ok(best)
}
