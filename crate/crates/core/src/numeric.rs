//! Finite-difference helpers on uniformly sampled multivector sequences.

use crate::clifford::Multivector;
use crate::error::{Error, Result};

/// Derivative of a uniformly sampled sequence: central differences inside,
/// second-order one-sided differences at both ends.
pub fn derivative(values: &[Multivector], h: f64) -> Result<Vec<Multivector>> {
    let n = values.len();
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, got: n });
    }
    if !(h > 0.0) {
        return Err(Error::InvalidParameter {
            name: "h",
            reason: format!("sample spacing must be positive, got {h}"),
        });
    }
    let mut out = Vec::with_capacity(n);
    out.push((values[0] * -3.0 + values[1] * 4.0 - values[2]) / (2.0 * h));
    for k in 1..n - 1 {
        out.push((values[k + 1] - values[k - 1]) / (2.0 * h));
    }
    out.push((values[n - 1] * 3.0 - values[n - 2] * 4.0 + values[n - 3]) / (2.0 * h));
    Ok(out)
}

/// Fourth-order central difference of `f` at `t`.
pub fn central_derivative4<F>(f: F, t: f64, delta: f64) -> Multivector
where
    F: Fn(f64) -> Multivector,
{
    let d1 = f(t + delta) - f(t - delta);
    let d2 = f(t + 2.0 * delta) - f(t - 2.0 * delta);
    (d1 * 8.0 - d2) / (12.0 * delta)
}
