use super::{CMatrix, Complex};
use crate::{Error, Result};

pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Schatten p-norm `(tr |A|^p)^{1/p}`; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Parameter(format!("Schatten norm needs p >= 1, got {p}")));
    }
    let s = singular_values(a);
    if p.is_infinite() {
        return Ok(s.first().copied().unwrap_or(0.0));
    }
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0.0);
    }
    // Scale by the largest singular value to avoid overflow for large p.
    let sum: f64 = s.iter().map(|&x| (x / top).powf(p)).sum();
    Ok(top * sum.powf(1.0 / p))
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.norm()
}

pub fn operator_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Hilbert–Schmidt inner product `tr[A* B]`.
pub fn inner(a: &CMatrix, b: &CMatrix) -> Complex {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn real_trace(a: &CMatrix) -> f64 {
    a.trace().re
}
