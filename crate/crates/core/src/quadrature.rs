//! Gauss–Legendre rules and an adaptive integrator used by the integral
//! representations and as an independent oracle for spectral formulas.

use std::sync::OnceLock;

use crate::linalg::{CMatrix, Complex};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let (pn, pm) = if n == 1 { (x, 1.0) } else { (p1, p0) };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

const PANEL: usize = 20;

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL))
}

trait Accumulate: Clone {
    fn axpy(&mut self, w: f64, x: &Self);
    fn scaled_zero(&self) -> Self;
    fn dist(&self, other: &Self) -> f64;
    fn size(&self) -> f64;
}

impl Accumulate for f64 {
    fn axpy(&mut self, w: f64, x: &Self) {
        *self += w * x;
    }
    fn scaled_zero(&self) -> Self {
        0.0
    }
    fn dist(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
    fn size(&self) -> f64 {
        self.abs()
    }
}

impl Accumulate for CMatrix {
    fn axpy(&mut self, w: f64, x: &Self) {
        *self += x * Complex::new(w, 0.0);
    }
    fn scaled_zero(&self) -> Self {
        CMatrix::zeros(self.nrows(), self.ncols())
    }
    fn dist(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
    fn size(&self) -> f64 {
        self.norm()
    }
}

fn panel<T: Accumulate>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> T {
    let (x, w) = panel_rule();
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc: Option<T> = None;
    for (xi, wi) in x.iter().zip(w) {
        let v = f(mid + half * xi);
        match acc.as_mut() {
            Some(s) => s.axpy(wi * half, &v),
            None => {
                let mut s = v.scaled_zero();
                s.axpy(wi * half, &v);
                acc = Some(s);
            }
        }
    }
    acc.expect("rule has nodes")
}

fn adaptive<T: Accumulate>(f: &impl Fn(f64) -> T, a: f64, b: f64, whole: T, tol: f64, depth: u32) -> T {
    let m = 0.5 * (a + b);
    let left = panel(f, a, m);
    let right = panel(f, m, b);
    let mut both = left.clone();
    both.axpy(1.0, &right);
    if depth == 0 || both.dist(&whole) <= tol * both.size().max(1e-300) {
        return both;
    }
    let mut l = adaptive(f, a, m, left, tol, depth - 1);
    let r = adaptive(f, m, b, right, tol, depth - 1);
    l.axpy(1.0, &r);
    l
}

const MAX_DEPTH: u32 = 40;

/// Adaptive Gauss–Legendre on `[a, b]` with relative tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let whole = panel(&f, a, b);
    adaptive(&f, a, b, whole, tol, MAX_DEPTH)
}

pub fn integrate_matrix(f: impl Fn(f64) -> CMatrix, a: f64, b: f64, tol: f64) -> CMatrix {
    let whole = panel(&f, a, b);
    adaptive(&f, a, b, whole, tol, MAX_DEPTH)
}

/// `∫_0^∞ f(s) ds` through the substitution `s = u/(1-u)`.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    integrate(|u| f(u / (1.0 - u)) / ((1.0 - u) * (1.0 - u)), 0.0, 1.0, tol)
}

pub fn integrate_half_line_matrix(f: impl Fn(f64) -> CMatrix, tol: f64) -> CMatrix {
    integrate_matrix(
        |u| {
            let jac = 1.0 / ((1.0 - u) * (1.0 - u));
            f(u / (1.0 - u)) * Complex::new(jac, 0.0)
        },
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(7);
        // Exact for degree <= 13.
        let approx: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(12)).sum();
        assert!((approx - 2.0 / 13.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn large_rule_weights_sum_to_two() {
        let (x, w) = gauss_legendre(200);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-12);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn half_line_matches_closed_forms() {
        let v = integrate_half_line(|s| 1.0 / ((1.0 + s) * (1.0 + s)), 1e-13);
        assert!((v - 1.0).abs() < 1e-12);
        let a = 3.0;
        let log = integrate_half_line(|s| 1.0 / (1.0 + s) - 1.0 / (a + s), 1e-13);
        assert!((log - a.ln()).abs() < 1e-11);
    }
}
