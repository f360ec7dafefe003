use nalgebra::SymmetricEigen;

use super::{CMatrix, Complex, Hermitian};
use crate::{Error, Result};

/// Eigen-decomposition `U diag(λ) U*` with ascending eigenvalues.
#[derive(Clone, Debug)]
pub struct Spectral {
    values: Vec<f64>,
    vectors: CMatrix,
}

pub fn spectral_decompose(h: &Hermitian) -> Result<Spectral> {
    Spectral::of_matrix(h.matrix())
}

impl Spectral {
    /// Decomposes a matrix already known to be exactly Hermitian.
    pub(crate) fn of_matrix(m: &CMatrix) -> Result<Self> {
        let n = m.nrows();
        let iterations = 1000 * n.max(1);
        let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, iterations)
            .ok_or(Error::Eigen { dim: n, iterations })?;
        // Stable sort: equal eigenvalues keep the solver's column order.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok(Self { values, vectors })
    }

    /// Builds from parts, re-sorting ascending. `vectors` must be unitary.
    pub(crate) fn from_parts(values: Vec<f64>, vectors: CMatrix) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        if order.iter().enumerate().all(|(i, &k)| i == k) {
            return Self { values, vectors };
        }
        let sorted = order.iter().map(|&k| values[k]).collect();
        let vecs = CMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
        Self { values: sorted, vectors: vecs }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `U diag(g) U*` for explicit diagonal values.
    pub fn rebuild_with(&self, g: &[f64]) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &gj) in g.iter().enumerate() {
            scaled.column_mut(j).scale_mut(gj);
        }
        let mut out = &scaled * self.vectors.adjoint();
        symmetrize_in_place(&mut out);
        out
    }

    /// `U diag(f(λ)) U*`.
    pub fn rebuild(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let g: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        self.rebuild_with(&g)
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.rebuild_with(&self.values)
    }

    /// `U* A U`, the matrix `A` expressed in the eigenbasis.
    pub fn to_eigenbasis(&self, a: &CMatrix) -> CMatrix {
        self.vectors.adjoint() * a * &self.vectors
    }

    /// `U A U*`, inverse of [`Spectral::to_eigenbasis`].
    pub fn from_eigenbasis(&self, a: &CMatrix) -> CMatrix {
        &self.vectors * a * self.vectors.adjoint()
    }
}

pub(crate) fn symmetrize_in_place(m: &mut CMatrix) {
    let n = m.nrows();
    for i in 0..n {
        m[(i, i)] = Complex::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
}

/// Eigenvalue tie rule for divided differences.
pub fn is_tie(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-7 * (1.0 + a.abs())
}

/// First divided difference `f[a, b]`, switching to `f'` at the midpoint on ties.
pub fn divided_difference(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if is_tie(a, b) {
        df(0.5 * (a + b))
    } else {
        (f(a) - f(b)) / (a - b)
    }
}

/// Second divided difference `f[a, b, c]`; `f''/2` when all three tie.
pub fn divided_difference2(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    d2f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    c: f64,
) -> f64 {
    let mut v = [a, b, c];
    v.sort_by(f64::total_cmp);
    let [x, y, z] = v;
    if is_tie(z, x) {
        return 0.5 * d2f((x + y + z) / 3.0);
    }
    let dd = |p: f64, q: f64| divided_difference(&f, &df, p, q);
    (dd(y, z) - dd(x, y)) / (z - x)
}
