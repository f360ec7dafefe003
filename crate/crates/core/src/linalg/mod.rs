//! Complex Hermitian linear algebra: structured matrix types, spectral
//! calculus, tensor structure, norms, seeded sampling and JSON interchange.

mod hermitian;
pub mod interchange;
mod norms;
pub mod random;
mod spectral;
mod tensor;

use nalgebra::{DMatrix, DVector};

pub use hermitian::{matrix_function, pseudo_inverse, Density, Domain, Hermitian, Psd};
pub use norms::{frobenius, inner, operator_norm, real_trace, schatten_norm, singular_values};
pub use spectral::{divided_difference, divided_difference2, is_tie, spectral_decompose, Spectral};
pub use tensor::{embed_identity, kron, partial_trace, FactorDims};

pub type Complex = num_complex::Complex64;
pub type CMatrix = DMatrix<Complex>;
pub type CVector = DVector<Complex>;

/// Relative tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Relative tolerance below which negative eigenvalues are clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Relative eigenvalue floor for logarithms and negative powers.
pub const EIG_FLOOR: f64 = 1e-12;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// Real diagonal matrix.
pub fn diag(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(values.len(), values.iter().map(|&v| c(v))))
}

/// Matrix unit `E_ij` of size `n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut e = CMatrix::zeros(n, n);
    e[(i, j)] = c(1.0);
    e
}

/// Column-stacking vectorization.
pub fn vec_col(x: &CMatrix) -> CVector {
    CVector::from_column_slice(x.as_slice())
}

/// Inverse of [`vec_col`].
pub fn unvec_col(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_column_slice(rows, cols, v.as_slice())
}

/// Largest absolute entry-wise difference.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn is_finite(a: &CMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
