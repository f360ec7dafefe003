use rand::Rng;

use super::{block_embed, corner, corner_embed, KrausChannel};
use crate::linalg::random::complex_gaussian;
use crate::linalg::{identity, max_abs_diff, matrix_unit, partial_trace, CMatrix, Complex, FactorDims};
use crate::{Error, Result};

/// Unital CP `Φ: M_p → M_q` written as `Φ(X) = Ξ(U* Ψ_m(X) U)` with `U` unitary on `C^{mp}`.
#[derive(Clone, Debug)]
pub struct StinespringFactorization {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub u: CMatrix,
}

/// Stacks the Kraus operators into the isometry `V = [V_1; …; V_m]` (`mp × q`)
/// and completes its columns to an orthonormal basis by Gram–Schmidt on Gaussian
/// vectors, orthogonalizing each candidate twice.
pub fn stinespring_factorize<R: Rng + ?Sized>(phi: &KrausChannel, rng: &mut R) -> Result<StinespringFactorization> {
    if !phi.is_unital() {
        return Err(Error::Precondition("Stinespring factorization needs a unital channel".into()));
    }
    let (p, q, m) = (phi.in_dim(), phi.out_dim(), phi.kraus_ops().len());
    let d = m * p;
    let mut u = CMatrix::zeros(d, d);
    for (j, v) in phi.kraus_ops().iter().enumerate() {
        u.view_mut((j * p, 0), (p, q)).copy_from(v);
    }
    let mut filled = q;
    let mut attempts = 0;
    while filled < d {
        attempts += 1;
        if attempts > 100 * d {
            return Err(Error::Singular("orthonormal completion did not converge".into()));
        }
        let mut g = complex_gaussian(d, 1, rng).column(0).into_owned();
        for _ in 0..2 {
            for c in 0..filled {
                let col = u.column(c);
                let proj: Complex = col.dotc(&g);
                g -= col * proj;
            }
        }
        let norm = g.norm();
        if norm < 1e-6 {
            continue;
        }
        u.set_column(filled, &(g / Complex::new(norm, 0.0)));
        filled += 1;
    }
    Ok(StinespringFactorization { m, p, q, u })
}

impl StinespringFactorization {
    /// `Ξ(U* Ψ_m(X) U)`.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.nrows() != self.p || x.ncols() != self.p {
            return Err(Error::Shape(format!("input must be {0}x{0}", self.p)));
        }
        corner(&(self.u.adjoint() * block_embed(x, self.m) * &self.u), self.q)
    }

    /// `Ψ_m†(U Ξ†(Y) U*)`.
    pub fn adjoint_apply(&self, y: &CMatrix) -> Result<CMatrix> {
        let inner = &self.u * corner_embed(y, self.m * self.p)? * self.u.adjoint();
        partial_trace(&inner, &FactorDims::new(vec![self.m, self.p])?, &[0])
    }

    pub fn unitarity_defect(&self) -> f64 {
        max_abs_diff(&(self.u.adjoint() * &self.u), &identity(self.m * self.p))
    }

    /// Largest entrywise error of the forward and adjoint forms against `phi` on matrix units.
    pub fn reconstruction_error(&self, phi: &KrausChannel) -> Result<f64> {
        let mut err: f64 = 0.0;
        for i in 0..self.p {
            for j in 0..self.p {
                let e = matrix_unit(self.p, i, j);
                err = err.max(max_abs_diff(&self.apply(&e)?, &phi.apply(&e)?));
            }
        }
        for i in 0..self.q {
            for j in 0..self.q {
                let e = matrix_unit(self.q, i, j);
                err = err.max(max_abs_diff(&self.adjoint_apply(&e)?, &phi.adjoint_apply(&e)?));
            }
        }
        Ok(err)
    }
}
