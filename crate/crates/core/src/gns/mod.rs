//! Superoperators on `M_n` under column stacking: `vec(AXB) = (B^T ⊗ A) vec(X)`,
//! so `L_X = I ⊗ X` and `R_X = X^T ⊗ I`.
//!
//! The primary paths never assemble `n² × n²` matrices: `G_f(X, Y)` acts in the
//! mixed eigenbasis by the kernel `f(λ_i/μ_j) μ_j` on `⟨v_j|K|u_i⟩`, where
//! `X u_i = λ_i u_i` and `Y v_j = μ_j v_j`.

use crate::linalg::{
    divided_difference, divided_difference2, identity, kron, unvec_col, vec_col, CMatrix, Complex, Hermitian, Psd, Spectral,
};
use crate::opfunc::OperatorFunction;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SuperOperator {
    n: usize,
    action: CMatrix,
}

impl SuperOperator {
    pub fn from_action(n: usize, action: CMatrix) -> Result<Self> {
        if action.nrows() != n * n || action.ncols() != n * n {
            return Err(Error::Shape(format!("superoperator on M_{n} needs a {0}x{0} action", n * n)));
        }
        Ok(Self { n, action })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, action: identity(n * n) }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn action(&self) -> &CMatrix {
        &self.action
    }

    pub fn apply(&self, k: &CMatrix) -> Result<CMatrix> {
        if k.nrows() != self.n || k.ncols() != self.n {
            return Err(Error::Shape(format!("input must be {0}x{0}", self.n)));
        }
        Ok(unvec_col(&(&self.action * vec_col(k)), self.n, self.n))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SuperOperator) -> Result<SuperOperator> {
        if self.n != other.n {
            return Err(Error::Shape("composing superoperators of different sizes".into()));
        }
        Ok(Self { n: self.n, action: &self.action * &other.action })
    }

    /// Adjoint with respect to the Hilbert–Schmidt inner product.
    pub fn adjoint(&self) -> SuperOperator {
        Self { n: self.n, action: self.action.adjoint() }
    }

    pub fn self_adjoint_defect(&self) -> f64 {
        (&self.action - self.action.adjoint()).camax()
    }

    /// Smallest eigenvalue of the Hermitian part of the action.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Hermitian::hermitian_part(self.action.clone()).min_eigenvalue()
    }
}

fn square(x: &CMatrix) -> Result<usize> {
    if x.nrows() != x.ncols() {
        return Err(Error::Shape("expected a square matrix".into()));
    }
    Ok(x.nrows())
}

/// `L_X K = XK`, action `I ⊗ X`.
pub fn lmul(x: &CMatrix) -> Result<SuperOperator> {
    let n = square(x)?;
    SuperOperator::from_action(n, kron(&identity(n), x))
}

/// `R_X K = KX`, action `X^T ⊗ I`.
pub fn rmul(x: &CMatrix) -> Result<SuperOperator> {
    let n = square(x)?;
    SuperOperator::from_action(n, kron(&x.transpose(), &identity(n)))
}

/// Joint spectral data of a pair of positive definite matrices.
#[derive(Clone, Debug)]
pub struct PencilSpectrum {
    x: Spectral,
    y: Spectral,
}

fn definite<'a>(p: &'a Psd, what: &'static str) -> Result<&'a Spectral> {
    if !p.is_definite() {
        return Err(Error::Domain { function: what, eigenvalue: p.spectral().min() });
    }
    Ok(p.spectral())
}

impl PencilSpectrum {
    pub fn new(x: &Psd, y: &Psd) -> Result<Self> {
        if x.dim() != y.dim() {
            return Err(Error::Shape("pencil needs equal dimensions".into()));
        }
        Ok(Self { x: definite(x, "pencil X")?.clone(), y: definite(y, "pencil Y")?.clone() })
    }

    pub fn x_eigs(&self) -> &[f64] {
        self.x.values()
    }

    pub fn y_eigs(&self) -> &[f64] {
        self.y.values()
    }

    pub fn x_basis(&self) -> &CMatrix {
        self.x.vectors()
    }

    pub fn y_basis(&self) -> &CMatrix {
        self.y.vectors()
    }

    /// `Σ g(λ_i, μ_j) ⟨v_j|K|u_i⟩ |v_j⟩⟨u_i|`.
    pub fn kernel_apply(&self, k: &CMatrix, g: impl Fn(f64, f64) -> f64) -> Result<CMatrix> {
        let n = self.x.dim();
        if k.nrows() != n || k.ncols() != n {
            return Err(Error::Shape(format!("input must be {n}x{n}")));
        }
        let (u, v) = (self.x.vectors(), self.y.vectors());
        let mut m = v.adjoint() * k * u;
        for j in 0..n {
            for i in 0..n {
                m[(j, i)] *= g(self.x.values()[i], self.y.values()[j]);
            }
        }
        Ok(v * m * u.adjoint())
    }
}

fn gf_kernel(f: &OperatorFunction) -> impl Fn(f64, f64) -> f64 + '_ {
    move |l, m| f.eval(l / m) * m
}

/// `G_f(X, Y) K = f(R_X L_Y^{-1}) L_Y K` for positive definite `X`, `Y`.
pub fn gf_apply(f: &OperatorFunction, x: &Psd, y: &Psd, k: &CMatrix) -> Result<CMatrix> {
    PencilSpectrum::new(x, y)?.kernel_apply(k, gf_kernel(f))
}

/// `G_f(X, Y)^{-1} K`, kernel `1/(f(λ_i/μ_j) μ_j)`.
pub fn gf_inv_apply(f: &OperatorFunction, x: &Psd, y: &Psd, k: &CMatrix) -> Result<CMatrix> {
    let pencil = PencilSpectrum::new(x, y)?;
    let g = gf_kernel(f);
    for &l in pencil.x_eigs() {
        for &m in pencil.y_eigs() {
            let v = g(l, m);
            if !(v.is_finite() && v.abs() > 1e-300) {
                return Err(Error::Singular(format!("{} vanishes at ratio {}", f.id(), l / m)));
            }
        }
    }
    pencil.kernel_apply(k, |l, m| 1.0 / g(l, m))
}

/// Explicit `f(X^T ⊗ Y^{-1}) (I ⊗ Y)`; the validation path for [`gf_apply`].
pub fn gf_superoperator(f: &OperatorFunction, x: &Psd, y: &Psd) -> Result<SuperOperator> {
    let n = x.dim();
    let y_inv = y.inv()?;
    definite(x, "G_f X")?;
    let pencil = Psd::from_matrix(Hermitian::hermitian_part(kron(&x.matrix().transpose(), y_inv.matrix())).into_matrix())?;
    let fm = f.apply(&pencil)?;
    SuperOperator::from_action(n, fm.matrix() * kron(&identity(n), y.matrix()))
}

fn rotate_apply(spec: &Spectral, b: &CMatrix, g: impl Fn(usize, usize, &CMatrix) -> Complex) -> CMatrix {
    let bt = spec.to_eigenbasis(b);
    let n = spec.dim();
    let out = CMatrix::from_fn(n, n, |i, j| g(i, j, &bt));
    spec.from_eigenbasis(&out)
}

/// `T_A(B) = d/dt log(A + tB)|₀ = ∫ (s+A)^{-1} B (s+A)^{-1} ds`, via first divided differences of `log`.
pub fn t_map(a: &Psd, b: &CMatrix) -> Result<CMatrix> {
    let spec = definite(a, "T_A")?;
    if b.nrows() != a.dim() || b.ncols() != a.dim() {
        return Err(Error::Shape("T_A argument has the wrong size".into()));
    }
    let l = spec.values();
    Ok(rotate_apply(spec, b, |i, j, bt| bt[(i, j)] * divided_difference(f64::ln, |x| 1.0 / x, l[i], l[j])))
}

/// `−d²/dt² log(X + tK)|₀ = 2∫ (s+X)^{-1} K (s+X)^{-1} K (s+X)^{-1} ds`.
pub fn hess_log(x: &Psd, k: &Hermitian) -> Result<Hermitian> {
    let spec = definite(x, "Hessian of log")?;
    if k.dim() != x.dim() {
        return Err(Error::Shape("Hessian argument has the wrong size".into()));
    }
    let l = spec.values();
    let n = l.len();
    let dd2 = |a: f64, b: f64, c: f64| divided_difference2(f64::ln, |x| 1.0 / x, |x| -1.0 / (x * x), a, b, c);
    let out = rotate_apply(spec, k.matrix(), |i, j, kt| {
        (0..n).map(|m| kt[(i, m)] * kt[(m, j)] * dd2(l[i], l[m], l[j])).sum::<Complex>() * -2.0
    });
    Ok(Hermitian::hermitian_part(out))
}

/// `Q(X, K) = tr[K T_X(K)]`.
pub fn q_form(x: &Psd, k: &Hermitian) -> Result<f64> {
    Ok((k.matrix() * t_map(x, k.matrix())?).trace().re)
}

fn check_traceless(k: &Hermitian) -> Result<()> {
    let tr = k.trace();
    let scale = 1.0 + k.matrix().camax();
    if tr.abs() > 1e-10 * scale {
        return Err(Error::Parameter(format!("metric tangent must be traceless, trace = {tr}")));
    }
    Ok(())
}

/// Wigner–Yanase–Dyson metric `tr[K ρ^{t−1} K ρ^{−t}]`, `t ∈ (0, 1)`.
pub fn metric_wyd(rho: &Psd, k: &Hermitian, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Parameter(format!("metric parameter must lie in (0, 1), got {t}")));
    }
    definite(rho, "WYD metric")?;
    check_traceless(k)?;
    let a = rho.pow(t - 1.0)?;
    let b = rho.pow(-t)?;
    Ok((k.matrix() * a.matrix() * k.matrix() * b.matrix()).trace().re)
}

/// Bogoliubov–Kubo–Mori metric, equal to `Q(ρ, K)`.
pub fn metric_bkm(rho: &Psd, k: &Hermitian) -> Result<f64> {
    check_traceless(k)?;
    q_form(rho, k)
}

/// `Σ |⟨v_j|u_i⟩|² g(λ_i, μ_j)` with `g(x, y) = x(log x − log y) + y − x`;
/// equals `D(X‖Y) + tr Y − tr X`.
pub fn donald_entropy(x: &Psd, y: &Psd) -> Result<f64> {
    let pencil = PencilSpectrum::new(x, y)?;
    let overlap = pencil.y_basis().adjoint() * pencil.x_basis();
    let g = |a: f64, b: f64| a * (a.ln() - b.ln()) + b - a;
    let mut total = 0.0;
    for (i, &l) in pencil.x_eigs().iter().enumerate() {
        for (j, &m) in pencil.y_eigs().iter().enumerate() {
            total += overlap[(j, i)].norm_sqr() * g(l, m);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
