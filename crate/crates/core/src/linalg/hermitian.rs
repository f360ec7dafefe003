use super::spectral::symmetrize_in_place;
use super::{is_finite, CMatrix, Complex, Spectral, EIG_FLOOR, HERMITIAN_TOL, PSD_TOL};
use crate::{Error, Result};

/// Spectrum requirement of a scalar function lifted by the spectral calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    AllReals,
    /// Rejects eigenvalues at or below `1e-12 · λ_max`.
    PositiveOnly,
    /// Clamps eigenvalues within the PSD tolerance to zero; the function must
    /// define its own value at zero (e.g. `0 · log 0 = 0`).
    NonNegative,
}

/// A square matrix equal to its conjugate transpose, stored exactly Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct Hermitian(CMatrix);

impl Hermitian {
    /// Symmetrizes `(A + A*)/2` after checking the relative defect is below `1e-12`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        if !is_finite(&m) {
            return Err(Error::Parameter("non-finite entry".into()));
        }
        let norm = m.norm();
        let defect = if norm > 0.0 { (&m - m.adjoint()).norm() / norm } else { 0.0 };
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self::hermitian_part(m))
    }

    /// Projects onto the Hermitian part `(A + A*)/2` without checking.
    pub fn hermitian_part(mut m: CMatrix) -> Self {
        assert!(m.is_square(), "hermitian_part needs a square matrix");
        symmetrize_in_place(&mut m);
        Self(m)
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        Self(super::diag(values))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }

    pub fn spectral(&self) -> Result<Spectral> {
        Spectral::of_matrix(&self.0)
    }

    pub fn apply(&self, f: impl Fn(f64) -> f64, domain: Domain, name: &'static str) -> Result<Hermitian> {
        let spec = self.spectral()?;
        apply_spectral(&spec, f, domain, name).map(Hermitian)
    }

    /// Matrix exponential, always positive definite.
    pub fn exp(&self) -> Result<Psd> {
        let spec = self.spectral()?;
        let values: Vec<f64> = spec.values().iter().map(|&l| l.exp()).collect();
        Ok(Psd::from_spectral(Spectral::from_parts(values, spec.vectors().clone())))
    }

    pub fn scale(&self, s: f64) -> Hermitian {
        Hermitian(&self.0 * Complex::new(s, 0.0))
    }

    pub fn add(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 - &other.0)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.spectral()?.min())
    }
}

fn apply_spectral(spec: &Spectral, f: impl Fn(f64) -> f64, domain: Domain, name: &'static str) -> Result<CMatrix> {
    let vals = domain_values(spec, domain, name)?;
    let g: Vec<f64> = vals.iter().map(|&l| f(l)).collect();
    if let Some(&bad) = g.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain { function: name, eigenvalue: bad });
    }
    Ok(spec.rebuild_with(&g))
}

fn domain_values(spec: &Spectral, domain: Domain, name: &'static str) -> Result<Vec<f64>> {
    match domain {
        Domain::AllReals => Ok(spec.values().to_vec()),
        Domain::PositiveOnly => {
            let floor = EIG_FLOOR * spec.max();
            match spec.values().iter().find(|&&l| l <= floor || l <= 0.0) {
                Some(&bad) => Err(Error::Domain { function: name, eigenvalue: bad }),
                None => Ok(spec.values().to_vec()),
            }
        }
        Domain::NonNegative => {
            let tol = PSD_TOL * spec.max_abs();
            // Eigensolver noise on a singular input is of order eps·λ_max; fractional
            // powers would amplify it, so anything below the definiteness floor is zero.
            let floor = EIG_FLOOR * spec.max_abs();
            spec.values()
                .iter()
                .map(|&l| {
                    if l < -tol {
                        Err(Error::Domain { function: name, eigenvalue: l })
                    } else if l <= floor {
                        Ok(0.0)
                    } else {
                        Ok(l)
                    }
                })
                .collect()
        }
    }
}

/// `U f(diag λ) U*` for a Hermitian input, checking the spectrum against `domain`.
pub fn matrix_function(h: &Hermitian, f: impl Fn(f64) -> f64, domain: Domain) -> Result<Hermitian> {
    h.apply(f, domain, "matrix function")
}

/// Positive semidefinite matrix with a cached spectral decomposition.
///
/// Eigenvalues in `[-psd_tol, 0)` are clamped to zero, where
/// `psd_tol = 1e-10 · max |λ|`.
#[derive(Clone, Debug)]
pub struct Psd {
    base: Hermitian,
    spec: Spectral,
}

impl Psd {
    pub fn new(h: Hermitian) -> Result<Self> {
        let spec = h.spectral()?;
        let tol = PSD_TOL * spec.max_abs();
        if spec.min() < -tol {
            return Err(Error::NotPsd { eigenvalue: spec.min() });
        }
        if spec.min() < 0.0 {
            let clamped: Vec<f64> = spec.values().iter().map(|&l| l.max(0.0)).collect();
            return Ok(Self::from_spectral(Spectral::from_parts(clamped, spec.vectors().clone())));
        }
        Ok(Self { base: h, spec })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(Hermitian::new(m)?)
    }

    /// Builds from a spectrum known to be nonnegative.
    pub(crate) fn from_spectral(spec: Spectral) -> Self {
        debug_assert!(spec.min() >= 0.0);
        Self { base: Hermitian(spec.reconstruct()), spec }
    }

    pub fn from_diagonal(values: &[f64]) -> Result<Self> {
        Self::new(Hermitian::from_real_diagonal(values))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_spectral(Spectral::from_parts(vec![1.0; n], CMatrix::identity(n, n)))
    }

    pub fn hermitian(&self) -> &Hermitian {
        &self.base
    }

    pub fn matrix(&self) -> &CMatrix {
        self.base.matrix()
    }

    pub fn spectral(&self) -> &Spectral {
        &self.spec
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.spec.values()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn trace(&self) -> f64 {
        self.spec.values().iter().sum()
    }

    pub fn psd_tol(&self) -> f64 {
        PSD_TOL * self.spec.max_abs()
    }

    /// Number of eigenvalues above the PSD tolerance.
    pub fn support_rank(&self) -> usize {
        let tol = self.psd_tol();
        self.spec.values().iter().filter(|&&l| l > tol).count()
    }

    /// Smallest eigenvalue above the PSD tolerance (zero for the zero matrix).
    pub fn eig_floor(&self) -> f64 {
        let tol = self.psd_tol();
        self.spec.values().iter().copied().find(|&l| l > tol).unwrap_or(0.0)
    }

    /// True when every eigenvalue clears the `1e-12 · λ_max` floor.
    pub fn is_definite(&self) -> bool {
        self.spec.max() > 0.0 && self.spec.min() > EIG_FLOOR * self.spec.max()
    }

    pub fn apply(&self, f: impl Fn(f64) -> f64, domain: Domain, name: &'static str) -> Result<Hermitian> {
        apply_spectral(&self.spec, f, domain, name).map(Hermitian)
    }

    /// Spectral map with a nonnegative result, reusing the eigenvectors.
    pub fn apply_psd(&self, f: impl Fn(f64) -> f64, domain: Domain, name: &'static str) -> Result<Psd> {
        let vals = domain_values(&self.spec, domain, name)?;
        let g: Vec<f64> = vals.iter().map(|&l| f(l)).collect();
        if let Some(&bad) = g.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Domain { function: name, eigenvalue: bad });
        }
        Ok(Psd::from_spectral(Spectral::from_parts(g, self.spec.vectors().clone())))
    }

    /// `X^t`; negative exponents require a definite input.
    pub fn pow(&self, t: f64) -> Result<Psd> {
        if t < 0.0 {
            self.apply_psd(|l| l.powf(t), Domain::PositiveOnly, "negative power")
        } else if t == 0.0 {
            Ok(Psd::identity(self.dim()))
        } else {
            self.apply_psd(|l| l.powf(t), Domain::NonNegative, "power")
        }
    }

    pub fn sqrt(&self) -> Psd {
        self.apply_psd(f64::sqrt, Domain::NonNegative, "sqrt")
            .expect("clamped spectrum is nonnegative")
    }

    pub fn inv(&self) -> Result<Psd> {
        self.apply_psd(|l| 1.0 / l, Domain::PositiveOnly, "inverse")
    }

    pub fn log(&self) -> Result<Hermitian> {
        self.apply(f64::ln, Domain::PositiveOnly, "log")
    }

    /// Moore–Penrose inverse: eigenvalues above the PSD tolerance are inverted, others zeroed.
    pub fn pinv(&self) -> Psd {
        let tol = self.psd_tol();
        let g: Vec<f64> = self.spec.values().iter().map(|&l| if l > tol { 1.0 / l } else { 0.0 }).collect();
        Psd::from_spectral(Spectral::from_parts(g, self.spec.vectors().clone()))
    }

    /// Orthogonal projector onto the support.
    pub fn support_projector(&self) -> CMatrix {
        let tol = self.psd_tol();
        self.spec.rebuild(|l| if l > tol { 1.0 } else { 0.0 })
    }

    pub fn scale(&self, s: f64) -> Psd {
        assert!(s >= 0.0, "PSD scaling needs a nonnegative factor");
        let g: Vec<f64> = self.spec.values().iter().map(|&l| l * s).collect();
        Psd { base: self.base.scale(s), spec: Spectral::from_parts(g, self.spec.vectors().clone()) }
    }

    /// Convex combination `(1-w) self + w other`.
    pub fn mix(&self, other: &Psd, w: f64) -> Result<Psd> {
        Psd::new(self.base.scale(1.0 - w).add(&other.base.scale(w)))
    }
}

pub fn pseudo_inverse(p: &Psd) -> Psd {
    p.pinv()
}

/// Unit-trace PSD matrix.
#[derive(Clone, Debug)]
pub struct Density(Psd);

impl Density {
    /// Renormalizes to unit trace.
    pub fn new(p: Psd) -> Result<Self> {
        let tr = p.trace();
        if !(tr > 0.0) {
            return Err(Error::Parameter(format!("density needs positive trace, got {tr}")));
        }
        Ok(Self(p.scale(1.0 / tr)))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(Psd::from_matrix(m)?)
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self(Psd::identity(n).scale(1.0 / n as f64))
    }

    pub fn psd(&self) -> &Psd {
        &self.0
    }

    pub fn into_psd(self) -> Psd {
        self.0
    }

    pub fn matrix(&self) -> &CMatrix {
        self.0.matrix()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}
