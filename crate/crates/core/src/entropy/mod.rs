//! Entropies and divergences in nats.

mod sample;

pub use sample::{classical_state, random_product_mixture, random_tripartite_from_pure, ssa_saturating_state};

use crate::linalg::{identity, operator_norm, partial_trace, CMatrix, CVector, Complex, Density, FactorDims, Hermitian, Psd};
use crate::{Error, Result};

/// Support-inclusion threshold on `‖(I − P_Y) P_X‖`.
pub const SUPPORT_DEFECT_TOL: f64 = 1e-8;

fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `−Σ λ log λ` with `0 log 0 = 0`. Unnormalized inputs are accepted as is.
pub fn von_neumann(rho: &Psd) -> f64 {
    let tol = rho.psd_tol();
    -rho.eigenvalues().iter().filter(|&&l| l > tol).map(|&l| xlogx(l)).sum::<f64>()
}

/// Shannon entropy of a probability vector, in nats.
pub fn shannon(p: &[f64]) -> f64 {
    -p.iter().map(|&x| xlogx(x)).sum::<f64>()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceResult {
    /// `+∞` exactly when the support condition fails.
    pub value: f64,
    pub support_condition_met: bool,
}

impl DivergenceResult {
    fn infinite() -> Self {
        Self { value: f64::INFINITY, support_condition_met: false }
    }

    fn finite(value: f64) -> Self {
        Self { value, support_condition_met: true }
    }
}

/// `‖(I − P_Y) P_X‖`: how far the support of `x` leaks outside that of `y`.
pub fn support_defect(x: &Psd, y: &Psd) -> f64 {
    let n = x.dim();
    operator_norm(&((identity(n) - y.support_projector()) * x.support_projector()))
}

/// Umegaki relative entropy `tr[X(log X − log Y)]`, with logs taken on supports.
pub fn umegaki(x: &Psd, y: &Psd) -> Result<DivergenceResult> {
    if x.dim() != y.dim() {
        return Err(Error::Shape("relative entropy needs equal dimensions".into()));
    }
    if support_defect(x, y) > SUPPORT_DEFECT_TOL {
        return Ok(DivergenceResult::infinite());
    }
    let xlx: f64 = x.eigenvalues().iter().filter(|&&l| l > x.psd_tol()).map(|&l| xlogx(l)).sum();
    let spec = y.spectral();
    let rotated = spec.to_eigenbasis(x.matrix());
    let tol = y.psd_tol();
    let xly: f64 = spec
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &mu)| mu > tol)
        .map(|(j, &mu)| mu.ln() * rotated[(j, j)].re)
        .sum();
    Ok(DivergenceResult::finite(xlx - xly))
}

/// Belavkin–Staszewski entropy `tr[Y log(Y^{1/2} X^{-1} Y^{1/2})]` of positive definite `Y`, `X`.
pub fn bs_entropy(y: &Psd, x: &Psd) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::Shape("BS entropy needs equal dimensions".into()));
    }
    if !y.is_definite() {
        return Err(Error::Domain { function: "BS entropy", eigenvalue: y.spectral().min() });
    }
    let ys = y.sqrt();
    let inner = Psd::new(Hermitian::hermitian_part(ys.matrix() * x.inv()?.matrix() * ys.matrix()))?;
    let log = inner.log()?;
    Ok((y.matrix() * log.matrix()).trace().re)
}

/// Power of `σ` on its support (zero on the kernel).
fn support_power(sigma: &Psd, s: f64) -> CMatrix {
    let tol = sigma.psd_tol();
    sigma.spectral().rebuild(|l| if l > tol { l.powf(s) } else { 0.0 })
}

/// Sandwiched Rényi divergence `(1/(α−1)) log tr[(σ^s ρ σ^s)^α]`, `s = (1−α)/(2α)`.
pub fn sandwiched_renyi(rho: &Psd, sigma: &Psd, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Parameter(format!("Rényi order must be positive and finite, got {alpha}")));
    }
    if alpha == 1.0 {
        return Err(Error::Parameter("order 1 is the Umegaki relative entropy; use umegaki".into()));
    }
    if rho.dim() != sigma.dim() {
        return Err(Error::Shape("Rényi divergence needs equal dimensions".into()));
    }
    if alpha > 1.0 && support_defect(rho, sigma) > SUPPORT_DEFECT_TOL {
        return Ok(f64::INFINITY);
    }
    let s = (1.0 - alpha) / (2.0 * alpha);
    let ss = support_power(sigma, s);
    let m = Psd::new(Hermitian::hermitian_part(&ss * rho.matrix() * &ss))?;
    let q: f64 = m.eigenvalues().iter().map(|&l| l.powf(alpha)).sum();
    if !(q > 0.0) {
        return Ok(f64::INFINITY);
    }
    Ok(q.ln() / (alpha - 1.0))
}

/// `Σ p log(p/q)`; `+∞` when some `q_i = 0 < p_i`.
pub fn classical_kl(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::Shape("probability vectors differ in length".into()));
    }
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return Ok(f64::INFINITY);
            }
            total += a * (a / b).ln();
        }
    }
    Ok(total)
}

/// Classical Rényi divergence `(1/(α−1)) log Σ p^α q^{1−α}`.
pub fn classical_renyi(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    let s: f64 = p
        .iter()
        .zip(q)
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| a.powf(alpha) * b.powf(1.0 - alpha))
        .sum();
    s.ln() / (alpha - 1.0)
}

/// Entropy of the marginal on the factors in `keep`.
pub fn marginal_entropy(rho: &Density, dims: &FactorDims, keep: &[usize]) -> Result<f64> {
    dims.check(rho.dim())?;
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let reduced = partial_trace(rho.matrix(), dims, &traced)?;
    Ok(von_neumann(&Psd::new(Hermitian::hermitian_part(reduced))?))
}

/// All seven entropies of a tripartite state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyVector {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s12: f64,
    pub s13: f64,
    pub s23: f64,
    pub s123: f64,
}

impl EntropyVector {
    pub fn as_array(&self) -> [f64; 7] {
        [self.s1, self.s2, self.s3, self.s12, self.s13, self.s23, self.s123]
    }

    /// Each entry in `[−tol, log d + tol]` for its subsystem dimension `d`.
    pub fn within_bounds(&self, dims: &FactorDims, tol: f64) -> bool {
        let d = dims.as_slice();
        let caps = [d[0], d[1], d[2], d[0] * d[1], d[0] * d[2], d[1] * d[2], d[0] * d[1] * d[2]];
        self.as_array()
            .iter()
            .zip(caps)
            .all(|(&s, cap)| s >= -tol && s <= (cap as f64).ln() + tol)
    }
}

fn require_parts(dims: &FactorDims, parts: usize) -> Result<()> {
    if dims.len() != parts {
        return Err(Error::Shape(format!("expected {parts} subsystems, got {}", dims.len())));
    }
    Ok(())
}

pub fn subsystem_entropies(rho: &Density, dims: &FactorDims) -> Result<EntropyVector> {
    require_parts(dims, 3)?;
    let s = |keep: &[usize]| marginal_entropy(rho, dims, keep);
    Ok(EntropyVector {
        s1: s(&[0])?,
        s2: s(&[1])?,
        s3: s(&[2])?,
        s12: s(&[0, 1])?,
        s13: s(&[0, 2])?,
        s23: s(&[1, 2])?,
        s123: von_neumann(rho.psd()),
    })
}

/// `S_12 − S_c` where `conditioned` (0 or 1) names the subtracted marginal.
pub fn conditional_entropy(rho: &Density, dims: &FactorDims, conditioned: usize) -> Result<f64> {
    require_parts(dims, 2)?;
    if conditioned > 1 {
        return Err(Error::Parameter(format!("conditioned system must be 0 or 1, got {conditioned}")));
    }
    Ok(von_neumann(rho.psd()) - marginal_entropy(rho, dims, &[conditioned])?)
}

/// `I(1;2|3) = S_13 + S_23 − S_123 − S_3`.
pub fn cmi(rho: &Density, dims: &FactorDims) -> Result<f64> {
    let e = subsystem_entropies(rho, dims)?;
    Ok(e.s13 + e.s23 - e.s123 - e.s3)
}

/// `max{S_1 − S_12, S_2 − S_12, 0}`, a lower bound on squashed entanglement.
pub fn squashed_lb(rho: &Density, dims: &FactorDims) -> Result<f64> {
    require_parts(dims, 2)?;
    let s12 = von_neumann(rho.psd());
    let s1 = marginal_entropy(rho, dims, &[0])?;
    let s2 = marginal_entropy(rho, dims, &[1])?;
    Ok((s1 - s12).max(s2 - s12).max(0.0))
}

/// Wigner–Yanase skew information `tr[H²ρ] − tr[H ρ^{1/2} H ρ^{1/2}]`.
pub fn skew_information(rho: &Psd, h: &Hermitian) -> Result<f64> {
    if rho.dim() != h.dim() {
        return Err(Error::Shape("skew information needs equal dimensions".into()));
    }
    let r = rho.sqrt();
    let hm = h.matrix();
    let first = (hm * hm * rho.matrix()).trace().re;
    let second = (hm * r.matrix() * hm * r.matrix()).trace().re;
    Ok(first - second)
}

/// Purification `ψ = Σ √λ_i u_i ⊗ u_i` in the eigenbasis of `ρ`; both marginals equal `ρ`.
pub fn purify(rho: &Density) -> CVector {
    let d = rho.dim();
    let spec = rho.psd().spectral();
    let mut psi = CVector::zeros(d * d);
    for (k, &l) in spec.values().iter().enumerate() {
        if l <= 0.0 {
            continue;
        }
        let u = spec.vectors().column(k);
        let w = Complex::new(l.sqrt(), 0.0);
        for a in 0..d {
            for b in 0..d {
                psi[a * d + b] += w * u[a] * u[b];
            }
        }
    }
    let norm = psi.norm();
    psi / Complex::new(norm, 0.0)
}

#[cfg(test)]
mod tests;
