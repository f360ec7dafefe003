use rand::Rng;

use super::{KrausChannel, LinearMatrixMap};
use crate::linalg::random::random_unit_vector;
use crate::linalg::{matrix_unit, operator_norm, CMatrix, Complex, Hermitian, PSD_TOL};
use crate::{Error, Result};

/// `C = Σ_ij E_ij ⊗ Φ(E_ij)`, input factor first.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    in_dim: usize,
    out_dim: usize,
    matrix: CMatrix,
}

impl ChoiMatrix {
    pub fn new(in_dim: usize, out_dim: usize, matrix: CMatrix) -> Result<Self> {
        let n = in_dim * out_dim;
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::Shape(format!("Choi matrix must be {n}x{n}")));
        }
        Ok(Self { in_dim, out_dim, matrix })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Hermitian::hermitian_part(self.matrix.clone()).min_eigenvalue()
    }
}

pub fn choi(map: &LinearMatrixMap) -> ChoiMatrix {
    let (n, m) = (map.in_dim(), map.out_dim());
    let mut c = CMatrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            let img = map.apply(&matrix_unit(n, i, j)).expect("matrix unit has the input shape");
            c.view_mut((i * m, j * m), (m, m)).copy_from(&img);
        }
    }
    ChoiMatrix { in_dim: n, out_dim: m, matrix: c }
}

/// Kraus operators from the eigendecomposition `C = Σ λ w w*`:
/// `V[i, a] = conj(√λ · w[i·out + a])`, one per eigenvalue above the numerical rank cutoff.
pub fn kraus_from_choi(c: &ChoiMatrix, tol: f64) -> Result<KrausChannel> {
    let h = Hermitian::new(c.matrix.clone())?;
    let spec = h.spectral()?;
    let min = spec.min();
    if min < -tol {
        return Err(Error::NotCompletelyPositive { eigenvalue: min });
    }
    let cutoff = tol.max(PSD_TOL * spec.max_abs());
    let (n, m) = (c.in_dim, c.out_dim);
    let mut kraus = Vec::new();
    for (k, &lambda) in spec.values().iter().enumerate().rev() {
        if lambda <= cutoff {
            continue;
        }
        let w = spec.vectors().column(k);
        let s = lambda.sqrt();
        kraus.push(CMatrix::from_fn(n, m, |i, a| (w[i * m + a] * s).conj()));
    }
    if kraus.is_empty() {
        kraus.push(CMatrix::zeros(n, m));
    }
    KrausChannel::new(n, m, kraus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityMode {
    /// Choi PSD test; only decisive when `k ≥ min(in_dim, out_dim)`.
    ExactCp,
    /// Sample PSD inputs to `id_k ⊗ Φ` looking for a negative output eigenvalue.
    RefuteSample,
}

#[derive(Clone, Debug)]
pub enum KPositivity {
    Positive,
    /// `witness` is a PSD input on `C^k ⊗ C^in` whose image has eigenvalue `eigenvalue < 0`.
    Violated { witness: CMatrix, eigenvalue: f64 },
    Inconclusive,
}

/// Relative tolerance for declaring an output eigenvalue negative.
const K_POS_TOL: f64 = 1e-10;

fn ampliated_min_eig(map: &LinearMatrixMap, z: &CMatrix, k: usize) -> Result<f64> {
    let out = map.apply_ampliated(z, k)?;
    let scale = 1.0 + operator_norm(&out);
    Ok(Hermitian::hermitian_part(out).min_eigenvalue()? / scale)
}

/// Maximally entangled vector on `C^k ⊗ C^n` restricted to the first `min(k, n)` levels.
fn entangled_candidate(k: usize, n: usize) -> CMatrix {
    let r = k.min(n);
    let mut v = CMatrix::zeros(k * n, 1);
    for i in 0..r {
        v[(i * n + i, 0)] = Complex::new(1.0 / (r as f64).sqrt(), 0.0);
    }
    &v * v.adjoint()
}

pub fn is_k_positive<R: Rng + ?Sized>(
    map: &LinearMatrixMap,
    k: usize,
    mode: PositivityMode,
    trials: usize,
    rng: &mut R,
) -> Result<KPositivity> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let n = map.in_dim();
    if mode == PositivityMode::ExactCp {
        if k < n.min(map.out_dim()) {
            return Err(Error::Precondition("exact-cp mode needs k >= min(in_dim, out_dim)".into()));
        }
        let c = choi(map);
        let scale = 1.0 + operator_norm(c.matrix());
        if c.min_eigenvalue()? >= -K_POS_TOL * scale {
            return Ok(KPositivity::Positive);
        }
        if k >= n {
            let witness = entangled_candidate(k, n);
            let eigenvalue = ampliated_min_eig(map, &witness, k)?;
            if eigenvalue < -K_POS_TOL {
                return Ok(KPositivity::Violated { witness, eigenvalue });
            }
        }
    }
    // Refutation: the structured entangled input first, then random pure states;
    // the most negative verified output is reported.
    let mut best: Option<(CMatrix, f64)> = None;
    for t in 0..trials.max(1) {
        let z = if t == 0 {
            entangled_candidate(k, n)
        } else {
            let v = random_unit_vector(k * n, rng);
            &v * v.adjoint()
        };
        let e = ampliated_min_eig(map, &z, k)?;
        if e < -K_POS_TOL && best.as_ref().is_none_or(|(_, b)| e < *b) {
            best = Some((z, e));
        }
    }
    match best {
        Some((witness, eigenvalue)) if ampliated_min_eig(map, &witness, k)? < -K_POS_TOL / 10.0 => {
            Ok(KPositivity::Violated { witness, eigenvalue })
        }
        _ => Ok(KPositivity::Inconclusive),
    }
}
