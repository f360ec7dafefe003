//! Seeded random matrices. Every sampler is a pure function of the RNG state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{c, CMatrix, Complex, Density, Hermitian, Psd};
use crate::{Error, Result};

pub type TrialRng = ChaCha8Rng;

/// Independent stream for one trial: the root seed picks the key, the trial
/// index picks the ChaCha stream, so results do not depend on scheduling.
pub fn trial_rng(root_seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(root_seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    HaarUnitary,
    Psd,
    PositiveDefinite,
    Density,
    Hermitian,
    TracelessHermitian,
    General,
}

/// Dispatching sampler; returns the raw matrix of the requested kind.
pub fn sample_random<R: Rng + ?Sized>(kind: RandomKind, n: usize, rank: Option<usize>, rng: &mut R) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::Parameter("dimension must be positive".into()));
    }
    if let Some(r) = rank {
        if r == 0 || r > n {
            return Err(Error::Parameter(format!("rank {r} not in 1..={n}")));
        }
    }
    let m = match kind {
        RandomKind::HaarUnitary => haar_unitary(n, rng),
        RandomKind::Psd => random_psd(n, rank.unwrap_or(n), rng)?.matrix().clone(),
        RandomKind::PositiveDefinite => random_pd(n, rng).matrix().clone(),
        RandomKind::Density => random_density(n, rank.unwrap_or(n), rng)?.matrix().clone(),
        RandomKind::Hermitian => random_hermitian(n, rng).into_matrix(),
        RandomKind::TracelessHermitian => random_traceless_hermitian(n, rng).into_matrix(),
        RandomKind::General => complex_gaussian(n, n, rng),
    };
    Ok(m)
}

/// Entries with independent real and imaginary parts of variance 1/2.
pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(s * re, s * im)
    })
}

pub fn real_gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar unitary via QR of a Ginibre matrix with the phases of `R`'s diagonal removed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = complex_gaussian(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        q.column_mut(j).iter_mut().for_each(|z| *z *= phase);
    }
    q
}

/// `G G*` with `G` an `n × rank` complex Gaussian matrix.
pub fn random_psd<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Result<Psd> {
    if rank == 0 || rank > n {
        return Err(Error::Parameter(format!("rank {rank} not in 1..={n}")));
    }
    let g = complex_gaussian(n, rank, rng);
    Psd::new(Hermitian::hermitian_part(&g * g.adjoint()))
}

/// Full-rank Wishart sample.
pub fn random_pd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Psd {
    random_psd(n, n, rng).expect("full rank is valid")
}

/// Positive definite matrix `U diag(λ) U*` with Haar `U` and `log λ` uniform in
/// `[-ln(cond)/2, ln(cond)/2]`; the condition number is at most `cond`.
pub fn random_pd_conditioned<R: Rng + ?Sized>(n: usize, cond: f64, rng: &mut R) -> Psd {
    let u = haar_unitary(n, rng);
    let half = 0.5 * cond.max(1.0).ln();
    let vals: Vec<f64> = (0..n).map(|_| (rng.random::<f64>() * 2.0 * half - half).exp()).collect();
    let mut scaled = u.clone();
    for (j, &v) in vals.iter().enumerate() {
        scaled.column_mut(j).scale_mut(v);
    }
    Psd::new(Hermitian::hermitian_part(scaled * u.adjoint())).expect("positive spectrum")
}

pub fn random_density<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Result<Density> {
    Density::new(random_psd(n, rank, rng)?)
}

/// GUE-like sample `(G + G*)/2`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Hermitian {
    Hermitian::hermitian_part(complex_gaussian(n, n, rng))
}

pub fn random_traceless_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Hermitian {
    let h = random_hermitian(n, rng);
    let shift = h.trace() / n as f64;
    Hermitian::hermitian_part(h.matrix() - CMatrix::identity(n, n) * c(shift))
}

/// Haar-random unit vector.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> super::CVector {
    let g = complex_gaussian(n, 1, rng);
    let norm = g.norm();
    super::CVector::from_column_slice((g / c(norm)).as_slice())
}

/// Probability vector drawn uniformly from the simplex.
pub fn random_probabilities<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}
