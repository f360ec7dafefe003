use rand::Rng;

use super::OperatorFunction;
use crate::linalg::random::{random_pd, random_psd, real_gaussian};
use crate::linalg::{operator_norm, Hermitian, Psd};
use crate::Result;

/// Tolerance on the normalized minimum eigenvalue of `f(A) − f(B)`.
const MONOTONE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum MonotoneOutcome {
    /// No violation; `worst` is the smallest normalized slack seen.
    Consistent { worst: f64 },
    /// `a ≥ b` yet `f(a) − f(b)` has the negative eigenvalue `min_eig` (normalized).
    Violated { a: Psd, b: Psd, min_eig: f64 },
}

#[derive(Clone, Debug)]
pub enum ConvexityOutcome {
    Consistent { worst: f64 },
    /// Midpoint defect of the claimed direction (normalized, negative).
    Violated { a: Psd, b: Psd, defect: f64 },
}

fn normalized_min_eig(upper: &Hermitian, lower: &Hermitian) -> Result<f64> {
    let scale = operator_norm(upper.matrix()).max(operator_norm(lower.matrix()));
    Ok(upper.sub(lower).min_eigenvalue()? / (1.0 + scale))
}

fn monotone_slack(f: &OperatorFunction, a: &Psd, b: &Psd) -> Result<f64> {
    normalized_min_eig(&f.apply(a)?, &f.apply(b)?)
}

/// Samples `B` positive definite and `A = B + P` with `P` PSD of random rank
/// and scale, and tests `f(A) ≥ f(B)`.
pub fn numeric_monotone_test<R: Rng + ?Sized>(f: &OperatorFunction, n: usize, trials: usize, rng: &mut R) -> Result<MonotoneOutcome> {
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let b = random_pd(n, rng);
        let rank = rng.random_range(1..=n);
        let p = random_psd(n, rank, rng)?.scale(real_gaussian(rng).exp());
        let a = Psd::new(b.hermitian().add(p.hermitian()))?;
        let slack = monotone_slack(f, &a, &b)?;
        if slack < -MONOTONE_TOL && verify_order(&a, &b)? && monotone_slack(f, &a, &b)? < -MONOTONE_TOL / 10.0 {
            return Ok(MonotoneOutcome::Violated { a, b, min_eig: slack });
        }
        worst = worst.min(slack);
    }
    Ok(MonotoneOutcome::Consistent { worst })
}

/// The premise `a ≥ b` holds on the stored witness.
fn verify_order(a: &Psd, b: &Psd) -> Result<bool> {
    Ok(normalized_min_eig(a.hermitian(), b.hermitian())? >= -MONOTONE_TOL / 10.0)
}

/// Midpoint test of operator convexity (or concavity when `concave`):
/// the extreme eigenvalue of `(f(A)+f(B))/2 − f((A+B)/2)` must have the right sign.
pub fn numeric_convexity_test<R: Rng + ?Sized>(
    f: &OperatorFunction,
    n: usize,
    trials: usize,
    concave: bool,
    rng: &mut R,
) -> Result<ConvexityOutcome> {
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let a = random_pd(n, rng);
        let b = random_pd(n, rng).scale(real_gaussian(rng).exp());
        let defect = midpoint_defect(f, &a, &b, concave)?;
        if defect < -MONOTONE_TOL && midpoint_defect(f, &a, &b, concave)? < -MONOTONE_TOL / 10.0 {
            return Ok(ConvexityOutcome::Violated { a, b, defect });
        }
        worst = worst.min(defect);
    }
    Ok(ConvexityOutcome::Consistent { worst })
}

fn midpoint_defect(f: &OperatorFunction, a: &Psd, b: &Psd, concave: bool) -> Result<f64> {
    let mid = a.mix(b, 0.5)?;
    let avg = f.apply(a)?.add(&f.apply(b)?).scale(0.5);
    let at_mid = f.apply(&mid)?;
    if concave {
        normalized_min_eig(&at_mid, &avg)
    } else {
        normalized_min_eig(&avg, &at_mid)
    }
}
