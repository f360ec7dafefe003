//! Joint convexity and concavity of Lieb-type trace functionals.

use traceforge_core::entropy::umegaki;
use traceforge_core::gns::gf_inv_apply;
use traceforge_core::linalg::random::{complex_gaussian, random_density, random_pd};
use traceforge_core::linalg::Psd;
use traceforge_core::opfunc::{catalog, FunctionId};
use traceforge_core::CMatrix;

use super::{closure_psd, ktr, pick, rtr, with_scalar};
use crate::probe::{midpoint_trial, Direction};
use crate::runner::{Trial, TrialResult};

/// `tr[K* Y^{1−t} K X^t]`, jointly concave in `(X, Y)` on the closed cone.
pub(super) fn lieb_concavity(t: &mut Trial) -> TrialResult {
    let p = pick(&[0.3, 0.5, 0.7], t.index);
    let s = midpoint_trial(
        t,
        &|d: &[usize], rng: &mut _| {
            let n = d[0];
            let k = complex_gaussian(n, n, rng);
            Ok((k, (closure_psd(n, rng)?, closure_psd(n, rng)?), (closure_psd(n, rng)?, closure_psd(n, rng)?)))
        },
        &|k: &CMatrix, (x, y): &(Psd, Psd)| Ok(ktr(k, y.pow(1.0 - p)?.matrix(), x.pow(p)?.matrix())),
        Direction::Concave,
    )?;
    Ok(with_scalar(s, "t", p))
}

/// `tr[K* Y^{−s} K X^{−t}]`, jointly convex in `(X, Y, K)` for `s + t ≤ 1`.
pub(super) fn lieb_neg_powers_convexity(t: &mut Trial) -> TrialResult {
    let (a, b) = pick(&[(0.3, 0.5), (0.5, 0.5), (0.2, 0.8), (1.0, 0.0), (0.0, 0.6)], t.index);
    let sample = |n: usize, rng: &mut _| (random_pd(n, rng), random_pd(n, rng), complex_gaussian(n, n, rng));
    let s = midpoint_trial(
        t,
        &|d: &[usize], rng: &mut _| Ok(((), sample(d[0], rng), sample(d[0], rng))),
        &|_: &(), (x, y, k): &(Psd, Psd, CMatrix)| Ok(ktr(k, y.pow(-a)?.matrix(), x.pow(-b)?.matrix())),
        Direction::Convex,
    )?;
    Ok(with_scalar(with_scalar(s, "s", a), "t", b))
}

/// `tr ∫ K* (s+Y)^{-1} K (s+X)^{-1} ds`, jointly convex in `(X, Y, K)`.
pub(super) fn map_convexity(t: &mut Trial) -> TrialResult {
    let f = catalog(FunctionId::LogMean)?;
    let sample = |n: usize, rng: &mut _| (random_pd(n, rng), random_pd(n, rng), complex_gaussian(n, n, rng));
    midpoint_trial(
        t,
        &|d: &[usize], rng: &mut _| Ok(((), sample(d[0], rng), sample(d[0], rng))),
        &|_: &(), (x, y, k): &(Psd, Psd, CMatrix)| Ok(rtr(&(k.adjoint() * gf_inv_apply(&f, x, y, k)?))),
        Direction::Convex,
    )
}

/// `D(X‖Y)` jointly convex; `X` of any rank, `Y` definite.
pub(super) fn rel_entropy_joint_convexity(t: &mut Trial) -> TrialResult {
    use rand::Rng;
    let sample = |n: usize, rng: &mut traceforge_core::linalg::random::TrialRng| -> traceforge_core::Result<(Psd, Psd)> {
        let rank = rng.random_range(1..=n);
        Ok((random_density(n, rank, rng)?.into_psd(), random_density(n, n, rng)?.into_psd()))
    };
    midpoint_trial(
        t,
        &|d: &[usize], rng: &mut _| Ok(((), sample(d[0], rng)?, sample(d[0], rng)?)),
        &|_: &(), (x, y): &(Psd, Psd)| Ok(umegaki(x, y)?.value),
        Direction::Convex,
    )
}

/// `tr[K* X^q K Y^{−r}]`, jointly convex in `(X, Y)` for `1 ≤ q ≤ 2`, `0 ≤ r ≤ 1`, `q − r ≥ 1`.
pub(super) fn ando_convexity(t: &mut Trial) -> TrialResult {
    let (q, r) = pick(&[(1.5, 0.5), (2.0, 1.0)], t.index);
    let s = midpoint_trial(
        t,
        &|d: &[usize], rng: &mut _| {
            let n = d[0];
            let k = complex_gaussian(n, n, rng);
            Ok((k, (closure_psd(n, rng)?, random_pd(n, rng)), (closure_psd(n, rng)?, random_pd(n, rng))))
        },
        &|k: &CMatrix, (x, y): &(Psd, Psd)| Ok(ktr(k, x.pow(q)?.matrix(), y.pow(-r)?.matrix())),
        Direction::Convex,
    )?;
    Ok(with_scalar(with_scalar(s, "q", q), "r", r))
}
