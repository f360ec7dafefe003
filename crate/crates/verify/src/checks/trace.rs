//! Minkowski, Epstein and Carlen–Lieb trace functionals.

use rand::Rng;
use traceforge_core::channels::KrausChannel;
use traceforge_core::linalg::random::{complex_gaussian, random_hermitian, random_pd, TrialRng};
use traceforge_core::linalg::{partial_trace, FactorDims, Psd};
use traceforge_core::CMatrix;

use super::{closure_psd, ge, le, pick, psd, with_scalar, CoreResult};
use crate::probe::{midpoint_trial, Direction};
use crate::runner::{Sample, Trial, TrialResult};
use crate::Witness;

fn ptrace(a: &Psd, dims: &FactorDims, traced: &[usize]) -> CoreResult<Psd> {
    psd(partial_trace(a.matrix(), dims, traced)?)
}

/// `((tr (tr_1 A)^p)^{1/p}, tr (tr_2 A^p)^{1/p})` on `C^a ⊗ C^b`.
pub(crate) fn minkowski_two_sides(a: &Psd, dims: &FactorDims, p: f64) -> CoreResult<(f64, f64)> {
    let lhs = ptrace(a, dims, &[0])?.pow(p)?.trace().powf(1.0 / p);
    let rhs = ptrace(&a.pow(p)?, dims, &[1])?.pow(1.0 / p)?.trace();
    Ok((lhs, rhs))
}

/// `(tr_3 (tr_2 (tr_1 A)^p)^{1/p}, tr_13 (tr_2 A^p)^{1/p})` on `C^a ⊗ C^b ⊗ C^c`.
pub(crate) fn minkowski_three_sides(a: &Psd, dims: &FactorDims, p: f64) -> CoreResult<(f64, f64)> {
    let d = dims.as_slice();
    let b = ptrace(a, dims, &[0])?.pow(p)?;
    let inner = ptrace(&b, &FactorDims::new(vec![d[1], d[2]])?, &[0])?;
    let lhs = inner.pow(1.0 / p)?.trace();
    let rhs = ptrace(&a.pow(p)?, dims, &[1])?.pow(1.0 / p)?.trace();
    Ok((lhs, rhs))
}

/// `Υ_{p,q}(X) = tr[(B* X^p B)^{q/p}]`.
pub(crate) fn upsilon(x: &Psd, b: &CMatrix, p: f64, q: f64) -> CoreResult<f64> {
    Ok(psd(b.adjoint() * x.pow(p)?.matrix() * b)?.pow(q / p)?.trace())
}

/// `p ≥ 1` gives `lhs ≤ rhs`; `p ≤ 1` reverses it.
fn minkowski_slack(lhs: f64, rhs: f64, p: f64) -> f64 {
    if p >= 1.0 {
        le(lhs, rhs)
    } else {
        ge(lhs, rhs)
    }
}

pub(super) fn minkowski_two(t: &mut Trial) -> TrialResult {
    let p = pick(&[0.5, 1.5, 2.0, 3.0], t.index);
    let dims = FactorDims::new(t.dims.to_vec())?;
    let a = closure_psd(dims.total(), &mut t.rng)?;
    let (lhs, rhs) = minkowski_two_sides(&a, &dims, p)?;
    let w = Witness::new().matrix("A", a.matrix()).scalar("p", p).scalar("lhs", lhs).scalar("rhs", rhs);
    Ok(Sample::new(minkowski_slack(lhs, rhs, p), w))
}

pub(super) fn minkowski_three(t: &mut Trial) -> TrialResult {
    let p = pick(&[1.5, 2.0, 0.5], t.index);
    let dims = FactorDims::new(t.dims.to_vec())?;
    let a = closure_psd(dims.total(), &mut t.rng)?;
    let (lhs, rhs) = minkowski_three_sides(&a, &dims, p)?;
    let w = Witness::new().matrix("A", a.matrix()).scalar("p", p).scalar("lhs", lhs).scalar("rhs", rhs);
    Ok(Sample::new(minkowski_slack(lhs, rhs, p), w))
}

fn psd_pair(n: usize, rng: &mut TrialRng) -> CoreResult<((), Psd, Psd)> {
    Ok(((), closure_psd(n, rng)?, closure_psd(n, rng)?))
}

/// `A ↦ tr[(B* A^p B)^{1/p}]` concave for `0 < p < 1`; `B` is `n × m`.
pub(super) fn epstein(t: &mut Trial) -> TrialResult {
    let p = pick(&[0.3, 0.7], t.index);
    let (n, m) = (t.dims[0], t.dims[1]);
    let b = complex_gaussian(n, m, &mut t.rng);
    let s = midpoint_trial(
        t,
        &|_: &[usize], rng: &mut _| psd_pair(n, rng),
        &|_: &(), a: &Psd| upsilon(a, &b, p, 1.0),
        Direction::Concave,
    )?;
    Ok(with_scalar(s.map_witness(|w| w.matrix("B", &b)), "p", p))
}

/// `Υ_{p,q}` convex for `1 ≤ p ≤ 2, q ≥ 1` and concave for `0 ≤ p ≤ q ≤ 1`.
pub(super) fn carlen_lieb(t: &mut Trial) -> TrialResult {
    let (p, q, direction) = pick(&[(1.5, 1.0, Direction::Convex), (2.0, 2.0, Direction::Convex), (0.5, 0.8, Direction::Concave)], t.index);
    let (n, m) = (t.dims[0], t.dims[1]);
    let b = complex_gaussian(n, m, &mut t.rng);
    let s = midpoint_trial(t, &|_: &[usize], rng: &mut _| psd_pair(n, rng), &|_: &(), x: &Psd| upsilon(x, &b, p, q), direction)?;
    Ok(with_scalar(with_scalar(s.map_witness(|w| w.matrix("B", &b)), "p", p), "q", q))
}

/// `X ↦ tr[Φ(X^p)^{q/p}]` for CP `Φ: M_n → M_m` with the Carlen–Lieb parameters, and every
/// fourth trial the sum form `(X_1, X_2) ↦ tr[(X_1^p + X_2^p)^{1/p}]`.
pub(super) fn cp_composed(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dims[0], t.dims[1]);
    if t.index % 4 == 3 {
        let (p, direction) = if t.index % 8 == 3 { (1.5, Direction::Convex) } else { (0.5, Direction::Concave) };
        let s = midpoint_trial(
            t,
            &|_: &[usize], rng: &mut _| Ok(((), (closure_psd(n, rng)?, closure_psd(n, rng)?), (closure_psd(n, rng)?, closure_psd(n, rng)?))),
            &|_: &(), (x1, x2): &(Psd, Psd)| Ok(psd(x1.pow(p)?.matrix() + x2.pow(p)?.matrix())?.pow(1.0 / p)?.trace()),
            direction,
        )?;
        return Ok(with_scalar(s.map_witness(|w| w.text("form", "sum")), "p", p));
    }
    let (p, q, direction) = pick(&[(1.5, 1.0, Direction::Convex), (2.0, 2.0, Direction::Convex), (0.5, 0.8, Direction::Concave)], t.index);
    let count = t.rng.random_range(1..=3);
    let phi = KrausChannel::new(n, m, (0..count).map(|_| complex_gaussian(n, m, &mut t.rng)).collect())?;
    let s = midpoint_trial(
        t,
        &|_: &[usize], rng: &mut _| psd_pair(n, rng),
        &|_: &(), x: &Psd| Ok(psd(phi.apply(x.pow(p)?.matrix())?)?.pow(q / p)?.trace()),
        direction,
    )?;
    Ok(with_scalar(with_scalar(s.map_witness(|w| w.text("form", "cp")), "p", p), "q", q))
}

/// `X ↦ tr e^{H + log X}` concave on positive definite matrices.
pub(super) fn lieb_explog(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let h = random_hermitian(n, &mut t.rng);
    let s = midpoint_trial(
        t,
        &|_: &[usize], rng: &mut _| Ok(((), random_pd(n, rng), random_pd(n, rng))),
        &|_: &(), x: &Psd| Ok(h.add(&x.log()?).exp()?.trace()),
        Direction::Concave,
    )?;
    Ok(s.map_witness(|w| w.matrix("H", h.matrix())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use traceforge_core::linalg::kron;
    use traceforge_core::linalg::random::{random_density, trial_rng};

    #[test]
    fn minkowski_sides_agree_on_products() {
        let mut rng = trial_rng(4, 0);
        let a = random_density(2, 2, &mut rng).unwrap();
        let b = random_density(3, 3, &mut rng).unwrap();
        let c = random_density(2, 2, &mut rng).unwrap();
        let ab = psd(kron(a.matrix(), b.matrix())).unwrap();
        for p in [0.5, 1.5, 3.0] {
            let (l, r) = minkowski_two_sides(&ab, &FactorDims::new(vec![2, 3]).unwrap(), p).unwrap();
            assert!((l - r).abs() < 1e-10, "p={p}: {l} {r}");
            let abc = psd(kron(&kron(a.matrix(), b.matrix()), c.matrix())).unwrap();
            let (l, r) = minkowski_three_sides(&abc, &FactorDims::new(vec![2, 3, 2]).unwrap(), p).unwrap();
            assert!((l - r).abs() < 1e-10, "p={p}: {l} {r}");
        }
    }
}
