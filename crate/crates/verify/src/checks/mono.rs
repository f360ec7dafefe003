//! Monotonicity of trace functionals and divergences under channels.

use traceforge_core::channels::{full_depolarizer, smooth, KrausChannel};
use traceforge_core::entropy::{bs_entropy, sandwiched_renyi, umegaki};
use traceforge_core::gns::{gf_inv_apply, metric_bkm, metric_wyd};
use traceforge_core::linalg::random::{complex_gaussian, random_density, random_pd, random_traceless_hermitian, TrialRng};
use traceforge_core::linalg::{c, diag, identity, kron, partial_trace, FactorDims, Hermitian, Psd};
use traceforge_core::opfunc::{catalog, numeric_monotone_test, FunctionId, MonotoneOutcome};
use traceforge_core::CMatrix;

use super::{closure_psd, cp_unital, cptp, ge, ktr, le, pick, psd, rtr, with_scalar, CoreResult};
use crate::probe::{monotone_trial, ChannelClass};
use crate::runner::{Sample, Trial, TrialResult};
use crate::Witness;

fn random_rank_density(n: usize, rng: &mut TrialRng) -> CoreResult<Psd> {
    use rand::Rng;
    let rank = rng.random_range(1..=n);
    Ok(random_density(n, rank, rng)?.into_psd())
}

/// `tr[Φ(K)* Y^{1−t} Φ(K) X^t] ≤ tr[K* Φ†(Y)^{1−t} K Φ†(X)^t]` for unital CP `Φ: M_n → M_m`.
pub(super) fn mono_l1(t: &mut Trial) -> TrialResult {
    let p = pick(&[0.3, 0.5, 0.7], t.index);
    let (n, m) = (t.dims[0], t.dims[1]);
    let phi = cp_unital(n, m, &mut t.rng)?;
    let (x, y) = (closure_psd(m, &mut t.rng)?, closure_psd(m, &mut t.rng)?);
    let k = complex_gaussian(n, n, &mut t.rng);
    let fk = phi.apply(&k)?;
    let lhs = ktr(&fk, y.pow(1.0 - p)?.matrix(), x.pow(p)?.matrix());
    let (ax, ay) = (psd(phi.adjoint_apply(x.matrix())?)?, psd(phi.adjoint_apply(y.matrix())?)?);
    let rhs = ktr(&k, ay.pow(1.0 - p)?.matrix(), ax.pow(p)?.matrix());
    let w = Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).matrix("K", &k).scalar("t", p);
    Ok(Sample::new(le(lhs, rhs), w.scalar("lhs", lhs).scalar("rhs", rhs)))
}

/// Left side of the negative-power monotonicity with `Φ†` replaced by the TP map `psi`.
fn l2_lhs(psi: &KrausChannel, x: &Psd, y: &Psd, k: &CMatrix, p: f64) -> CoreResult<f64> {
    let (px, py) = (psd(psi.apply(x.matrix())?)?, psd(psi.apply(y.matrix())?)?);
    let pk = psi.apply(k)?;
    Ok(ktr(&pk, py.pow(p - 1.0)?.matrix(), px.pow(-p)?.matrix()))
}

/// `tr[Φ†(K)* Φ†(Y)^{t−1} Φ†(K) Φ†(X)^{−t}] ≤ tr[K* Y^{t−1} K X^{−t}]`.
///
/// When `Φ†(X)` or `Φ†(Y)` is singular, `Φ†` is replaced by `(1−ε)Φ† + ε tr[·] I/n`,
/// whose adjoint is again unital CP; the reported slack is the worst over
/// `ε ∈ {1e-4, 1e-6, 1e-8}`.
pub(super) fn mono_l2(t: &mut Trial) -> TrialResult {
    let p = pick(&[0.3, 0.5, 0.7], t.index);
    let (n, m) = (t.dims[0], t.dims[1]);
    let phi = cp_unital(n, m, &mut t.rng)?;
    let (x, y) = (random_pd(m, &mut t.rng), random_pd(m, &mut t.rng));
    let k = complex_gaussian(m, m, &mut t.rng);
    let rhs = ktr(&k, y.pow(p - 1.0)?.matrix(), x.pow(-p)?.matrix());
    let adj = phi.adjoint();
    let definite = psd(adj.apply(x.matrix())?)?.is_definite() && psd(adj.apply(y.matrix())?)?.is_definite();
    let w = Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).matrix("K", &k).scalar("t", p);
    if definite {
        let lhs = l2_lhs(&adj, &x, &y, &k, p)?;
        return Ok(Sample::new(le(lhs, rhs), w.scalar("lhs", lhs).scalar("rhs", rhs)));
    }
    let mut worst = f64::INFINITY;
    let mut w = w.scalar("rhs", rhs);
    for eps in [1e-6, 1e-4, 1e-8] {
        let lhs = l2_lhs(&smooth(&adj, eps)?, &x, &y, &k, p)?;
        worst = worst.min(le(lhs, rhs));
        w = w.scalar(&format!("lhs_eps_{eps:e}"), lhs);
    }
    Ok(Sample::new(worst, w).resampled(true))
}

/// The integral form `tr ∫ K* (s+Y)^{-1} K (s+X)^{-1} ds` does not increase under `Φ†`.
pub(super) fn mono_l3(t: &mut Trial) -> TrialResult {
    let m = t.dims[0];
    let f = catalog(FunctionId::LogMean)?;
    let phi = cp_unital(m, m, &mut t.rng)?;
    let (x, y) = (random_pd(m, &mut t.rng), random_pd(m, &mut t.rng));
    let k = complex_gaussian(m, m, &mut t.rng);
    let rhs = rtr(&(k.adjoint() * gf_inv_apply(&f, &x, &y, &k)?));
    let (ax, ay) = (psd(phi.adjoint_apply(x.matrix())?)?, psd(phi.adjoint_apply(y.matrix())?)?);
    let ak = phi.adjoint_apply(&k)?;
    let lhs = rtr(&(ak.adjoint() * gf_inv_apply(&f, &ax, &ay, &ak)?));
    let w = Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).matrix("K", &k);
    Ok(Sample::new(le(lhs, rhs), w.scalar("lhs", lhs).scalar("rhs", rhs)))
}

/// `D(Φ(X)‖Φ(Y)) ≤ D(X‖Y)` for CPTP `Φ`, through the generic monotonicity probe.
pub(super) fn dpi(t: &mut Trial) -> TrialResult {
    monotone_trial(
        t,
        ChannelClass::Cptp,
        &|n, rng: &mut TrialRng| Ok((random_rank_density(n, rng)?, random_density(n, n, rng)?.into_psd())),
        &|(x, y): &(Psd, Psd), map| Ok((psd(map.apply(x.matrix())?)?, psd(map.apply(y.matrix())?)?)),
        &|(x, y): &(Psd, Psd)| Ok(umegaki(x, y)?.value),
    )
}

/// Ando monotonicity restricted to the partial trace over the first factor of `C^m ⊗ C^n`.
pub(super) fn ando_mono_restricted(t: &mut Trial) -> TrialResult {
    let p = pick(&[0.3, 0.5, 1.0], t.index);
    let (m, n) = (t.dims[0], t.dims[1]);
    let dims = FactorDims::new(vec![m, n])?;
    let (x, y) = (random_pd(m * n, &mut t.rng), random_pd(m * n, &mut t.rng));
    let k = complex_gaussian(n, n, &mut t.rng);
    let ik = kron(&identity(m), &k);
    let lhs = ktr(&ik, y.pow(1.0 + p)?.matrix(), x.pow(-p)?.matrix());
    let (tx, ty) = (psd(partial_trace(x.matrix(), &dims, &[0])?)?, psd(partial_trace(y.matrix(), &dims, &[0])?)?);
    let rhs = ktr(&k, ty.pow(1.0 + p)?.matrix(), tx.pow(-p)?.matrix());
    let w = Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).matrix("K", &k).scalar("t", p);
    Ok(Sample::new(ge(lhs, rhs), w.scalar("lhs", lhs).scalar("rhs", rhs)))
}

/// The claimed general-channel Ando monotonicity, refuted by the full depolarizer.
///
/// Trial 0 is the deterministic instance `K = diag(1, −1, 0, …)`, `X = Y = I/n`;
/// later trials draw random densities and traceless `K`. Both sides are computed
/// numerically; the closed form of the right side is recorded alongside.
pub(super) fn ando_mono_false(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let p = 0.5;
    let (x, y, k) = if t.index == 0 {
        let mut d = vec![0.0; n];
        d[0] = 1.0;
        d[1] = -1.0;
        let mixed = Psd::identity(n).scale(1.0 / n as f64);
        (mixed.clone(), mixed, diag(&d))
    } else {
        let g = complex_gaussian(n, n, &mut t.rng);
        let k = &g - identity(n) * (g.trace() / c(n as f64));
        let x = random_density(n, n, &mut t.rng)?.into_psd();
        let y = random_density(n, n, &mut t.rng)?.into_psd();
        (x, y, k)
    };
    ando_false_sample(&x, &y, &k, p)
}

pub(crate) fn ando_false_sample(x: &Psd, y: &Psd, k: &CMatrix, p: f64) -> TrialResult {
    let n = x.dim();
    let phi = full_depolarizer(n)?;
    let fk = phi.apply(k)?;
    let lhs = ktr(&fk, y.pow(1.0 + p)?.matrix(), x.pow(-p)?.matrix());
    let (ax, ay) = (psd(phi.adjoint_apply(x.matrix())?)?, psd(phi.adjoint_apply(y.matrix())?)?);
    let rhs = ktr(k, ay.pow(1.0 + p)?.matrix(), ax.pow(-p)?.matrix());
    let closed = rtr(&(k.adjoint() * k)) / n as f64 * y.trace().powf(1.0 + p) * x.trace().powf(-p);
    let w = Witness::new()
        .matrix("X", x.matrix())
        .matrix("Y", y.matrix())
        .matrix("K", k)
        .scalar("t", p)
        .scalar("lhs", lhs)
        .scalar("rhs_numeric", rhs)
        .scalar("rhs_closed_form", closed)
        .text("map", "full_depolarizer");
    Ok(Sample::new(ge(lhs, rhs), w))
}

/// `x ↦ x²` is not operator monotone: each trial is one sampled pair `A ≥ B`.
pub(super) fn square_monotone(t: &mut Trial) -> TrialResult {
    let f = catalog(FunctionId::Square)?;
    Ok(match numeric_monotone_test(&f, t.dims[0], 1, &mut t.rng)? {
        MonotoneOutcome::Consistent { worst } => Sample::new(worst, Witness::new()),
        MonotoneOutcome::Violated { a, b, min_eig } => {
            Sample::new(min_eig, Witness::new().matrix("A", a.matrix()).matrix("B", b.matrix()).scalar("min_eigenvalue", min_eig))
        }
    })
}

/// Monotone metrics contract under CPTP maps: `γ_{Φ(ρ)}(Φ(K)) ≤ γ_ρ(K)`.
pub(super) fn metric_monotone(t: &mut Trial) -> TrialResult {
    let choice = pick(&[0.3, 0.5, 0.0], t.index);
    let (n, m) = (t.dims[0], t.dims[1]);
    let phi = cptp(n, m, &mut t.rng)?;
    let rho = random_density(n, n, &mut t.rng)?.into_psd();
    let k = random_traceless_hermitian(n, &mut t.rng);
    let frho = psd(phi.apply(rho.matrix())?)?;
    let fk = Hermitian::hermitian_part(phi.apply(k.matrix())?);
    // Remove the rounding residue of the trace so the tangent stays traceless.
    let fk = fk.sub(&Hermitian::identity(m).scale(fk.trace() / m as f64));
    let metric = |r: &Psd, h: &Hermitian| if choice > 0.0 { metric_wyd(r, h, choice) } else { metric_bkm(r, h) };
    let before = metric(&rho, &k)?;
    let after = metric(&frho, &fk)?;
    let w = Witness::new()
        .matrix("rho", rho.matrix())
        .matrix("K", k.matrix())
        .text("metric", if choice > 0.0 { "wyd" } else { "bkm" })
        .scalar("before", before)
        .scalar("after", after);
    let w = if choice > 0.0 { w.scalar("t", choice) } else { w };
    Ok(Sample::new(le(after, before), w))
}

/// `D(tr_j ρ‖tr_j σ) ≤ D(ρ‖σ)`, alternating which factor is traced out.
pub(super) fn rel_entropy_pt_monotone(t: &mut Trial) -> TrialResult {
    let dims = FactorDims::new(t.dims.to_vec())?;
    let n = dims.total();
    let traced = (t.index % 2) as usize;
    let rho = random_rank_density(n, &mut t.rng)?;
    let sigma = random_density(n, n, &mut t.rng)?.into_psd();
    let before = umegaki(&rho, &sigma)?.value;
    let rr = psd(partial_trace(rho.matrix(), &dims, &[traced])?)?;
    let rs = psd(partial_trace(sigma.matrix(), &dims, &[traced])?)?;
    let after = umegaki(&rr, &rs)?.value;
    let w = Witness::new().matrix("rho", rho.matrix()).matrix("sigma", sigma.matrix()).scalar("traced_factor", traced as f64);
    Ok(Sample::new(le(after, before), w.scalar("before", before).scalar("after", after)))
}

/// `D_α(Φ(ρ)‖Φ(σ)) ≤ D_α(ρ‖σ)` for CPTP `Φ`.
pub(super) fn sandwiched_dpi(t: &mut Trial) -> TrialResult {
    let alpha = pick(&[1.5, 2.0], t.index);
    let (n, m) = (t.dims[0], t.dims[1]);
    let phi = cptp(n, m, &mut t.rng)?;
    let rho = random_rank_density(n, &mut t.rng)?;
    let sigma = random_density(n, n, &mut t.rng)?.into_psd();
    let before = sandwiched_renyi(&rho, &sigma, alpha)?;
    let after = sandwiched_renyi(&psd(phi.apply(rho.matrix())?)?, &psd(phi.apply(sigma.matrix())?)?, alpha)?;
    let w = Witness::new().matrix("rho", rho.matrix()).matrix("sigma", sigma.matrix()).scalar("alpha", alpha);
    Ok(with_scalar(Sample::new(le(after, before), w.scalar("before", before)), "after", after))
}

/// `D_BS(Φ(Y)‖Φ(X)) ≤ D_BS(Y‖X)` for CPTP `Φ`.
pub(super) fn bs_dpi(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dims[0], t.dims[1]);
    let phi = cptp(n, m, &mut t.rng)?;
    let y = random_density(n, n, &mut t.rng)?.into_psd();
    let x = random_density(n, n, &mut t.rng)?.into_psd();
    let before = bs_entropy(&y, &x)?;
    let after = bs_entropy(&psd(phi.apply(y.matrix())?)?, &psd(phi.apply(x.matrix())?)?)?;
    let w = Witness::new().matrix("Y", y.matrix()).matrix("X", x.matrix()).scalar("before", before).scalar("after", after);
    Ok(Sample::new(le(after, before), w))
}
