//! Checks built on the superoperators `G_f(X, Y)`, perspectives and skew information.

use rand::Rng;
use traceforge_core::channels::{named_map, sample_channel, ChannelKind, LinearMatrixMap, NamedMap};
use traceforge_core::entropy::{skew_information, umegaki};
use traceforge_core::gns::{donald_entropy, gf_apply, gf_inv_apply, gf_superoperator};
use traceforge_core::linalg::random::{complex_gaussian, random_density, random_hermitian, random_pd, real_gaussian, TrialRng};
use traceforge_core::linalg::{operator_norm, Psd};
use traceforge_core::opfunc::{catalog, perspective, FunctionId};
use traceforge_core::CMatrix;

use super::{closure_psd, cp_unital, identity_slack, op_ge, pick, psd, rtr, sign_agreement, CoreResult};
use crate::probe::{le_slack, midpoint_trial, Direction};
use crate::report::Status;
use crate::runner::{run_trials, Sample, Trial, TrialResult};
use crate::{CheckConfig, CheckInfo, CheckReport, Result, Witness};

/// Operator monotone functions with `f(1) = 1` exercised by the Hiai–Petz checks.
const MONOTONE: [FunctionId; 5] =
    [FunctionId::Power(0.3), FunctionId::Power(0.5), FunctionId::Power(0.8), FunctionId::LogMean, FunctionId::Identity];

/// Operator convex functions exercised by `gf_convexity` and `perspective_monotone`.
const CONVEX: [FunctionId; 6] =
    [FunctionId::Square, FunctionId::Power(1.5), FunctionId::NegLog, FunctionId::XLogX, FunctionId::Inverse, FunctionId::Klein];

/// Explicit superoperators for the Hiai–Petz inequalities: `(A, G_f(X,Y), G_f(Φ†X, Φ†Y))`
/// with `A` the matrix of a unital CP `Φ: M_n → M_m` and `X, Y ∈ M_m` positive definite.
struct HpInstance {
    a: CMatrix,
    g_m: CMatrix,
    g_n: CMatrix,
    x: Psd,
    y: Psd,
    f: FunctionId,
}

fn hp_instance(t: &mut Trial) -> CoreResult<HpInstance> {
    let (n, m) = (t.dims[0], t.dims[1]);
    let fid = pick(&MONOTONE, t.index);
    let f = catalog(fid)?;
    // Enough Kraus operators that Φ† maps definite matrices to definite ones.
    let min = m.div_ceil(n).max(n.div_ceil(m));
    let count = t.rng.random_range(min..=min + 2);
    let phi = sample_channel(ChannelKind::CpUnital, n, m, count, &mut t.rng)?;
    let (x, y) = (random_pd(m, &mut t.rng), random_pd(m, &mut t.rng));
    let (ax, ay) = (psd(phi.adjoint_apply(x.matrix())?)?, psd(phi.adjoint_apply(y.matrix())?)?);
    Ok(HpInstance {
        a: phi.to_map().action().clone(),
        g_m: gf_superoperator(&f, &x, &y)?.action().clone(),
        g_n: gf_superoperator(&f, &ax, &ay)?.action().clone(),
        x,
        y,
        f: fid,
    })
}

fn hp_witness(h: &HpInstance) -> Witness {
    Witness::new().matrix("X", h.x.matrix()).matrix("Y", h.y.matrix()).matrix("map_action", &h.a).text("f", h.f.to_string())
}

/// `Φ G_f(Φ†X, Φ†Y)^{-1} Φ† ≤ G_f(X, Y)^{-1}`.
pub(super) fn hiai_petz_2(t: &mut Trial) -> TrialResult {
    let h = hp_instance(t)?;
    let inv_m = psd(h.g_m.clone())?.inv()?;
    let inv_n = psd(h.g_n.clone())?.inv()?;
    let slack = op_ge(inv_m.matrix(), &(&h.a * inv_n.matrix() * h.a.adjoint()))?;
    Ok(Sample::new(slack, hp_witness(&h)))
}

/// `Φ† G_f(X, Y) Φ ≤ G_f(Φ†X, Φ†Y)`.
pub(super) fn hiai_petz_3(t: &mut Trial) -> TrialResult {
    let h = hp_instance(t)?;
    let slack = op_ge(&h.g_n, &(h.a.adjoint() * &h.g_m * &h.a))?;
    Ok(Sample::new(slack, hp_witness(&h)))
}

type Triple = (Psd, Psd, CMatrix);

fn pd_triple(n: usize, rng: &mut TrialRng) -> Triple {
    (random_pd(n, rng), random_pd(n, rng), complex_gaussian(n, n, rng))
}

/// `(X, Y, Z) ↦ ⟨Z, G_f(X, Y)^{-1} Z⟩` jointly convex for operator monotone `f`.
pub(super) fn hiai_petz_4(t: &mut Trial) -> TrialResult {
    let fid = pick(&MONOTONE, t.index);
    let f = catalog(fid)?;
    let s = midpoint_trial(
        t,
        &|d: &[usize], rng: &mut _| Ok(((), pd_triple(d[0], rng), pd_triple(d[0], rng))),
        &|_: &(), (x, y, z): &Triple| Ok(rtr(&(z.adjoint() * gf_inv_apply(&f, x, y, z)?))),
        Direction::Convex,
    )?;
    Ok(s.map_witness(|w| w.text("f", fid.to_string())))
}

/// `(X, Y) ↦ ⟨K, G_f(X, Y) K⟩` jointly convex for operator convex `f`, `K` fixed.
pub(super) fn gf_convexity(t: &mut Trial) -> TrialResult {
    let fid = pick(&CONVEX, t.index);
    let f = catalog(fid)?;
    let s = midpoint_trial(
        t,
        &|d: &[usize], rng: &mut _| {
            let n = d[0];
            let k = complex_gaussian(n, n, rng);
            Ok((k, (random_pd(n, rng), random_pd(n, rng)), (random_pd(n, rng), random_pd(n, rng))))
        },
        &|k: &CMatrix, (x, y): &(Psd, Psd)| Ok(rtr(&(k.adjoint() * gf_apply(&f, x, y, k)?))),
        Direction::Convex,
    )?;
    Ok(s.map_witness(|w| w.text("f", fid.to_string())))
}

/// `A* B^{-1} A ≤ C^{-1} ⟺ A C A* ≤ B`, with `A` scaled so that both sides sit near
/// the boundary. Both conditions reduce to `‖B^{-1/2} A C^{1/2}‖ ≤ 1`; the two
/// computations of that norm must agree too.
pub(super) fn flip_lemma(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let (b, cm) = (random_pd(n, &mut t.rng), random_pd(n, &mut t.rng));
    let a0 = complex_gaussian(n, n, &mut t.rng);
    let c_half = cm.sqrt();
    let b_mhalf = b.pow(-0.5)?;
    let r0 = operator_norm(&(b_mhalf.matrix() * &a0 * c_half.matrix())).powi(2);
    let s = (0.3 * real_gaussian(&mut t.rng)).exp() / r0.sqrt();
    let a = &a0 * traceforge_core::linalg::c(s);
    let (b_inv, c_inv) = (b.inv()?, cm.inv()?);
    let left = op_ge(c_inv.matrix(), &(a.adjoint() * b_inv.matrix() * &a))?;
    let right = op_ge(b.matrix(), &(&a * cm.matrix() * a.adjoint()))?;
    let r_left = psd(c_half.matrix() * a.adjoint() * b_inv.matrix() * &a * c_half.matrix())?.spectral().max();
    let r_right = psd(b_mhalf.matrix() * &a * cm.matrix() * a.adjoint() * b_mhalf.matrix())?.spectral().max();
    let identity = identity_slack((r_left - r_right).abs(), r_left);
    let w = Witness::new()
        .matrix("A", &a)
        .matrix("B", b.matrix())
        .matrix("C", cm.matrix())
        .scalar("left_min_eig", left)
        .scalar("right_min_eig", right)
        .scalar("norm_squared", r_left);
    Ok(Sample::new(sign_agreement(left, right).min(identity), w))
}

type Pair = (Psd, CMatrix);

fn hah_pair(n: usize, rng: &mut TrialRng) -> Pair {
    (random_pd(n, rng), complex_gaussian(n, 1, rng))
}

fn quad(f: &dyn Fn(f64) -> f64, x: &Psd, v: &CMatrix) -> f64 {
    rtr(&(v.adjoint() * x.spectral().rebuild(f) * v))
}

/// `(X, v) ↦ ⟨v, f(X) v⟩` for `f(x) = 1/x`, `f(x) = c − log x` and `f(x) = √x`.
///
/// The first two are operator monotone decreasing and must be jointly convex. For
/// `√x` (monotone increasing) the trial fixes `v` and reports the concavity margin,
/// and is marked when the convexity midpoint test fails.
fn hah_trial(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    match t.index % 3 {
        0 => midpoint_trial(
            t,
            &|_: &[usize], rng: &mut _| Ok(((), hah_pair(n, rng), hah_pair(n, rng))),
            &|_: &(), (x, v): &Pair| Ok(quad(&|l| 1.0 / l, x, v)),
            Direction::Convex,
        )
        .map(|s| s.map_witness(|w| w.text("f", "inverse"))),
        1 => {
            let s = midpoint_trial(
                t,
                &|_: &[usize], rng: &mut _| {
                    let (a, b) = (hah_pair(n, rng), hah_pair(n, rng));
                    let shift = a.0.spectral().max().max(b.0.spectral().max()).ln() + 1.0;
                    Ok((shift, a, b))
                },
                &|shift: &f64, (x, v): &Pair| Ok(quad(&|l| shift - l.ln(), x, v)),
                Direction::Convex,
            )?;
            Ok(s.map_witness(|w| w.text("f", "shifted_neg_log")))
        }
        _ => {
            let (xa, xb) = (random_pd(n, &mut t.rng), random_pd(n, &mut t.rng));
            let v = complex_gaussian(n, 1, &mut t.rng);
            let mid = xa.mix(&xb, 0.5)?;
            let (fa, fb, fm) = (quad(&f64::sqrt, &xa, &v), quad(&f64::sqrt, &xb, &v), quad(&f64::sqrt, &mid, &v));
            let avg = 0.5 * (fa + fb);
            let concave = le_slack(avg, fm);
            let convex = le_slack(fm, avg);
            let w = Witness::new().text("f", "sqrt").matrix("X_a", xa.matrix()).matrix("X_b", xb.matrix()).matrix("v", &v);
            Ok(Sample::new(concave, w.scalar("convexity_defect", convex)).marked(convex < -1e-8))
        }
    }
}

/// Runs the trials and requires at least one convexity violation for `√x`.
pub(super) fn hansen_ando_hiai(info: &CheckInfo, cfg: &CheckConfig, configs: &[Vec<usize>], tol: f64) -> Result<CheckReport> {
    let trials = cfg.trials.unwrap_or(info.default_trials);
    let mut report = run_trials(info.name, info.expected, tol, trials, configs, cfg, &hah_trial);
    let marked: usize = report.configs.iter().map(|c| c.marked).sum();
    report.details.push(format!("sqrt trials violating joint convexity: {marked}"));
    if report.status == Status::Pass && marked == 0 {
        report.details.push("no convexity violation found for sqrt".into());
        report.status = Status::Inconclusive;
    }
    Ok(report)
}

/// `Σ |⟨v_j, u_i⟩|² g(λ_i, μ_j) = D(X‖Y) + tr Y − tr X` on density pairs.
pub(super) fn donald_identity(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let x = random_density(n, n, &mut t.rng)?.into_psd();
    let y = random_density(n, n, &mut t.rng)?.into_psd();
    let donald = donald_entropy(&x, &y)?;
    let direct = umegaki(&x, &y)?.value + y.trace() - x.trace();
    let w = Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).entropy("donald", donald).entropy("umegaki", direct);
    Ok(Sample::new(-(donald - direct).abs(), w))
}

fn perspective_map(n: usize, m: usize, index: u64, rng: &mut TrialRng) -> CoreResult<(LinearMatrixMap, &'static str)> {
    Ok(match (index % 3, n == m) {
        (1, true) => (named_map(NamedMap::Transpose, n)?, "transpose"),
        (2, true) if n == 2 => (named_map(NamedMap::ChoiSchwarz, 2)?, "choi_schwarz"),
        (2, true) => (named_map(NamedMap::Transpose, n)?, "transpose"),
        _ => (cp_unital(n, m, rng)?.to_map(), "cp_unital"),
    })
}

/// `Φ(g_f(X, Y)) ≥ g_f(Φ(X), Φ(Y))` for operator convex `f` and unital positive `Φ`.
pub(super) fn perspective_monotone(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dims[0], t.dims[1]);
    let fid = pick(&[FunctionId::Square, FunctionId::Power(1.5), FunctionId::XLogX, FunctionId::Klein], t.index / 3);
    let f = catalog(fid)?;
    let (map, name) = perspective_map(n, m, t.index, &mut t.rng)?;
    let x = closure_psd(n, &mut t.rng)?;
    let y = random_pd(n, &mut t.rng);
    let lhs = map.apply(perspective(&f, &x, &y)?.matrix())?;
    let rhs = perspective(&f, &psd(map.apply(x.matrix())?)?, &psd(map.apply(y.matrix())?)?)?;
    let w = Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).text("map", name).text("f", fid.to_string());
    Ok(Sample::new(op_ge(&lhs, rhs.matrix())?, w))
}

/// `ρ ↦ tr[H²ρ] − tr[H ρ^{1/2} H ρ^{1/2}]` convex.
pub(super) fn wy_skew_convexity(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let h = random_hermitian(n, &mut t.rng);
    let s = midpoint_trial(
        t,
        &|_: &[usize], rng: &mut _| Ok(((), closure_psd(n, rng)?, closure_psd(n, rng)?)),
        &|_: &(), rho: &Psd| skew_information(rho, &h),
        Direction::Convex,
    )?;
    Ok(s.map_witness(|w| w.matrix("H", h.matrix())))
}

/// `tr[H ρ^{1/2} H ρ^{1/2}] = 2 Re tr[K* Y^{1/2} K X^{1/2}]` for `ρ = Y ⊕ X` and
/// `H = [[0, K], [K*, 0]]`, with `ρ^{1/2}` computed on the full block matrix.
pub(super) fn wy_block_identity(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let (y, x) = (closure_psd(n, &mut t.rng)?, closure_psd(n, &mut t.rng)?);
    let k = complex_gaussian(n, n, &mut t.rng);
    let mut rho = CMatrix::zeros(2 * n, 2 * n);
    rho.view_mut((0, 0), (n, n)).copy_from(y.matrix());
    rho.view_mut((n, n), (n, n)).copy_from(x.matrix());
    let mut h = CMatrix::zeros(2 * n, 2 * n);
    h.view_mut((0, n), (n, n)).copy_from(&k);
    h.view_mut((n, 0), (n, n)).copy_from(&k.adjoint());
    let r = psd(rho)?.sqrt();
    let lhs = rtr(&(&h * r.matrix() * &h * r.matrix()));
    let rhs = 2.0 * rtr(&(k.adjoint() * y.sqrt().matrix() * &k * x.sqrt().matrix()));
    let w = Witness::new().matrix("Y", y.matrix()).matrix("X", x.matrix()).matrix("K", &k).scalar("lhs", lhs).scalar("rhs", rhs);
    Ok(Sample::new(identity_slack((lhs - rhs).abs(), rhs), w))
}
