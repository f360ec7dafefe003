//! Operator inequalities for positive and completely positive maps, and the
//! Uhlmann and Stinespring constructions.

use rand::Rng;
use traceforge_core::channels::{
    block_embed, corner_embed, is_k_positive, named_map, stinespring_factorize, uhlmann_unitaries, KPositivity, KrausChannel,
    LinearMatrixMap, MapTag, NamedMap, PositivityMode,
};
use traceforge_core::linalg::random::{complex_gaussian, random_hermitian, random_pd, trial_rng, TrialRng};
use traceforge_core::linalg::{c, identity, kron, matrix_unit, max_abs_diff, operator_norm, partial_trace, FactorDims, Hermitian};
use traceforge_core::CMatrix;

use super::{cp_unital, identity_slack, op_ge, psd, sign_agreement, CoreResult};
use crate::report::{ConfigSummary, Status};
use crate::runner::{derive_seed, empty_report, Sample, Trial, TrialResult};
use crate::{CheckConfig, CheckInfo, CheckReport, Result, Witness};

fn random_cp(n: usize, m: usize, rng: &mut TrialRng) -> CoreResult<KrausChannel> {
    let count = rng.random_range(1..=3);
    KrausChannel::new(n, m, (0..count).map(|_| complex_gaussian(n, m, rng)).collect())
}

/// `Φ(A*A) ≥ Φ(A*B) Φ(B*B)^+ Φ(B*A)` for CP `Φ: M_n → M_m`; every fifth trial uses a rank-one `B`.
pub(super) fn lieb_ruskai(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dims[0], t.dims[1]);
    let phi = random_cp(n, m, &mut t.rng)?;
    let a = complex_gaussian(n, n, &mut t.rng);
    let b = if t.index % 5 == 4 {
        complex_gaussian(n, 1, &mut t.rng) * complex_gaussian(1, n, &mut t.rng)
    } else {
        complex_gaussian(n, n, &mut t.rng)
    };
    let lhs = phi.apply(&(a.adjoint() * &a))?;
    let ab = phi.apply(&(a.adjoint() * &b))?;
    let bb = psd(phi.apply(&(b.adjoint() * &b))?)?;
    let rhs = &ab * bb.pinv().matrix() * ab.adjoint();
    let w = Witness::new().matrix("A", &a).matrix("B", &b);
    Ok(Sample::new(op_ge(&lhs, &rhs)?, w))
}

/// `[[X, Z], [Z*, Y]] ≥ 0 ⟺ Y ≥ Z* X^{-1} Z`, with `Y − Z* X^{-1} Z` positive, negative
/// or indefinite by trial index. The slack measures agreement of the two sides' signs.
pub(super) fn schur_complement(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let x = random_pd(n, &mut t.rng);
    let z = complex_gaussian(n, n, &mut t.rng);
    let w = match t.index % 3 {
        0 => random_pd(n, &mut t.rng).hermitian().clone(),
        1 => random_pd(n, &mut t.rng).hermitian().clone().scale(-1.0),
        _ => random_hermitian(n, &mut t.rng),
    };
    let y = z.adjoint() * x.inv()?.matrix() * &z + w.matrix();
    let mut block = CMatrix::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(x.matrix());
    block.view_mut((0, n), (n, n)).copy_from(&z);
    block.view_mut((n, 0), (n, n)).copy_from(&z.adjoint());
    block.view_mut((n, n), (n, n)).copy_from(&y);
    let scale = 1.0 + operator_norm(&block);
    let a = Hermitian::hermitian_part(block).min_eigenvalue()? / scale;
    let b = w.min_eigenvalue()? / scale;
    let wit = Witness::new().matrix("X", x.matrix()).matrix("Z", &z).matrix("Y", &y).scalar("block_min_eig", a).scalar("complement_min_eig", b);
    Ok(Sample::new(sign_agreement(a, b), wit))
}

/// `Σ X_j* C_j^{-1} X_j ≥ (Σ X_j)* (Σ C_j)^{-1} (Σ X_j)` with `dims = [n, terms]`.
pub(super) fn kiefer(t: &mut Trial) -> TrialResult {
    let (n, terms) = (t.dims[0], t.dims[1]);
    let mut lhs = CMatrix::zeros(n, n);
    let mut sx = CMatrix::zeros(n, n);
    let mut sc = CMatrix::zeros(n, n);
    for _ in 0..terms {
        let x = complex_gaussian(n, n, &mut t.rng);
        let cj = random_pd(n, &mut t.rng);
        lhs += x.adjoint() * cj.inv()?.matrix() * &x;
        sx += &x;
        sc += cj.matrix();
    }
    let rhs = sx.adjoint() * psd(sc)?.inv()?.matrix() * &sx;
    Ok(Sample::new(op_ge(&lhs, &rhs)?, Witness::new().matrix("lhs", &lhs).matrix("rhs", &rhs)))
}

/// `Φ(A*A) ≥ Φ(A)* Φ(A)` for unital CP `Φ`, and for the Choi Schwarz map on `M_2`.
pub(super) fn kadison_schwarz(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dims[0], t.dims[1]);
    let (map, name) = if n == 2 && m == 2 && t.index % 3 == 2 {
        (named_map(NamedMap::ChoiSchwarz, 2)?, "choi_schwarz")
    } else {
        (cp_unital(n, m, &mut t.rng)?.to_map(), "cp_unital")
    };
    let a = complex_gaussian(n, n, &mut t.rng);
    let fa = map.apply(&a)?;
    let slack = op_ge(&map.apply(&(a.adjoint() * &a))?, &(fa.adjoint() * &fa))?;
    Ok(Sample::new(slack, Witness::new().matrix("A", &a).text("map", name)))
}

/// Normalized smallest eigenvalue of `(id_k ⊗ Φ)(z)`.
fn ampliated_eig(map: &LinearMatrixMap, z: &CMatrix, k: usize) -> CoreResult<f64> {
    let out = map.apply_ampliated(z, k)?;
    let scale = 1.0 + operator_norm(&out);
    Ok(Hermitian::hermitian_part(out).min_eigenvalue()? / scale)
}

/// A 2-positivity witness for the Choi Schwarz map, re-verified by recomputation.
pub(crate) fn choi_witness(k: usize, trials: usize, rng: &mut TrialRng) -> CoreResult<Option<(CMatrix, f64)>> {
    let map = named_map(NamedMap::ChoiSchwarz, 2)?;
    let mode = if k >= 3 { PositivityMode::ExactCp } else { PositivityMode::RefuteSample };
    match is_k_positive(&map, k, mode, trials, rng)? {
        KPositivity::Violated { witness, .. } => {
            let eig = ampliated_eig(&map, &witness, k)?;
            Ok((eig < 0.0).then_some((witness, eig)))
        }
        _ => Ok(None),
    }
}

const SCHWARZ_FLOOR: f64 = -1e-10;
const WITNESS_CEILING: f64 = -1e-3;

/// Schwarz sampling on the Choi map followed by a `k`-positivity refutation,
/// with `dims = [2, k]`. Fails (as expected) when Schwarz holds throughout and a
/// witness with eigenvalue at most `−1e-3` is found.
pub(super) fn choi_separation(info: &CheckInfo, cfg: &CheckConfig, configs: &[Vec<usize>], tol: f64) -> Result<CheckReport> {
    let trials = cfg.trials.unwrap_or(info.default_trials);
    let map = named_map(NamedMap::ChoiSchwarz, 2)?;
    let mut report = empty_report(info, cfg, tol);
    let mut all_separate = true;
    for (ci, dims) in configs.iter().enumerate() {
        let seed = derive_seed(cfg.seed, info.name, ci);
        let mut schwarz = f64::INFINITY;
        for i in 0..trials as u64 {
            let a = complex_gaussian(2, 2, &mut trial_rng(seed, i));
            let fa = map.apply(&a)?;
            schwarz = schwarz.min(op_ge(&map.apply(&(a.adjoint() * &a))?, &(fa.adjoint() * &fa))?);
        }
        let k = dims[1];
        let found = choi_witness(k, trials, &mut trial_rng(seed, trials as u64))?;
        let eig = found.as_ref().map(|(_, e)| *e);
        let separated = schwarz >= SCHWARZ_FLOOR && eig.is_some_and(|e| e <= WITNESS_CEILING);
        all_separate &= separated;
        report.details.push(format!(
            "dims {dims:?}: Schwarz worst slack {schwarz:.3e} over {trials} samples; {k}-positivity eigenvalue {}",
            eig.map_or("none found".to_string(), |e| format!("{e:.6e}"))
        ));
        report.trials_run += trials;
        let worst = eig.unwrap_or(schwarz).min(schwarz);
        report.worst_slack = Some(report.worst_slack.map_or(worst, |w: f64| w.min(worst)));
        report.configs.push(ConfigSummary { dims: dims.clone(), seed, trials, worst_slack: Some(worst), discarded: 0, resampled: 0, marked: 0 });
        if let (Some((z, e)), None) = (found, &report.witness) {
            if separated {
                report.witness = Some(
                    Witness::new()
                        .dims("dims", dims)
                        .text("map", "choi_schwarz")
                        .scalar("k", k as f64)
                        .matrix("input", &z)
                        .scalar("eigenvalue", e)
                        .scalar("schwarz_worst_slack", schwarz),
                );
            }
        }
    }
    report.status = if all_separate && report.witness.is_some() { Status::Fail } else { Status::Inconclusive };
    Ok(report)
}

/// The map used by a trial of `ando_choi`, with its name.
fn ando_choi_map(n: usize, index: u64, rng: &mut TrialRng) -> CoreResult<(LinearMatrixMap, &'static str)> {
    Ok(match index % 4 {
        0 => (named_map(NamedMap::Transpose, n)?, "transpose"),
        1 => (cp_unital(n, n, rng)?.to_map(), "cp_unital"),
        2 if n == 2 => (named_map(NamedMap::ChoiSchwarz, 2)?, "choi_schwarz"),
        2 => (named_map(NamedMap::Transpose, n)?, "transpose"),
        _ => (
            LinearMatrixMap::from_fn(n, n + 1, MapTag::Custom, |z| corner_embed(&z.transpose(), n + 1).expect("n <= n + 1"))?,
            "padded_transpose",
        ),
    })
}

/// `Φ(H X^{-1} H) ≥ Φ(H) Φ(X)^+ Φ(H)` for positive `Φ`, Hermitian `H`, PD `X`.
pub(super) fn ando_choi(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let (map, name) = ando_choi_map(n, t.index, &mut t.rng)?;
    let h = random_hermitian(n, &mut t.rng);
    let x = random_pd(n, &mut t.rng);
    let lhs = map.apply(&(h.matrix() * x.inv()?.matrix() * h.matrix()))?;
    let fh = map.apply(h.matrix())?;
    let fx = psd(map.apply(x.matrix())?)?;
    let rhs = &fh * fx.pinv().matrix() * &fh;
    let w = Witness::new().matrix("H", h.matrix()).matrix("X", x.matrix()).text("map", name);
    Ok(Sample::new(op_ge(&lhs, &rhs)?, w))
}

/// Largest deviation of the Uhlmann average from `(1/m) I_m ⊗ tr_1 Y`.
fn uhlmann_error(us: &[CMatrix], y: &CMatrix, m: usize, n: usize) -> CoreResult<f64> {
    let mut avg = CMatrix::zeros(m * n, m * n);
    for u in us {
        avg += u.adjoint() * y * u;
    }
    avg /= c((m * m) as f64);
    let reduced = partial_trace(y, &FactorDims::new(vec![m, n])?, &[0])?;
    Ok(max_abs_diff(&avg, &(block_embed(&reduced, m) / c(m as f64))))
}

/// Trial 0 sweeps every matrix unit of `M_{mn}`; later trials use random `Y`.
pub(super) fn uhlmann_average(t: &mut Trial) -> TrialResult {
    let (m, n) = (t.dims[0], t.dims[1]);
    let us = uhlmann_unitaries(m, n)?;
    let d = m * n;
    if t.index == 0 {
        let mut worst = 0.0f64;
        for j in 0..d {
            for i in 0..d {
                worst = worst.max(uhlmann_error(&us, &matrix_unit(d, i, j), m, n)?);
            }
        }
        return Ok(Sample::new(-worst, Witness::new().text("input", "matrix_unit_basis").scalar("error", worst)));
    }
    let y = complex_gaussian(d, d, &mut t.rng);
    let err = uhlmann_error(&us, &y, m, n)?;
    Ok(Sample::new(-err, Witness::new().matrix("Y", &y).scalar("error", err)))
}

/// Every Uhlmann unitary commutes with `I_m ⊗ A`.
pub(super) fn uhlmann_commute(t: &mut Trial) -> TrialResult {
    let (m, n) = (t.dims[0], t.dims[1]);
    let a = complex_gaussian(n, n, &mut t.rng);
    let ia = kron(&identity(m), &a);
    let mut worst = 0.0f64;
    for u in uhlmann_unitaries(m, n)? {
        worst = worst.max(max_abs_diff(&(&u * &ia), &(&ia * &u)));
    }
    Ok(Sample::new(-worst, Witness::new().matrix("A", &a).scalar("error", worst)))
}

/// Factor a random unital CP map `M_p → M_q` and rebuild it.
pub(super) fn stinespring_roundtrip(t: &mut Trial) -> TrialResult {
    let (p, q) = (t.dims[0], t.dims[1]);
    let phi = cp_unital(p, q, &mut t.rng)?;
    let f = stinespring_factorize(&phi, &mut t.rng)?;
    let (unitarity, recon) = (f.unitarity_defect(), f.reconstruction_error(&phi)?);
    let w = Witness::new().scalar("kraus_count", phi.kraus_ops().len() as f64).scalar("unitarity_defect", unitarity);
    Ok(Sample::new(identity_slack(unitarity.max(recon), 0.0), w.scalar("reconstruction_error", recon)))
}
