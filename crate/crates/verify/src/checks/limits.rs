//! Limits, derivatives and closed-form oracles. Each trial compares several
//! computed quantities with their own tolerances; the slack is the negated worst
//! ratio of error to tolerance, so a trial fails when any ratio exceeds one.

use traceforge_core::entropy::{bs_entropy, classical_kl, classical_renyi, sandwiched_renyi, umegaki};
use traceforge_core::gns::{hess_log, metric_bkm, metric_wyd, t_map};
use traceforge_core::linalg::random::{random_density, random_hermitian, random_pd, random_probabilities, random_traceless_hermitian, TrialRng};
use traceforge_core::linalg::{c, diag, max_abs_diff, operator_norm, Hermitian, Psd};
use traceforge_core::opfunc::{catalog, perspective, FunctionId};
use traceforge_core::quadrature::integrate_half_line_matrix;
use traceforge_core::CMatrix;

use super::{pick, rtr, CoreResult};
use crate::runner::{Sample, Trial, TrialResult};
use crate::Witness;

const RELENT_T: f64 = 1.0 - 1e-4;
const RELENT_TOL: f64 = 1e-4;
const RENYI_STEP: f64 = 1e-4;
const RENYI_TOL: f64 = 1e-3;
const FD_STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-6;
const SECOND_STEP: f64 = 1e-3;
const SECOND_TOL: f64 = 1e-5;
const QUAD_TOL: f64 = 1e-7;
const ORACLE_TOL: f64 = 1e-10;

/// Density with spectrum at least `1/(2n)`: half random, half maximally mixed.
fn conditioned_density(n: usize, rng: &mut TrialRng) -> CoreResult<Psd> {
    random_density(n, n, rng)?.into_psd().mix(&Psd::identity(n).scale(1.0 / n as f64), 0.5)
}

/// `(1 − tr[Y^{1−t} X^t])/(1 − t)` against `D(X‖Y)` at `t = 1 − 1e-4`.
///
/// The gap is about `(1 − t)/2 · Σ |⟨u_i, v_j⟩|² λ_i (log λ_i − log μ_j)²`, so a
/// fixed tolerance needs a bounded log ratio; both states are conditioned.
pub(super) fn relent_limit(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let x = conditioned_density(n, &mut t.rng)?;
    let y = conditioned_density(n, &mut t.rng)?;
    let d = umegaki(&x, &y)?.value;
    let tr = rtr(&(y.pow(1.0 - RELENT_T)?.matrix() * x.pow(RELENT_T)?.matrix()));
    let approx = (1.0 - tr) / (1.0 - RELENT_T);
    let err = (approx - d).abs();
    let w = Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).entropy("D", d).entropy("approximant", approx);
    Ok(Sample::new(-err / RELENT_TOL, w.scalar("t", RELENT_T)))
}

/// Sandwiched Rényi divergence at `α = 1 ± 1e-4` against the Umegaki relative entropy.
pub(super) fn renyi_limit(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let rho = conditioned_density(n, &mut t.rng)?;
    let sigma = conditioned_density(n, &mut t.rng)?;
    let d = umegaki(&rho, &sigma)?.value;
    let below = sandwiched_renyi(&rho, &sigma, 1.0 - RENYI_STEP)?;
    let above = sandwiched_renyi(&rho, &sigma, 1.0 + RENYI_STEP)?;
    let err = (below - d).abs().max((above - d).abs());
    let w = Witness::new().matrix("rho", rho.matrix()).matrix("sigma", sigma.matrix()).entropy("D", d);
    Ok(Sample::new(-err / RENYI_TOL, w.entropy("below", below).entropy("above", above)))
}

fn log_at(a: &Psd, b: &Hermitian, s: f64) -> CoreResult<CMatrix> {
    Ok(Psd::new(a.hermitian().add(&b.scale(s)))?.log()?.into_matrix())
}

/// `T_X` against central differences of `log`, and the Hessian of `log` against
/// second differences and against the resolvent integral.
pub(super) fn log_derivatives(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    // Difference quotients of log lose about eps·κ(X)/h² to rounding, so X is
    // kept within condition number 2n + 1.
    let x0 = random_pd(n, &mut t.rng);
    let x = x0.mix(&Psd::identity(n).scale(x0.trace() / n as f64), 0.5)?;
    let k = random_hermitian(n, &mut t.rng);

    // Difference steps are relative to the scale λ_min/‖K‖ on which log varies.
    let unit = x.eigenvalues()[0] / operator_norm(k.matrix());
    let tm = t_map(&x, k.matrix())?;
    let h = FD_STEP * unit;
    let fd = (log_at(&x, &k, h)? - log_at(&x, &k, -h)?) / c(2.0 * h);
    let e_fd = max_abs_diff(&tm, &fd) / (1.0 + tm.camax());

    let hl = hess_log(&x, &k)?;
    let h = SECOND_STEP * unit;
    let second = (log_at(&x, &k, h)? - log_at(&x, &k, 0.0)? * c(2.0) + log_at(&x, &k, -h)?) / c(-h * h);
    let scale = 1.0 + hl.matrix().camax();
    let e_second = max_abs_diff(hl.matrix(), &second) / scale;

    let spec = x.spectral();
    let quad = integrate_half_line_matrix(
        |s| {
            let r = spec.rebuild(|l| 1.0 / (s + l));
            &r * k.matrix() * &r * k.matrix() * &r * c(2.0)
        },
        1e-12,
    );
    let e_quad = max_abs_diff(hl.matrix(), &quad) / scale;

    let ratio = (e_fd / FD_TOL).max(e_second / SECOND_TOL).max(e_quad / QUAD_TOL);
    let w = Witness::new()
        .matrix("X", x.matrix())
        .matrix("K", k.matrix())
        .scalar("t_map_vs_difference", e_fd)
        .scalar("hessian_vs_second_difference", e_second)
        .scalar("hessian_vs_quadrature", e_quad)
        .scalar("step_unit", unit);
    Ok(Sample::new(-ratio, w))
}

/// `(log a − log b)/(a − b)`, with `1/a` on the diagonal.
fn log_dd(a: f64, b: f64) -> f64 {
    if (a - b).abs() <= 1e-12 * a.max(b) {
        2.0 / (a + b)
    } else {
        (a.ln() - b.ln()) / (a - b)
    }
}

/// Error of `a` against the closed form `b`, as a multiple of `1e-10 (1 + |b|)`.
fn oracle_ratio(a: f64, b: f64) -> f64 {
    (a - b).abs() / (ORACLE_TOL * (1.0 + b.abs()))
}

/// Matrix formulas on diagonal inputs against their classical closed forms.
pub(super) fn commuting_oracles(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let p = random_probabilities(n, &mut t.rng);
    let q = random_probabilities(n, &mut t.rng);
    let (dp, dq) = (Psd::new(Hermitian::from_real_diagonal(&p))?, Psd::new(Hermitian::from_real_diagonal(&q))?);
    let alpha = pick(&[1.5, 2.0, 0.7], t.index);
    let tt = pick(&[0.3, 0.5, 0.8], t.index / 3);
    let fid = pick(&[FunctionId::Square, FunctionId::Power(1.5), FunctionId::XLogX, FunctionId::Klein, FunctionId::NegLog], t.index);
    let k = random_traceless_hermitian(n, &mut t.rng);
    let km = k.matrix();

    let umeg = oracle_ratio(umegaki(&dp, &dq)?.value, classical_kl(&p, &q)?);
    let renyi = oracle_ratio(sandwiched_renyi(&dp, &dq, alpha)?, classical_renyi(&p, &q, alpha));
    let bs = oracle_ratio(bs_entropy(&dq, &dp)?, classical_kl(&q, &p)?);
    let mut wyd_closed = 0.0;
    let mut bkm_closed = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w2 = km[(i, j)].norm_sqr();
            wyd_closed += w2 * p[j].powf(tt - 1.0) * p[i].powf(-tt);
            bkm_closed += w2 * log_dd(p[i], p[j]);
        }
    }
    let wyd = oracle_ratio(metric_wyd(&dp, &k, tt)?, wyd_closed);
    let bkm = oracle_ratio(metric_bkm(&dp, &k)?, bkm_closed);
    let f = catalog(fid)?;
    let closed: Vec<f64> = p.iter().zip(&q).map(|(&a, &b)| f.eval(a / b) * b).collect();
    let closed = diag(&closed);
    let persp = max_abs_diff(perspective(&f, &dp, &dq)?.matrix(), &closed) / (ORACLE_TOL * (1.0 + closed.camax()));

    let ratio = [umeg, renyi, bs, wyd, bkm, persp].into_iter().fold(0.0, f64::max);
    let w = Witness::new()
        .matrix("p", &diag(&p))
        .matrix("q", &diag(&q))
        .matrix("K", km)
        .scalar("alpha", alpha)
        .scalar("t", tt)
        .text("f", fid.to_string())
        .scalar("umegaki_ratio", umeg)
        .scalar("renyi_ratio", renyi)
        .scalar("bs_ratio", bs)
        .scalar("wyd_ratio", wyd)
        .scalar("bkm_ratio", bkm)
        .scalar("perspective_ratio", persp);
    Ok(Sample::new(-ratio, w))
}
