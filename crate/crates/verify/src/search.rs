//! Budgeted counterexample searches. A search either finds a violation, which is
//! re-verified by recomputation before being reported as a failure, or exhausts
//! its budget and reports inconclusive; it never reports pass.

use rand::Rng;
use traceforge_core::linalg::random::{complex_gaussian, random_psd, real_gaussian, trial_rng, TrialRng};
use traceforge_core::linalg::{c, FactorDims, Psd};
use traceforge_core::CMatrix;

use crate::checks::{choi_witness, minkowski_three_sides, psd, upsilon, CoreResult};
use crate::report::{ConfigSummary, Status};
use crate::runner::{derive_seed, empty_report, resolve_dims, resolve_tol};
use crate::{CheckConfig, CheckId, CheckInfo, CheckReport, Result, VerifyError, Witness};

/// Score a candidate must exceed to count as a violation.
const FOUND: f64 = 1e-6;
/// Evaluations between restarts of the evolution strategy.
const RESTART: usize = 600;

/// Result of searching one dimension configuration.
struct Outcome {
    evaluations: usize,
    /// Violation magnitude (negative slack) and its witness, once re-verified.
    found: Option<(f64, Witness)>,
}

fn normalized(a: f64, b: f64) -> f64 {
    (a - b) / (1.0 + a.abs().max(b.abs()))
}

fn gram_state(g: &CMatrix) -> CoreResult<Psd> {
    let m = g * g.adjoint();
    let tr = m.trace().re;
    psd(m / c(tr))
}

/// `(lhs − rhs)` of the three-factor Minkowski inequality at `p = 3`, normalized.
fn minkowski_score(a: &Psd, dims: &FactorDims) -> CoreResult<f64> {
    let (l, r) = minkowski_three_sides(a, dims, 3.0)?;
    Ok(normalized(l, r))
}

/// Looks for states with `lhs > rhs` and with `lhs < rhs` at `p = 3`.
///
/// `lhs < rhs` appears on generic states. `lhs > rhs` is rare, so a (1+1)
/// evolution strategy climbs the normalized gap over low-rank Gram factors
/// `A = G G*/tr(G G*)`, restarting periodically with a fresh rank.
fn search_minkowski(dims: &[usize], budget: usize, rng: &mut TrialRng) -> CoreResult<Outcome> {
    let fd = FactorDims::new(dims.to_vec())?;
    let n = fd.total();
    let mut evals = 0;
    let mut upper: Option<(Psd, f64)> = None;
    let mut lower: Option<(Psd, f64)> = None;
    'outer: while evals < budget {
        let r = rng.random_range(2..=4usize).min(n);
        let mut g = complex_gaussian(n, r, rng);
        let mut best = minkowski_score(&gram_state(&g)?, &fd)?;
        evals += 1;
        let mut sigma = 0.3;
        for _ in 0..RESTART {
            if evals >= budget {
                break 'outer;
            }
            let cand = &g + complex_gaussian(n, r, rng) * c(sigma);
            let a = gram_state(&cand)?;
            let score = minkowski_score(&a, &fd)?;
            evals += 1;
            if score < -FOUND && lower.is_none() {
                lower = Some((a.clone(), score));
            }
            if score > best {
                g = cand;
                best = score;
                sigma *= 1.5;
            } else {
                sigma *= 0.9;
            }
            if score > FOUND {
                upper = Some((a, score));
            }
            if upper.is_some() && lower.is_some() {
                break 'outer;
            }
        }
    }
    let found = match (upper, lower) {
        (Some((au, su)), Some((al, sl))) => {
            // Recompute both gaps from the stored matrices.
            let ru = minkowski_score(&psd(au.matrix().clone())?, &fd)?;
            let rl = minkowski_score(&psd(al.matrix().clone())?, &fd)?;
            (ru > FOUND / 10.0 && rl < -FOUND / 10.0).then(|| {
                let w = Witness::new()
                    .scalar("p", 3.0)
                    .matrix("A_lhs_greater", au.matrix())
                    .scalar("gap_lhs_greater", su)
                    .matrix("A_lhs_smaller", al.matrix())
                    .scalar("gap_lhs_smaller", sl);
                (-(ru.min(-rl)), w)
            })
        }
        _ => None,
    };
    Ok(Outcome { evaluations: evals, found })
}

/// Midpoint defect `(Υ(mid) − avg)` of `Υ_{3,1}`, normalized.
fn carlen_defect(b: &CMatrix, xa: &Psd, xb: &Psd) -> CoreResult<f64> {
    let (fa, fb) = (upsilon(xa, b, 3.0, 1.0)?, upsilon(xb, b, 3.0, 1.0)?);
    let fm = upsilon(&xa.mix(xb, 0.5)?, b, 3.0, 1.0)?;
    Ok(normalized(fm, 0.5 * (fa + fb)))
}

/// Random search for a convexity violation (`Υ(mid) > avg`) and a concavity
/// violation (`Υ(mid) < avg`) of `X ↦ tr[(B* X^3 B)^{1/3}]`, over `n × m` matrices `B`
/// and low-rank `X`.
fn search_carlen(dims: &[usize], budget: usize, rng: &mut TrialRng) -> CoreResult<Outcome> {
    let (n, m) = (dims[0], dims[1]);
    let mut evals = 0;
    let mut convex_fail: Option<(CMatrix, Psd, Psd, f64)> = None;
    let mut concave_fail: Option<(CMatrix, Psd, Psd, f64)> = None;
    while evals + 3 <= budget && (convex_fail.is_none() || concave_fail.is_none()) {
        let b = complex_gaussian(n, m, rng);
        let ra = rng.random_range(1..=2usize).min(n);
        let rb = rng.random_range(1..=2usize).min(n);
        let xa = random_psd(n, ra, rng)?;
        let xb = random_psd(n, rb, rng)?.scale((0.5 * real_gaussian(rng)).exp());
        let d = carlen_defect(&b, &xa, &xb)?;
        evals += 3;
        if d > FOUND && convex_fail.is_none() {
            convex_fail = Some((b, xa, xb, d));
        } else if d < -FOUND && concave_fail.is_none() {
            concave_fail = Some((b, xa, xb, d));
        }
    }
    let found = match (convex_fail, concave_fail) {
        (Some((b1, a1, c1, d1)), Some((b2, a2, c2, d2))) => {
            let r1 = carlen_defect(&b1, &psd(a1.matrix().clone())?, &psd(c1.matrix().clone())?)?;
            let r2 = carlen_defect(&b2, &psd(a2.matrix().clone())?, &psd(c2.matrix().clone())?)?;
            (r1 > FOUND / 10.0 && r2 < -FOUND / 10.0).then(|| {
                let w = Witness::new()
                    .scalar("p", 3.0)
                    .scalar("q", 1.0)
                    .matrix("convexity_B", &b1)
                    .matrix("convexity_X_a", a1.matrix())
                    .matrix("convexity_X_b", c1.matrix())
                    .scalar("convexity_defect", -d1)
                    .matrix("concavity_B", &b2)
                    .matrix("concavity_X_a", a2.matrix())
                    .matrix("concavity_X_b", c2.matrix())
                    .scalar("concavity_defect", d2);
                (-(r1.min(-r2)), w)
            })
        }
        _ => None,
    };
    Ok(Outcome { evaluations: evals, found })
}

/// The deterministic full-depolarizer instance on `M_n`.
fn search_ando(dims: &[usize], tol: f64) -> CoreResult<Outcome> {
    let n = dims[0];
    let mut d = vec![0.0; n];
    d[0] = 1.0;
    d[1] = -1.0;
    let mixed = Psd::identity(n).scale(1.0 / n as f64);
    let k = traceforge_core::linalg::diag(&d);
    let s = crate::checks::ando_false_sample(&mixed, &mixed, &k, 0.5)?;
    let again = crate::checks::ando_false_sample(&mixed, &mixed, &k, 0.5)?;
    let found = (s.slack < -tol && again.slack < -tol / 10.0).then_some((s.slack, s.witness));
    Ok(Outcome { evaluations: 1, found })
}

fn search_choi(dims: &[usize], budget: usize, rng: &mut TrialRng) -> CoreResult<Outcome> {
    let k = dims[1];
    let found = choi_witness(k, budget, rng)?
        .map(|(z, e)| (e, Witness::new().text("map", "choi_schwarz").scalar("k", k as f64).matrix("input", &z).scalar("eigenvalue", e)));
    // The structured entangled input is tried first and usually suffices.
    Ok(Outcome { evaluations: if found.is_some() { 1 } else { budget }, found })
}

fn search_one(id: CheckId, dims: &[usize], budget: usize, tol: f64, rng: &mut TrialRng) -> CoreResult<Outcome> {
    match id {
        CheckId::MinkowskiThreePGt2 => search_minkowski(dims, budget, rng),
        CheckId::CarlenLiebPGt2 => search_carlen(dims, budget, rng),
        CheckId::AndoMonoFalse => search_ando(dims, tol),
        CheckId::ChoiSeparation => search_choi(dims, budget, rng),
        _ => Err(traceforge_core::Error::Precondition(format!("{id} has no search"))),
    }
}

/// Searches the configurations in order until one yields a re-verified
/// violation, which refutes the claim; the status is inconclusive if none does.
pub(crate) fn run_search_mode(info: &CheckInfo, cfg: &CheckConfig, configs: &[Vec<usize>], tol: f64) -> Result<CheckReport> {
    let mut report = empty_report(info, cfg, tol);
    let mut found_any = false;
    for (ci, dims) in configs.iter().enumerate() {
        if found_any {
            report.details.push(format!("dims {dims:?}: not searched, a counterexample is already verified"));
            continue;
        }
        let seed = derive_seed(cfg.seed, info.name, ci);
        let out = search_one(info.id, dims, cfg.search_budget, tol, &mut trial_rng(seed, 0))?;
        report.trials_run += out.evaluations;
        let worst = out.found.as_ref().map(|(s, _)| *s);
        report.configs.push(ConfigSummary {
            dims: dims.clone(),
            seed,
            trials: out.evaluations,
            worst_slack: worst,
            discarded: 0,
            resampled: 0,
            marked: 0,
        });
        match out.found {
            Some((slack, w)) => {
                found_any = true;
                report.details.push(format!("dims {dims:?}: violation found after {} evaluations", out.evaluations));
                report.worst_slack = Some(report.worst_slack.map_or(slack, |x: f64| x.min(slack)));
                if report.witness.is_none() {
                    report.witness = Some(Witness::new().dims("dims", dims).scalar("evaluations", out.evaluations as f64).extend(w));
                }
            }
            None => {
                report.details.push(format!(
                    "dims {dims:?}: budget of {} evaluations exhausted without a verified violation; increase --budget",
                    cfg.search_budget
                ));
            }
        }
    }
    report.status = if found_any { Status::Fail } else { Status::Inconclusive };
    Ok(report)
}

/// Budgeted counterexample search for one of the searchable checks.
pub fn search_counterexample(id: CheckId, cfg: &CheckConfig) -> Result<CheckReport> {
    let info = id.info();
    if !info.searchable {
        return Err(VerifyError::NotSearchable(info.name.into()));
    }
    cfg.validate()?;
    let configs = resolve_dims(&info, cfg)?;
    let tol = resolve_tol(&info, cfg);
    let start = std::time::Instant::now();
    let mut report = run_search_mode(&info, cfg, &configs, tol)?;
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}
