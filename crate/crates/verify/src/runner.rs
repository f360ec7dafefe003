use std::time::Instant;

use rayon::prelude::*;
use traceforge_core::linalg::random::{trial_rng, TrialRng};

use crate::checks::{self, Kind};
use crate::report::{CheckReport, ConfigSummary, Status, Units};
use crate::{search, CheckConfig, CheckId, CheckInfo, Result, Witness};

/// Per-trial context handed to a check.
pub(crate) struct Trial<'a> {
    pub dims: &'a [usize],
    pub index: u64,
    pub rng: TrialRng,
}

/// Outcome of one trial.
pub(crate) struct Sample {
    pub slack: f64,
    pub witness: Witness,
    pub resampled: bool,
    pub marked: bool,
}

impl Sample {
    pub fn new(slack: f64, witness: Witness) -> Self {
        Self { slack, witness, resampled: false, marked: false }
    }

    pub fn resampled(mut self, yes: bool) -> Self {
        self.resampled = yes;
        self
    }

    pub fn marked(mut self, yes: bool) -> Self {
        self.marked = yes;
        self
    }

    pub fn map_witness(mut self, f: impl FnOnce(Witness) -> Witness) -> Self {
        self.witness = f(self.witness);
        self
    }
}

pub(crate) type TrialResult = traceforge_core::Result<Sample>;

/// Seed of configuration `config` of check `name` under root seed `root`.
pub fn derive_seed(root: u64, name: &str, config: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut z = h ^ root.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (config as u64 + 1).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Dimension configurations for a run: the override if given, else the registry defaults.
pub(crate) fn resolve_dims(info: &CheckInfo, cfg: &CheckConfig) -> Result<Vec<Vec<usize>>> {
    match &cfg.dims {
        Some(d) => {
            info.check_dims(d)?;
            Ok(vec![d.clone()])
        }
        None => Ok(info.default_dims.iter().map(|d| d.to_vec()).collect()),
    }
}

pub(crate) fn resolve_tol(info: &CheckInfo, cfg: &CheckConfig) -> f64 {
    match cfg.tol {
        Some(t) if !info.slack.is_identity() => t,
        _ => info.slack.default_tol(),
    }
}

pub(crate) fn empty_report(info: &CheckInfo, cfg: &CheckConfig, tol: f64) -> CheckReport {
    CheckReport {
        id: info.name.into(),
        status: Status::Inconclusive,
        expected: info.expected,
        worst_slack: None,
        tol,
        witness: None,
        trials_run: 0,
        discarded: 0,
        resampled: 0,
        seed: cfg.seed,
        units: Units::Nats,
        configs: Vec::new(),
        details: Vec::new(),
        wall_time: 0.0,
    }
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Runs `trials` independent trials per configuration and reduces them in trial order.
pub(crate) fn run_trials(
    name: &str,
    expected: Status,
    tol: f64,
    trials: usize,
    configs: &[Vec<usize>],
    cfg: &CheckConfig,
    f: &(dyn Fn(&mut Trial) -> TrialResult + Sync),
) -> CheckReport {
    let mut report = CheckReport {
        id: name.into(),
        status: Status::Inconclusive,
        expected,
        worst_slack: None,
        tol,
        witness: None,
        trials_run: 0,
        discarded: 0,
        resampled: 0,
        seed: cfg.seed,
        units: Units::Nats,
        configs: Vec::new(),
        details: Vec::new(),
        wall_time: 0.0,
    };
    let mut evaluated = 0usize;
    let mut failure: Option<(usize, u64, Sample)> = None;
    for (ci, dims) in configs.iter().enumerate() {
        let seed = derive_seed(cfg.seed, name, ci);
        let results: Vec<TrialResult> = (0..trials as u64)
            .into_par_iter()
            .map(|index| f(&mut Trial { dims, index, rng: trial_rng(seed, index) }))
            .collect();
        let mut summary =
            ConfigSummary { dims: dims.clone(), seed, trials, worst_slack: None, discarded: 0, resampled: 0, marked: 0 };
        let mut first_discard = None;
        for (index, r) in results.into_iter().enumerate() {
            match r {
                Ok(s) if s.slack.is_finite() => {
                    evaluated += 1;
                    summary.worst_slack = min_opt(summary.worst_slack, Some(s.slack));
                    summary.resampled += usize::from(s.resampled);
                    summary.marked += usize::from(s.marked);
                    if s.slack < -tol && failure.is_none() {
                        failure = Some((ci, index as u64, s));
                    }
                }
                Ok(s) => {
                    summary.discarded += 1;
                    first_discard.get_or_insert_with(|| format!("trial {index}: non-finite slack {}", s.slack));
                }
                Err(e) => {
                    summary.discarded += 1;
                    first_discard.get_or_insert_with(|| format!("trial {index}: {e}"));
                }
            }
        }
        if let Some(msg) = first_discard {
            report.details.push(format!("dims {dims:?}: {} discarded, first {msg}", summary.discarded));
        }
        report.trials_run += trials;
        report.discarded += summary.discarded;
        report.resampled += summary.resampled;
        report.worst_slack = min_opt(report.worst_slack, summary.worst_slack);
        report.configs.push(summary);
    }

    report.status = match failure {
        Some((ci, index, sample)) => {
            // Recompute from the trial's own stream; the violation must persist at tol/10.
            let dims = &configs[ci];
            let seed = derive_seed(cfg.seed, name, ci);
            let again = f(&mut Trial { dims, index, rng: trial_rng(seed, index) });
            match again {
                Ok(s) if s.slack < -tol / 10.0 => {
                    report.details.push(format!("violation at dims {dims:?}, trial {index}, re-verified with slack {:.6e}", s.slack));
                    report.witness = Some(
                        Witness::new()
                            .dims("dims", dims)
                            .scalar("trial", index as f64)
                            .scalar("slack", sample.slack)
                            .extend(sample.witness),
                    );
                    Status::Fail
                }
                _ => {
                    report.details.push(format!("violation at dims {dims:?}, trial {index} did not re-verify"));
                    Status::Inconclusive
                }
            }
        }
        None if evaluated == 0 => {
            report.details.push("no trial could be evaluated".into());
            Status::Inconclusive
        }
        None => Status::Pass,
    };
    report
}

/// Runs one registered check under `cfg`.
pub fn run_check(id: CheckId, cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let info = id.info();
    let configs = resolve_dims(&info, cfg)?;
    let tol = resolve_tol(&info, cfg);
    let trials = cfg.trials.unwrap_or(info.default_trials);
    let start = Instant::now();
    let mut report = match checks::kind(id) {
        Kind::Trials(f) => run_trials(info.name, info.expected, tol, trials, &configs, cfg, &f),
        Kind::Custom(f) => f(&info, cfg, &configs, tol)?,
        Kind::Search => search::run_search_mode(&info, cfg, &configs, tol)?,
    };
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}
