//! Generic midpoint-convexity and channel-monotonicity probes.

use traceforge_core::channels::{block_embed_channel, named_map, sample_channel, ChannelKind, LinearMatrixMap, NamedMap};
use traceforge_core::linalg::random::TrialRng;
use traceforge_core::linalg::{Hermitian, Psd};
use traceforge_core::{CMatrix, Complex};

use crate::report::Status;
use crate::runner::{run_trials, Sample, Trial, TrialResult};
use crate::{CheckConfig, CheckReport, Result, VerifyError, Witness};

const PROBE_TRIALS: usize = 200;
const PROBE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Convex,
    Concave,
}

/// Channel classes used by monotonicity statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelClass {
    /// Trace-preserving CP maps `M_n → M_m`.
    Cptp,
    /// Unital CP maps `M_n → M_m`.
    CpUnital,
    /// Partial trace over the first factor of `C^a ⊗ C^b`.
    PartialTrace,
    /// The transpose on `M_n`, positive but not 2-positive.
    PositiveOnly,
}

/// Arguments that can be averaged for a midpoint test.
pub trait Midpoint: Sized {
    fn midpoint(&self, other: &Self) -> traceforge_core::Result<Self>;
    /// Adds this argument to a witness under `name`.
    fn record(&self, name: &str, w: Witness) -> Witness;
}

impl Midpoint for CMatrix {
    fn midpoint(&self, other: &Self) -> traceforge_core::Result<Self> {
        Ok((self + other) * Complex::new(0.5, 0.0))
    }
    fn record(&self, name: &str, w: Witness) -> Witness {
        w.matrix(name, self)
    }
}

impl Midpoint for Psd {
    fn midpoint(&self, other: &Self) -> traceforge_core::Result<Self> {
        self.mix(other, 0.5)
    }
    fn record(&self, name: &str, w: Witness) -> Witness {
        w.matrix(name, self.matrix())
    }
}

impl Midpoint for Hermitian {
    fn midpoint(&self, other: &Self) -> traceforge_core::Result<Self> {
        Ok(self.add(other).scale(0.5))
    }
    fn record(&self, name: &str, w: Witness) -> Witness {
        w.matrix(name, self.matrix())
    }
}

impl<A: Midpoint, B: Midpoint> Midpoint for (A, B) {
    fn midpoint(&self, other: &Self) -> traceforge_core::Result<Self> {
        Ok((self.0.midpoint(&other.0)?, self.1.midpoint(&other.1)?))
    }
    fn record(&self, name: &str, w: Witness) -> Witness {
        let w = self.0.record(&format!("{name}.0"), w);
        self.1.record(&format!("{name}.1"), w)
    }
}

impl<A: Midpoint, B: Midpoint, C: Midpoint> Midpoint for (A, B, C) {
    fn midpoint(&self, other: &Self) -> traceforge_core::Result<Self> {
        Ok((self.0.midpoint(&other.0)?, self.1.midpoint(&other.1)?, self.2.midpoint(&other.2)?))
    }
    fn record(&self, name: &str, w: Witness) -> Witness {
        let w = self.0.record(&format!("{name}.0"), w);
        let w = self.1.record(&format!("{name}.1"), w);
        self.2.record(&format!("{name}.2"), w)
    }
}

/// `(rhs − lhs)/(1 + max(|lhs|, |rhs|))`: nonnegative when `lhs ≤ rhs`.
pub(crate) fn le_slack(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / (1.0 + lhs.abs().max(rhs.abs()))
}

/// Midpoint slack of `F` for the claimed direction.
pub(crate) fn midpoint_slack(fa: f64, fb: f64, fmid: f64, direction: Direction) -> f64 {
    let avg = 0.5 * (fa + fb);
    match direction {
        Direction::Convex => le_slack(fmid, avg),
        Direction::Concave => le_slack(avg, fmid),
    }
}

/// One midpoint trial. Trial 0 uses equal arguments, where the slack must vanish.
pub(crate) fn midpoint_trial<P, T, S, F>(t: &mut Trial, sampler: &S, functional: &F, direction: Direction) -> TrialResult
where
    T: Midpoint + Clone,
    S: Fn(&[usize], &mut TrialRng) -> traceforge_core::Result<(P, T, T)>,
    F: Fn(&P, &T) -> traceforge_core::Result<f64>,
{
    let (p, a, b) = sampler(t.dims, &mut t.rng)?;
    let b = if t.index == 0 { a.clone() } else { b };
    let fa = functional(&p, &a)?;
    let fb = functional(&p, &b)?;
    let fm = functional(&p, &a.midpoint(&b)?)?;
    let slack = midpoint_slack(fa, fb, fm, direction);
    let w = b.record("b", a.record("a", Witness::new()));
    Ok(Sample::new(slack, w.scalar("f_a", fa).scalar("f_b", fb).scalar("f_mid", fm)))
}

fn probe_dims(dims: &[Vec<usize>], cfg: &CheckConfig) -> Result<Vec<Vec<usize>>> {
    cfg.validate()?;
    let configs = match &cfg.dims {
        Some(d) => vec![d.clone()],
        None => dims.to_vec(),
    };
    if configs.is_empty() {
        return Err(VerifyError::Config("no dimension configuration given".into()));
    }
    Ok(configs)
}

/// Midpoint test of a multi-argument functional on sampled argument pairs.
///
/// `sampler` returns fixed parameters and two argument tuples; the functional is
/// compared at the midpoint against the average of its endpoint values.
pub fn convexity_probe<P, T, S, F>(
    name: &str,
    dims: &[Vec<usize>],
    sampler: S,
    functional: F,
    direction: Direction,
    cfg: &CheckConfig,
) -> Result<CheckReport>
where
    T: Midpoint + Clone,
    S: Fn(&[usize], &mut TrialRng) -> traceforge_core::Result<(P, T, T)> + Sync,
    F: Fn(&P, &T) -> traceforge_core::Result<f64> + Sync,
{
    let configs = probe_dims(dims, cfg)?;
    let tol = cfg.tol.unwrap_or(PROBE_TOL);
    let trials = cfg.trials.unwrap_or(PROBE_TRIALS);
    let f = |t: &mut Trial| midpoint_trial(t, &sampler, &functional, direction);
    Ok(run_trials(name, Status::Pass, tol, trials, &configs, cfg, &f))
}

/// Samples a map of `class` acting on the dimensions `dims`.
pub(crate) fn sample_class(class: ChannelClass, dims: &[usize], rng: &mut TrialRng) -> traceforge_core::Result<LinearMatrixMap> {
    use rand::Rng;
    let n = dims[0];
    let m = dims.get(1).copied().unwrap_or(n);
    match class {
        ChannelClass::Cptp => {
            let min = n.div_ceil(m);
            let count = rng.random_range(min..=min + 2);
            Ok(sample_channel(ChannelKind::Cptp, n, m, count, rng)?.to_map())
        }
        ChannelClass::CpUnital => {
            let min = m.div_ceil(n);
            let count = rng.random_range(min..=min + 2);
            Ok(sample_channel(ChannelKind::CpUnital, n, m, count, rng)?.to_map())
        }
        ChannelClass::PartialTrace => Ok(block_embed_channel(m, n)?.adjoint().to_map()),
        ChannelClass::PositiveOnly => named_map(NamedMap::Transpose, n),
    }
}

/// Input dimension of the maps sampled for `class` on `dims`.
pub(crate) fn class_input_dim(class: ChannelClass, dims: &[usize]) -> usize {
    match class {
        ChannelClass::PartialTrace => dims.iter().take(2).product(),
        _ => dims[0],
    }
}

/// Tests `F(Φ(x)) ≤ F(x)` for maps `Φ` of the given class.
///
/// `dims` is `[n, m]` for maps `M_n → M_m`, or `[a, b]` for the partial trace
/// over the first factor of `C^a ⊗ C^b`.
pub fn monotonicity_probe<T, S, P, F>(
    name: &str,
    dims: &[Vec<usize>],
    class: ChannelClass,
    sampler: S,
    push: P,
    functional: F,
    cfg: &CheckConfig,
) -> Result<CheckReport>
where
    S: Fn(usize, &mut TrialRng) -> traceforge_core::Result<T> + Sync,
    P: Fn(&T, &LinearMatrixMap) -> traceforge_core::Result<T> + Sync,
    F: Fn(&T) -> traceforge_core::Result<f64> + Sync,
{
    let configs = probe_dims(dims, cfg)?;
    let tol = cfg.tol.unwrap_or(PROBE_TOL);
    let trials = cfg.trials.unwrap_or(PROBE_TRIALS);
    let f = |t: &mut Trial| monotone_trial(t, class, &sampler, &push, &functional);
    Ok(run_trials(name, Status::Pass, tol, trials, &configs, cfg, &f))
}

pub(crate) fn monotone_trial<T, S, P, F>(t: &mut Trial, class: ChannelClass, sampler: &S, push: &P, functional: &F) -> TrialResult
where
    S: Fn(usize, &mut TrialRng) -> traceforge_core::Result<T>,
    P: Fn(&T, &LinearMatrixMap) -> traceforge_core::Result<T>,
    F: Fn(&T) -> traceforge_core::Result<f64>,
{
    let map = sample_class(class, t.dims, &mut t.rng)?;
    let x = sampler(class_input_dim(class, t.dims), &mut t.rng)?;
    let before = functional(&x)?;
    let after = functional(&push(&x, &map)?)?;
    let w = Witness::new().matrix("map_action", map.action()).scalar("before", before).scalar("after", after);
    Ok(Sample::new(le_slack(after, before), w))
}
