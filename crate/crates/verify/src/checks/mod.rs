//! Per-check trial functions and their shared sampling and slack helpers.
//!
//! Every trial returns a signed slack: nonnegative when the claim holds on the
//! sampled instance. Trace inequalities are normalized by `1 + max(|lhs|, |rhs|)`,
//! operator inequalities by `1 + max ‖·‖` of the two sides.

mod channel;
mod entropy;
mod gns;
mod lieb;
mod limits;
mod mono;
mod trace;

use rand::Rng;
use traceforge_core::channels::{sample_channel, ChannelKind, KrausChannel};
use traceforge_core::linalg::random::{random_psd, real_gaussian, TrialRng};
use traceforge_core::linalg::{operator_norm, Hermitian, Psd};
use traceforge_core::CMatrix;

use crate::runner::{Sample, Trial, TrialResult};
use crate::{CheckConfig, CheckId, CheckInfo, CheckReport, Result};

pub(crate) use crate::probe::le_slack as le;

pub(crate) type CoreResult<T> = traceforge_core::Result<T>;
pub(crate) type CustomFn = fn(&CheckInfo, &CheckConfig, &[Vec<usize>], f64) -> Result<CheckReport>;

pub(crate) enum Kind {
    Trials(fn(&mut Trial) -> TrialResult),
    Custom(CustomFn),
    Search,
}

pub(crate) fn kind(id: CheckId) -> Kind {
    use CheckId::*;
    use Kind::Trials;
    match id {
        LiebConcavity => Trials(lieb::lieb_concavity),
        LiebNegPowersConvexity => Trials(lieb::lieb_neg_powers_convexity),
        MapConvexity => Trials(lieb::map_convexity),
        RelEntropyJointConvexity => Trials(lieb::rel_entropy_joint_convexity),
        AndoConvexity => Trials(lieb::ando_convexity),
        MonoL1 => Trials(mono::mono_l1),
        MonoL2 => Trials(mono::mono_l2),
        MonoL3 => Trials(mono::mono_l3),
        Dpi => Trials(mono::dpi),
        AndoMonoRestricted => Trials(mono::ando_mono_restricted),
        AndoMonoFalse => Trials(mono::ando_mono_false),
        SquareMonotone => Trials(mono::square_monotone),
        MetricMonotone => Trials(mono::metric_monotone),
        RelEntropyPtMonotone => Trials(mono::rel_entropy_pt_monotone),
        SandwichedDpi => Trials(mono::sandwiched_dpi),
        BsDpi => Trials(mono::bs_dpi),
        Klein => Trials(entropy::klein),
        Ssa => Trials(entropy::ssa),
        Subadditivity => Trials(entropy::subadditivity),
        CondEntropyConvexity => Trials(entropy::cond_entropy_convexity),
        DirectionalDerivative => Trials(entropy::directional_derivative),
        GoldenThompson => Trials(entropy::golden_thompson),
        PeierlsBogoliubov => Trials(entropy::peierls_bogoliubov),
        WeakSsa => Trials(entropy::weak_ssa),
        TripleMatrix => Trials(entropy::triple_matrix),
        ArakiLiebTriangle => Trials(entropy::araki_lieb_triangle),
        PureMarginals => Trials(entropy::pure_marginals),
        Purification => Trials(entropy::purification),
        ExtendedSsa => Trials(entropy::extended_ssa),
        SquashedLb => Trials(entropy::squashed_lb),
        MinkowskiTwo => Trials(trace::minkowski_two),
        MinkowskiThree => Trials(trace::minkowski_three),
        Epstein => Trials(trace::epstein),
        CarlenLieb => Trials(trace::carlen_lieb),
        CpComposed => Trials(trace::cp_composed),
        LiebExplog => Trials(trace::lieb_explog),
        MinkowskiThreePGt2 | CarlenLiebPGt2 => Kind::Search,
        LiebRuskai => Trials(channel::lieb_ruskai),
        SchurComplement => Trials(channel::schur_complement),
        Kiefer => Trials(channel::kiefer),
        KadisonSchwarz => Trials(channel::kadison_schwarz),
        ChoiSeparation => Kind::Custom(channel::choi_separation),
        AndoChoi => Trials(channel::ando_choi),
        UhlmannAverage => Trials(channel::uhlmann_average),
        UhlmannCommute => Trials(channel::uhlmann_commute),
        StinespringRoundtrip => Trials(channel::stinespring_roundtrip),
        HiaiPetz2 => Trials(gns::hiai_petz_2),
        HiaiPetz3 => Trials(gns::hiai_petz_3),
        HiaiPetz4 => Trials(gns::hiai_petz_4),
        FlipLemma => Trials(gns::flip_lemma),
        HansenAndoHiai => Kind::Custom(gns::hansen_ando_hiai),
        GfConvexity => Trials(gns::gf_convexity),
        DonaldIdentity => Trials(gns::donald_identity),
        PerspectiveMonotone => Trials(gns::perspective_monotone),
        WySkewConvexity => Trials(gns::wy_skew_convexity),
        WyBlockIdentity => Trials(gns::wy_block_identity),
        RelentLimit => Trials(limits::relent_limit),
        RenyiLimit => Trials(limits::renyi_limit),
        LogDerivatives => Trials(limits::log_derivatives),
        CommutingOracles => Trials(limits::commuting_oracles),
    }
}

pub(crate) use channel::choi_witness;
pub(crate) use mono::ando_false_sample;
pub(crate) use trace::{minkowski_three_sides, upsilon};

/// Cycles through `xs` by trial index.
pub(crate) fn pick<T: Copy>(xs: &[T], index: u64) -> T {
    xs[(index % xs.len() as u64) as usize]
}

/// Appends a parameter to a trial's witness.
pub(crate) fn with_scalar(mut s: Sample, name: &str, v: f64) -> Sample {
    s.witness = s.witness.scalar(name, v);
    s
}

/// Slack of `lhs ≥ rhs`.
pub(crate) fn ge(lhs: f64, rhs: f64) -> f64 {
    le(rhs, lhs)
}

/// Smallest eigenvalue of `upper − lower`, normalized by `1 + max ‖·‖`.
pub(crate) fn op_ge(upper: &CMatrix, lower: &CMatrix) -> CoreResult<f64> {
    let scale = 1.0 + operator_norm(upper).max(operator_norm(lower));
    Ok(Hermitian::hermitian_part(upper - lower).min_eigenvalue()? / scale)
}

/// Slack of an identity: the negated error, scaled by `1 + scale`.
pub(crate) fn identity_slack(err: f64, scale: f64) -> f64 {
    -err / (1.0 + scale.abs())
}

/// Agreement of two signed quantities that should share a sign: the smaller
/// magnitude, negated when the signs differ.
pub(crate) fn sign_agreement(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    if (a >= 0.0) == (b >= 0.0) {
        m
    } else {
        -m
    }
}

pub(crate) fn psd(m: CMatrix) -> CoreResult<Psd> {
    Psd::new(Hermitian::hermitian_part(m))
}

pub(crate) fn rtr(m: &CMatrix) -> f64 {
    m.trace().re
}

/// `Re tr[K* A K B]`.
pub(crate) fn ktr(k: &CMatrix, a: &CMatrix, b: &CMatrix) -> f64 {
    rtr(&(k.adjoint() * a * k * b))
}

/// PSD matrix of random rank and scale; the closure of the PD cone.
pub(crate) fn closure_psd(n: usize, rng: &mut TrialRng) -> CoreResult<Psd> {
    let rank = rng.random_range(1..=n);
    Ok(random_psd(n, rank, rng)?.scale((0.5 * real_gaussian(rng)).exp()))
}

/// Unital CP map `M_n → M_m` with a random Kraus count.
pub(crate) fn cp_unital(n: usize, m: usize, rng: &mut TrialRng) -> CoreResult<KrausChannel> {
    let min = m.div_ceil(n);
    let count = rng.random_range(min..=min + 2);
    sample_channel(ChannelKind::CpUnital, n, m, count, rng)
}

/// Trace-preserving CP map `M_n → M_m` with a random Kraus count.
pub(crate) fn cptp(n: usize, m: usize, rng: &mut TrialRng) -> CoreResult<KrausChannel> {
    let min = n.div_ceil(m);
    let count = rng.random_range(min..=min + 2);
    sample_channel(ChannelKind::Cptp, n, m, count, rng)
}
