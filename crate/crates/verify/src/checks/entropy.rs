//! Entropy inequalities: SSA and its relatives, Klein, Golden–Thompson.

use rand::Rng;
use traceforge_core::entropy::{
    cmi, purify, random_product_mixture, random_tripartite_from_pure, squashed_lb as squashed_bound, umegaki, von_neumann,
};
use traceforge_core::gns::t_map;
use traceforge_core::linalg::random::{random_density, random_hermitian, random_pd, TrialRng};
use traceforge_core::linalg::{kron, max_abs_diff, partial_trace, Density, FactorDims, Hermitian, Psd};

use super::{ge, identity_slack, le, psd, rtr, CoreResult};
use crate::probe::{midpoint_slack, Direction};
use crate::runner::{Sample, Trial, TrialResult};
use crate::Witness;

/// Marginal of `rho` on the factors in `keep`.
fn marginal(rho: &Psd, dims: &FactorDims, keep: &[usize]) -> CoreResult<Psd> {
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    psd(partial_trace(rho.matrix(), dims, &traced)?)
}

fn s(rho: &Psd, dims: &FactorDims, keep: &[usize]) -> CoreResult<f64> {
    Ok(von_neumann(&marginal(rho, dims, keep)?))
}

/// Tripartite state: purified, separable, or generic, by trial index.
fn tripartite(dims: &[usize], index: u64, rng: &mut TrialRng) -> CoreResult<Density> {
    let d = [dims[0], dims[1], dims[2]];
    match index % 3 {
        0 => {
            let env = rng.random_range(1..=4);
            random_tripartite_from_pure(d, env, rng)
        }
        1 => {
            let terms = rng.random_range(1..=4);
            random_product_mixture(dims, terms, rng)
        }
        _ => {
            let n = d.iter().product();
            let rank = rng.random_range(1..=n);
            random_density(n, rank, rng)
        }
    }
}

struct Tri {
    s1: f64,
    s2: f64,
    s3: f64,
    s12: f64,
    s13: f64,
    s23: f64,
    s123: f64,
}

fn tri_entropies(rho: &Psd, dims: &FactorDims) -> CoreResult<Tri> {
    Ok(Tri {
        s1: s(rho, dims, &[0])?,
        s2: s(rho, dims, &[1])?,
        s3: s(rho, dims, &[2])?,
        s12: s(rho, dims, &[0, 1])?,
        s13: s(rho, dims, &[0, 2])?,
        s23: s(rho, dims, &[1, 2])?,
        s123: von_neumann(rho),
    })
}

fn tri_trial(t: &mut Trial, slack: impl Fn(&Tri, &Psd, &FactorDims) -> CoreResult<(f64, f64)>) -> TrialResult {
    let dims = FactorDims::new(t.dims.to_vec())?;
    let rho = tripartite(t.dims, t.index, &mut t.rng)?.into_psd();
    let e = tri_entropies(&rho, &dims)?;
    let (lhs, rhs) = slack(&e, &rho, &dims)?;
    let w = Witness::new().matrix("rho", rho.matrix()).scalar("lhs", lhs).scalar("rhs", rhs);
    Ok(Sample::new(ge(lhs, rhs), w))
}

/// `D(X‖Y) ≥ 0`, with `D(Y‖Y) = 0` checked on trial 0 and every tenth trial.
pub(super) fn klein(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let y = random_density(n, n, &mut t.rng)?.into_psd();
    if t.index.is_multiple_of(10) {
        let d = umegaki(&y, &y)?.value;
        return Ok(Sample::new(identity_slack(d.abs(), 0.0), Witness::new().matrix("X", y.matrix()).matrix("Y", y.matrix()).entropy("D", d)));
    }
    let rank = t.rng.random_range(1..=n);
    let x = random_density(n, rank, &mut t.rng)?.into_psd();
    let d = umegaki(&x, &y)?.value;
    Ok(Sample::new(ge(d, 0.0), Witness::new().matrix("X", x.matrix()).matrix("Y", y.matrix()).entropy("D", d)))
}

pub(super) fn ssa(t: &mut Trial) -> TrialResult {
    tri_trial(t, |e, _, _| Ok((e.s12 + e.s23, e.s123 + e.s2)))
}

pub(super) fn weak_ssa(t: &mut Trial) -> TrialResult {
    tri_trial(t, |e, rho, dims| {
        let r2 = marginal(rho, dims, &[1])?;
        let purity = rtr(&(r2.matrix() * r2.matrix()));
        Ok((e.s12 + e.s23, e.s123 - purity.ln()))
    })
}

pub(super) fn extended_ssa(t: &mut Trial) -> TrialResult {
    tri_trial(t, |e, _, _| Ok((e.s13 + e.s23 - e.s123 - e.s3, 2.0 * (e.s1 - e.s12).max(e.s2 - e.s12).max(0.0))))
}

/// `½ I(1;2|3) ≥ max{S_1 − S_12, S_2 − S_12, 0}` evaluated on `ρ_12`.
pub(super) fn squashed_lb(t: &mut Trial) -> TrialResult {
    tri_trial(t, |_, rho, dims| {
        let state = Density::new(rho.clone())?;
        let rho12 = Density::new(marginal(rho, dims, &[0, 1])?)?;
        let pair = FactorDims::new(dims.as_slice()[..2].to_vec())?;
        Ok((0.5 * cmi(&state, dims)?, squashed_bound(&rho12, &pair)?))
    })
}

fn bipartite_state(t: &mut Trial) -> CoreResult<Psd> {
    let n = t.dims.iter().product();
    let rank = t.rng.random_range(1..=n);
    Ok(random_density(n, rank, &mut t.rng)?.into_psd())
}

/// `S_1 + S_2 ≥ S_12`; every fifth trial is a product state where equality must hold.
pub(super) fn subadditivity(t: &mut Trial) -> TrialResult {
    let dims = FactorDims::new(t.dims.to_vec())?;
    let rho = if t.index.is_multiple_of(5) {
        let a = random_density(t.dims[0], t.dims[0], &mut t.rng)?;
        let b = random_density(t.dims[1], t.dims[1], &mut t.rng)?;
        psd(kron(a.matrix(), b.matrix()))?
    } else {
        bipartite_state(t)?
    };
    let (s1, s2, s12) = (s(&rho, &dims, &[0])?, s(&rho, &dims, &[1])?, von_neumann(&rho));
    let w = Witness::new().matrix("rho", rho.matrix()).entropy("s1", s1).entropy("s2", s2).entropy("s12", s12);
    let slack = if t.index.is_multiple_of(5) { identity_slack((s1 + s2 - s12).abs(), s1 + s2) } else { ge(s1 + s2, s12) };
    Ok(Sample::new(slack, w))
}

pub(super) fn araki_lieb_triangle(t: &mut Trial) -> TrialResult {
    let dims = FactorDims::new(t.dims.to_vec())?;
    let rho = bipartite_state(t)?;
    let (s1, s2, s12) = (s(&rho, &dims, &[0])?, s(&rho, &dims, &[1])?, von_neumann(&rho));
    let w = Witness::new().matrix("rho", rho.matrix()).entropy("s1", s1).entropy("s2", s2).entropy("s12", s12);
    Ok(Sample::new(ge(s12, (s1 - s2).abs()), w))
}

/// `F(ρ) = S_2 − S_12` on unnormalized PSD `ρ`.
fn cond_f(rho: &Psd, dims: &FactorDims) -> CoreResult<f64> {
    Ok(s(rho, dims, &[1])? - von_neumann(rho))
}

fn unnormalized_state(n: usize, rng: &mut TrialRng) -> CoreResult<Psd> {
    let rank = rng.random_range(1..=n);
    let scale = rng.random_range(0.2..3.0);
    Ok(random_density(n, rank, rng)?.into_psd().scale(scale))
}

/// `F = S_2 − S_12` is convex and `F(cρ) = c F(ρ)`.
pub(super) fn cond_entropy_convexity(t: &mut Trial) -> TrialResult {
    let dims = FactorDims::new(t.dims.to_vec())?;
    let n = dims.total();
    let a = unnormalized_state(n, &mut t.rng)?;
    let b = if t.index == 0 { a.clone() } else { unnormalized_state(n, &mut t.rng)? };
    let (fa, fb, fm) = (cond_f(&a, &dims)?, cond_f(&b, &dims)?, cond_f(&a.mix(&b, 0.5)?, &dims)?);
    let scale = t.rng.random_range(0.1..10.0);
    let fc = cond_f(&a.scale(scale), &dims)?;
    let homogeneity = identity_slack((fc - scale * fa).abs(), fc);
    let w = Witness::new()
        .matrix("a", a.matrix())
        .matrix("b", b.matrix())
        .scalar("f_a", fa)
        .scalar("f_b", fb)
        .scalar("f_mid", fm)
        .scalar("homogeneity_scale", scale)
        .scalar("f_scaled", fc);
    Ok(Sample::new(midpoint_slack(fa, fb, fm, Direction::Convex).min(homogeneity), w))
}

/// Directional derivatives of degree-one functionals.
///
/// Even trials: `F = S_2 − S_12` (convex) with `G(x, y) = tr[y_12 log x_12] − tr[y_2 log x_2] ≤ F(y)`.
/// Odd trials: `F(X) = tr e^{H + log X}` (concave) with `G(X, Y) = tr[e^{H + log X} T_X(Y)] ≥ F(Y)`.
pub(super) fn directional_derivative(t: &mut Trial) -> TrialResult {
    let dims = FactorDims::new(t.dims.to_vec())?;
    let n = dims.total();
    if t.index.is_multiple_of(2) {
        let x = random_density(n, n, &mut t.rng)?.into_psd();
        let y = unnormalized_state(n, &mut t.rng)?;
        let x2 = marginal(&x, &dims, &[1])?;
        let y2 = marginal(&y, &dims, &[1])?;
        let g = rtr(&(y.matrix() * x.log()?.matrix())) - rtr(&(y2.matrix() * x2.log()?.matrix()));
        let f = cond_f(&y, &dims)?;
        let w = Witness::new().matrix("x", x.matrix()).matrix("y", y.matrix()).scalar("G", g).entropy("F_y", f);
        Ok(Sample::new(le(g, f), w))
    } else {
        let h = random_hermitian(n, &mut t.rng);
        let x = random_pd(n, &mut t.rng);
        let y = random_pd(n, &mut t.rng);
        let e = h.add(&x.log()?).exp()?;
        let g = rtr(&(e.matrix() * t_map(&x, y.matrix())?));
        let f = h.add(&y.log()?).exp()?.trace();
        let w = Witness::new().matrix("H", h.matrix()).matrix("X", x.matrix()).matrix("Y", y.matrix()).scalar("G", g).entropy("F_y", f);
        Ok(Sample::new(ge(g, f), w))
    }
}

pub(super) fn golden_thompson(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let (h, k) = (random_hermitian(n, &mut t.rng), random_hermitian(n, &mut t.rng));
    let lhs = h.add(&k).exp()?.trace();
    let rhs = rtr(&(h.exp()?.matrix() * k.exp()?.matrix()));
    let w = Witness::new().matrix("H", h.matrix()).matrix("K", k.matrix()).scalar("lhs", lhs).scalar("rhs", rhs);
    Ok(Sample::new(le(lhs, rhs), w))
}

/// `tr[K e^H] ≤ log tr e^{H+K}` with `H` shifted so that `tr e^H = 1`.
pub(super) fn peierls_bogoliubov(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let h0 = random_hermitian(n, &mut t.rng);
    let h = h0.sub(&Hermitian::identity(n).scale(h0.exp()?.trace().ln()));
    let k = random_hermitian(n, &mut t.rng);
    let lhs = rtr(&(k.matrix() * h.exp()?.matrix()));
    let rhs = h.add(&k).exp()?.trace().ln();
    let w = Witness::new().matrix("H", h.matrix()).matrix("K", k.matrix()).scalar("lhs", lhs).scalar("rhs", rhs);
    Ok(Sample::new(le(lhs, rhs), w))
}

/// `tr e^{H+K+L} ≤ tr[e^H T_{e^{−K}}(e^L)]`.
pub(super) fn triple_matrix(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let (h, k, l) = (random_hermitian(n, &mut t.rng), random_hermitian(n, &mut t.rng), random_hermitian(n, &mut t.rng));
    let lhs = h.add(&k).add(&l).exp()?.trace();
    let rhs = rtr(&(h.exp()?.matrix() * t_map(&k.scale(-1.0).exp()?, l.exp()?.matrix())?));
    let w = Witness::new().matrix("H", h.matrix()).matrix("K", k.matrix()).matrix("L", l.matrix());
    Ok(Sample::new(le(lhs, rhs), w.scalar("lhs", lhs).scalar("rhs", rhs)))
}

fn purified(t: &mut Trial) -> CoreResult<(Density, Psd)> {
    let n = t.dims[0];
    let rank = t.rng.random_range(1..=n);
    let rho = random_density(n, rank, &mut t.rng)?;
    let psi = purify(&rho);
    let full = psd(&psi * psi.adjoint())?;
    Ok((rho, full))
}

/// A pure bipartite state has equal marginal entropies.
pub(super) fn pure_marginals(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let dims = FactorDims::new(vec![n, n])?;
    let (rho, full) = purified(t)?;
    let (s1, s2, s12) = (s(&full, &dims, &[0])?, s(&full, &dims, &[1])?, von_neumann(&full));
    let w = Witness::new().matrix("rho", rho.matrix()).entropy("s1", s1).entropy("s2", s2).entropy("s12", s12);
    Ok(Sample::new(-(s1 - s2).abs(), w))
}

/// Both marginals of the purification reproduce `ρ`.
pub(super) fn purification(t: &mut Trial) -> TrialResult {
    let n = t.dims[0];
    let dims = FactorDims::new(vec![n, n])?;
    let (rho, full) = purified(t)?;
    let e1 = max_abs_diff(marginal(&full, &dims, &[0])?.matrix(), rho.matrix());
    let e2 = max_abs_diff(marginal(&full, &dims, &[1])?.matrix(), rho.matrix());
    let trace_err = (full.trace() - 1.0).abs();
    let err = e1.max(e2).max(trace_err);
    let w = Witness::new().matrix("rho", rho.matrix()).scalar("marginal_1_error", e1).scalar("marginal_2_error", e2);
    Ok(Sample::new(-err, w))
}
