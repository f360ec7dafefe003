use std::fmt;
use std::str::FromStr;

use crate::{Result, Status, VerifyError};

/// Largest total dimension accepted for any configuration.
pub(crate) const MAX_TOTAL_DIM: usize = 64;
/// Largest base dimension for checks that assemble explicit superoperator matrices.
pub(crate) const MAX_SUPEROP_DIM: usize = 6;

/// How a check's slack is measured and which default tolerance applies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SlackKind {
    /// Difference of two trace functionals, normalized by `1 + max(|lhs|, |rhs|)`.
    Trace,
    /// Smallest eigenvalue of an operator difference, normalized by `1 + max ‖·‖`.
    Eigen,
    /// Negated error of an identity, compared with the given absolute tolerance.
    Identity(f64),
    /// Negated worst ratio of error to its own tolerance; fails above 1.
    Ratio,
}

impl SlackKind {
    pub fn default_tol(self) -> f64 {
        match self {
            SlackKind::Trace => 1e-8,
            SlackKind::Eigen => 1e-9,
            SlackKind::Identity(t) => t,
            SlackKind::Ratio => 1.0,
        }
    }

    /// Identity-style checks compare raw errors and keep their tolerance under overrides.
    pub fn is_identity(self) -> bool {
        matches!(self, SlackKind::Identity(_) | SlackKind::Ratio)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Independent random trials reduced to a worst slack.
    Trials,
    /// Budgeted search for a violation; never reports pass.
    Search,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckInfo {
    pub id: CheckId,
    pub name: &'static str,
    /// The claim being tested, as a formula.
    pub statement: &'static str,
    pub modules: &'static [&'static str],
    pub default_dims: &'static [&'static [usize]],
    pub default_trials: usize,
    pub slack: SlackKind,
    pub expected: Status,
    pub mode: Mode,
    /// Accepted by `search_counterexample`.
    pub searchable: bool,
    /// Base dimension capped at 6 because explicit superoperators are assembled.
    pub superop: bool,
}

impl CheckInfo {
    pub fn dims_len(&self) -> usize {
        self.default_dims[0].len()
    }

    /// Validates a dimension override for this check.
    pub fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if dims.len() != self.dims_len() {
            return Err(VerifyError::Config(format!(
                "{} takes {} dimension(s), got {}",
                self.name,
                self.dims_len(),
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(VerifyError::Config("dimensions must be positive".into()));
        }
        let total: usize = dims.iter().product();
        if total > MAX_TOTAL_DIM {
            return Err(VerifyError::Config(format!("total dimension {total} exceeds the cap of {MAX_TOTAL_DIM}")));
        }
        if self.superop && dims.iter().any(|&d| d > MAX_SUPEROP_DIM) {
            return Err(VerifyError::Config(format!(
                "{} assembles superoperators; dimensions are capped at {MAX_SUPEROP_DIM}",
                self.name
            )));
        }
        if self.id == CheckId::ChoiSeparation && dims[0] != 2 {
            return Err(VerifyError::Config("choi_separation is defined on M_2".into()));
        }
        Ok(())
    }
}

macro_rules! check_ids {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// Identifier of a registered check.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId {
            $($variant),+
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $name),+
                }
            }
        }
    };
}

check_ids! {
    LiebConcavity => "lieb_concavity",
    LiebNegPowersConvexity => "lieb_neg_powers_convexity",
    MapConvexity => "map_convexity",
    RelEntropyJointConvexity => "rel_entropy_joint_convexity",
    AndoConvexity => "ando_convexity",
    MonoL1 => "mono_L1",
    MonoL2 => "mono_L2",
    MonoL3 => "mono_L3",
    Dpi => "dpi",
    AndoMonoRestricted => "ando_mono_restricted",
    AndoMonoFalse => "ando_mono_false",
    Klein => "klein",
    Ssa => "ssa",
    Subadditivity => "subadditivity",
    CondEntropyConvexity => "cond_entropy_convexity",
    RelEntropyPtMonotone => "rel_entropy_pt_monotone",
    DirectionalDerivative => "directional_derivative",
    GoldenThompson => "golden_thompson",
    PeierlsBogoliubov => "peierls_bogoliubov",
    WeakSsa => "weak_ssa",
    TripleMatrix => "triple_matrix",
    ArakiLiebTriangle => "araki_lieb_triangle",
    PureMarginals => "pure_marginals",
    ExtendedSsa => "extended_ssa",
    MinkowskiTwo => "minkowski_two",
    MinkowskiThree => "minkowski_three",
    MinkowskiThreePGt2 => "minkowski_three_p_gt_2",
    Epstein => "epstein",
    CarlenLieb => "carlen_lieb",
    CarlenLiebPGt2 => "carlen_lieb_p_gt_2",
    CpComposed => "cp_composed",
    LiebExplog => "lieb_explog",
    LiebRuskai => "lieb_ruskai",
    SchurComplement => "schur_complement",
    Kiefer => "kiefer",
    KadisonSchwarz => "kadison_schwarz",
    ChoiSeparation => "choi_separation",
    AndoChoi => "ando_choi",
    HiaiPetz2 => "hiai_petz_2",
    HiaiPetz3 => "hiai_petz_3",
    HiaiPetz4 => "hiai_petz_4",
    FlipLemma => "flip_lemma",
    HansenAndoHiai => "hansen_ando_hiai",
    GfConvexity => "gf_convexity",
    DonaldIdentity => "donald_identity",
    PerspectiveMonotone => "perspective_monotone",
    BsDpi => "bs_dpi",
    SandwichedDpi => "sandwiched_dpi",
    WySkewConvexity => "wy_skew_convexity",
    WyBlockIdentity => "wy_block_identity",
    UhlmannAverage => "uhlmann_average",
    UhlmannCommute => "uhlmann_commute",
    StinespringRoundtrip => "stinespring_roundtrip",
    Purification => "purification",
    SquashedLb => "squashed_lb",
    MetricMonotone => "metric_monotone",
    SquareMonotone => "square_monotone",
    RelentLimit => "relent_limit",
    RenyiLimit => "renyi_limit",
    LogDerivatives => "log_derivatives",
    CommutingOracles => "commuting_oracles",
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| VerifyError::UnknownCheck(s.into()))
    }
}

const D3_4: &[&[usize]] = &[&[3], &[4]];
const D2_3: &[&[usize]] = &[&[2], &[3]];
const BI: &[&[usize]] = &[&[3, 3], &[2, 3]];
const TRI: &[&[usize]] = &[&[2, 2, 2], &[2, 3, 2]];
const CHAN: &[&[usize]] = &[&[3, 3], &[4, 2]];

struct Row {
    statement: &'static str,
    modules: &'static [&'static str],
    dims: &'static [&'static [usize]],
    trials: usize,
    slack: SlackKind,
}

const fn row(
    statement: &'static str,
    modules: &'static [&'static str],
    dims: &'static [&'static [usize]],
    trials: usize,
    slack: SlackKind,
) -> Row {
    Row { statement, modules, dims, trials, slack }
}

impl CheckId {
    pub fn info(self) -> CheckInfo {
        use CheckId::*;
        use SlackKind::*;
        const T: usize = 200;
        let r = match self {
            LiebConcavity => row("(X,Y) ↦ tr[K* Y^{1−t} K X^t] jointly concave on PSD pairs, t ∈ {0.3, 0.5, 0.7}", &["linalg"], D3_4, T, Trace),
            LiebNegPowersConvexity => row("(X,Y,K) ↦ tr[K* Y^{−s} K X^{−t}] jointly convex on PD pairs, s,t ≥ 0, s+t ≤ 1", &["linalg"], D3_4, T, Trace),
            MapConvexity => row("(X,Y,K) ↦ tr ∫ K* (s+Y)^{-1} K (s+X)^{-1} ds jointly convex", &["gns", "opfunc"], D3_4, T, Trace),
            RelEntropyJointConvexity => row("(X,Y) ↦ D(X‖Y) jointly convex", &["entropy"], D3_4, T, Trace),
            AndoConvexity => row("(X,Y) ↦ tr[K* X^q K Y^{−r}] jointly convex, (q,r) ∈ {(1.5,0.5), (2,1)}", &["linalg"], D3_4, T, Trace),
            MonoL1 => row("tr[Φ(K)* Y^{1−t} Φ(K) X^t] ≤ tr[K* Φ†(Y)^{1−t} K Φ†(X)^t] for unital CP Φ: M_n → M_m", &["channels", "linalg"], &[&[3, 3], &[2, 4]], T, Trace),
            MonoL2 => row("tr[Φ†(K)* Φ†(Y)^{t−1} Φ†(K) Φ†(X)^{−t}] ≤ tr[K* Y^{t−1} K X^{−t}] for unital CP Φ, Φ†(X), Φ†(Y) PD", &["channels", "linalg"], CHAN, T, Trace),
            MonoL3 => row("tr ∫ Φ†(K)* (s+Φ†Y)^{-1} Φ†(K) (s+Φ†X)^{-1} ds ≤ tr ∫ K* (s+Y)^{-1} K (s+X)^{-1} ds for unital CP Φ on M_m", &["channels", "gns"], D3_4, T, Trace),
            Dpi => row("D(Φ(X)‖Φ(Y)) ≤ D(X‖Y) for CPTP Φ", &["channels", "entropy"], CHAN, T, Trace),
            AndoMonoRestricted => row("tr[(I_m⊗K)* Y^{1+t} (I_m⊗K) X^{−t}] ≥ tr[K* (tr_1 Y)^{1+t} K (tr_1 X)^{−t}]", &["channels", "linalg"], &[&[2, 2], &[3, 2]], T, Trace),
            AndoMonoFalse => row("claimed tr[Φ(K)* Y^{1+t} Φ(K) X^{−t}] ≥ tr[K* Φ†(Y)^{1+t} K Φ†(X)^{−t}] for unital CP Φ; fails for the full depolarizer and traceless K", &["channels", "linalg"], D2_3, 20, Trace),
            Klein => row("D(X‖Y) ≥ 0 with equality iff X = Y (densities)", &["entropy"], D3_4, T, Trace),
            Ssa => row("S_12 + S_23 ≥ S_123 + S_2", &["entropy"], TRI, T, Trace),
            Subadditivity => row("S_1 + S_2 ≥ S_12, with equality on product states", &["entropy"], BI, T, Trace),
            CondEntropyConvexity => row("ρ ↦ S_2 − S_12 convex and homogeneous of degree one (equivalent to ssa)", &["entropy"], BI, T, Trace),
            RelEntropyPtMonotone => row("D(tr_2 ρ‖tr_2 σ) ≤ D(ρ‖σ)", &["entropy", "linalg"], BI, T, Trace),
            DirectionalDerivative => row("G(x,y) ≤ F(y) for convex degree-one F = S_2 − S_12; G(X,Y) ≥ F(Y) for concave F = tr e^{H+log X}", &["entropy", "gns"], BI, T, Trace),
            GoldenThompson => row("tr e^{H+K} ≤ tr[e^H e^K]", &["linalg"], D3_4, T, Trace),
            PeierlsBogoliubov => row("tr[K e^H] ≤ log tr e^{H+K} when tr e^H = 1", &["linalg"], D3_4, T, Trace),
            WeakSsa => row("S_12 + S_23 ≥ S_123 − log tr[ρ_2²]", &["entropy"], TRI, T, Trace),
            TripleMatrix => row("tr e^{H+K+L} ≤ tr[e^H T_{e^{−K}}(e^L)]", &["gns", "linalg"], D3_4, T, Trace),
            ArakiLiebTriangle => row("|S_1 − S_2| ≤ S_12", &["entropy"], BI, T, Trace),
            PureMarginals => row("S_12 = 0 implies S_1 = S_2 (purified states)", &["entropy"], D3_4, 100, Identity(1e-9)),
            ExtendedSsa => row("S_13 + S_23 − S_123 − S_3 ≥ 2 max{S_1 − S_12, S_2 − S_12, 0}", &["entropy"], TRI, T, Trace),
            MinkowskiTwo => row("(tr (tr_1 A)^p)^{1/p} ≤ tr (tr_2 A^p)^{1/p} for p ≥ 1, reversed for 0 < p ≤ 1", &["linalg"], BI, T, Trace),
            MinkowskiThree => row("tr_3 (tr_2 (tr_1 A)^p)^{1/p} ≤ tr_13 (tr_2 A^p)^{1/p} for 1 ≤ p ≤ 2, reversed for 0 < p ≤ 1", &["linalg"], TRI, T, Trace),
            MinkowskiThreePGt2 => row("the three-factor Minkowski inequality fails in both directions at p = 3", &["linalg"], TRI, 1, Trace),
            Epstein => row("A ↦ tr[(B* A^p B)^{1/p}] concave, p ∈ {0.3, 0.7}", &["linalg"], CHAN, T, Trace),
            CarlenLieb => row("X ↦ tr[(B* X^p B)^{q/p}] convex for (p,q) ∈ {(1.5,1), (2,2)}, concave for (0.5,0.8)", &["linalg"], CHAN, T, Trace),
            CarlenLiebPGt2 => row("X ↦ tr[(B* X^3 B)^{1/3}] is neither convex nor concave", &["linalg"], &[&[2, 2], &[3, 2]], 1, Trace),
            CpComposed => row("X ↦ tr[Φ(X^p)^{q/p}] convex/concave as Carlen–Lieb for CP Φ; (X_1,X_2) ↦ tr[(X_1^p + X_2^p)^{1/p}]", &["channels", "linalg"], &[&[3, 2], &[2, 3]], T, Trace),
            LiebExplog => row("X ↦ tr e^{H + log X} concave", &["linalg"], D3_4, T, Trace),
            LiebRuskai => row("Φ(A*A) ≥ Φ(A*B) Φ(B*B)^+ Φ(B*A) for CP Φ", &["channels", "linalg"], &[&[3, 3], &[2, 4]], T, Eigen),
            SchurComplement => row("[[X, Z], [Z*, Y]] ≥ 0 iff Y ≥ Z* X^{-1} Z for PD X", &["linalg"], D3_4, T, Eigen),
            Kiefer => row("Σ X_j* C_j^{-1} X_j ≥ (Σ X_j)* (Σ C_j)^{-1} (Σ X_j)", &["linalg"], &[&[3, 2], &[2, 4]], T, Eigen),
            KadisonSchwarz => row("Φ(A*A) ≥ Φ(A)* Φ(A) for unital 2-positive Φ (and the Choi Schwarz map)", &["channels"], &[&[2, 2], &[3, 4]], T, Eigen),
            ChoiSeparation => row("Φ(X) = X^T/2 + tr[X] I/4 on M_2 satisfies Schwarz but is not 2-positive", &["channels"], &[&[2, 2], &[2, 3]], 1000, Eigen),
            AndoChoi => row("Φ(H X^{-1} H) ≥ Φ(H) Φ(X)^+ Φ(H) for positive Φ, Hermitian H, PD X", &["channels", "linalg"], D2_3, T, Eigen),
            HiaiPetz2 => row("Φ G_f(Φ†X, Φ†Y)^{-1} Φ† ≤ G_f(X,Y)^{-1} for operator monotone f > 0", &["gns", "opfunc", "channels"], BI, T, Eigen),
            HiaiPetz3 => row("Φ† G_f(X,Y) Φ ≤ G_f(Φ†X, Φ†Y) for operator monotone f > 0", &["gns", "opfunc", "channels"], BI, T, Eigen),
            HiaiPetz4 => row("(X,Y,Z) ↦ ⟨Z, G_f(X,Y)^{-1} Z⟩ jointly convex for operator monotone f > 0", &["gns", "opfunc"], D3_4, T, Trace),
            FlipLemma => row("A* B^{-1} A ≤ C^{-1} iff A C A* ≤ B", &["linalg"], D3_4, T, Eigen),
            HansenAndoHiai => row("(X,v) ↦ ⟨v, f(X) v⟩ jointly convex for operator monotone decreasing f; violated by f = √x", &["opfunc"], D3_4, T, Trace),
            GfConvexity => row("(X,Y) ↦ ⟨K, G_f(X,Y) K⟩ jointly convex for operator convex f, K fixed", &["gns", "opfunc"], D3_4, T, Trace),
            DonaldIdentity => row("Σ |⟨v_j,u_i⟩|² g(λ_i, μ_j) = D(X‖Y) + tr Y − tr X", &["gns", "entropy"], &[&[4], &[3]], T, Identity(1e-9)),
            PerspectiveMonotone => row("Φ(g_f(X,Y)) ≥ g_f(Φ(X), Φ(Y)) for operator convex f and positive unital Φ", &["opfunc", "channels"], &[&[2, 2], &[3, 3]], T, Eigen),
            BsDpi => row("D_BS(Φ(Y)‖Φ(X)) ≤ D_BS(Y‖X) for CPTP Φ", &["entropy", "channels"], &[&[3, 3], &[3, 2]], T, Trace),
            SandwichedDpi => row("D_α(Φ(ρ)‖Φ(σ)) ≤ D_α(ρ‖σ) for CPTP Φ, α ∈ {1.5, 2}", &["entropy", "channels"], &[&[3, 3], &[3, 2]], T, Trace),
            WySkewConvexity => row("ρ ↦ tr[H²ρ] − tr[H ρ^{1/2} H ρ^{1/2}] convex", &["entropy"], D3_4, T, Trace),
            WyBlockIdentity => row("tr[H ρ^{1/2} H ρ^{1/2}] = 2 tr[K* Y^{1/2} K X^{1/2}] for ρ = Y ⊕ X, H = [[0, K], [K*, 0]]", &["entropy", "linalg"], D3_4, T, Identity(1e-10)),
            UhlmannAverage => row("(1/m²) Σ_k U_k* Y U_k = (1/m) I_m ⊗ tr_1 Y", &["channels", "linalg"], &[&[2, 3], &[4, 4]], 10, Identity(1e-12)),
            UhlmannCommute => row("each U_k commutes with I_m ⊗ A", &["channels", "linalg"], &[&[2, 3], &[3, 2]], 10, Identity(1e-12)),
            StinespringRoundtrip => row("unital CP Φ = corner ∘ unitary conjugation ∘ block embedding", &["channels"], &[&[2, 3], &[3, 2]], 50, Identity(1e-9)),
            Purification => row("both marginals of the purification of ρ equal ρ", &["entropy"], D3_4, 100, Identity(1e-10)),
            SquashedLb => row("½ I(1;2|3) ≥ max{S_1 − S_12, S_2 − S_12, 0} for every extension", &["entropy"], TRI, T, Trace),
            MetricMonotone => row("γ_ρ(K) ≥ γ_{Φ(ρ)}(Φ(K)) for CPTP Φ, WYD t ∈ {0.3, 0.5} and BKM", &["gns", "channels"], CHAN, T, Trace),
            SquareMonotone => row("x ↦ x² is not operator monotone", &["opfunc"], D2_3, T, Eigen),
            RelentLimit => row("(1 − tr[Y^{1−t} X^t])/(1 − t) → D(X‖Y) as t → 1", &["entropy"], &[&[3], &[2]], 50, Ratio),
            RenyiLimit => row("D_α(ρ‖σ) → D(ρ‖σ) as α → 1", &["entropy"], D3_4, 50, Ratio),
            LogDerivatives => row("T_X and the Hessian of log match finite differences and quadrature", &["gns", "quadrature"], D3_4, 50, Ratio),
            CommutingOracles => row("matrix formulas reduce to classical closed forms on commuting inputs", &["entropy", "gns", "opfunc"], D3_4, 100, Ratio),
        };
        let expected = match self {
            AndoMonoFalse | ChoiSeparation | MinkowskiThreePGt2 | CarlenLiebPGt2 | SquareMonotone => Status::Fail,
            _ => Status::Pass,
        };
        let mode = match self {
            MinkowskiThreePGt2 | CarlenLiebPGt2 => Mode::Search,
            _ => Mode::Trials,
        };
        CheckInfo {
            id: self,
            name: self.name(),
            statement: r.statement,
            modules: r.modules,
            default_dims: r.dims,
            default_trials: r.trials,
            slack: r.slack,
            expected,
            mode,
            searchable: matches!(self, AndoMonoFalse | MinkowskiThreePGt2 | CarlenLiebPGt2 | ChoiSeparation),
            superop: matches!(self, HiaiPetz2 | HiaiPetz3),
        }
    }
}

/// Every registered check, in registry order.
pub fn registry() -> Vec<CheckInfo> {
    CheckId::ALL.iter().map(|id| id.info()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip_and_are_unique() {
        let mut seen = std::collections::HashSet::new();
        for &id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
            assert!(seen.insert(id.name()));
        }
        assert!(CheckId::ALL.len() >= 45);
        assert!(matches!("nope".parse::<CheckId>(), Err(VerifyError::UnknownCheck(_))));
    }

    #[test]
    fn every_entry_has_two_distinct_consistent_configs() {
        for info in registry() {
            assert!(info.default_dims.len() >= 2, "{}", info.name);
            assert_ne!(info.default_dims[0], info.default_dims[1], "{}", info.name);
            for d in info.default_dims {
                info.check_dims(d).unwrap_or_else(|e| panic!("{}: {e}", info.name));
            }
            assert!(!info.statement.is_empty() && !info.modules.is_empty());
        }
    }

    #[test]
    fn dimension_caps() {
        let hp = CheckId::HiaiPetz3.info();
        assert!(hp.check_dims(&[7, 2]).is_err());
        assert!(hp.check_dims(&[6, 6]).is_ok());
        assert!(CheckId::Ssa.info().check_dims(&[4, 4, 5]).is_err());
        assert!(CheckId::Ssa.info().check_dims(&[2, 2]).is_err());
        assert!(CheckId::ChoiSeparation.info().check_dims(&[3, 2]).is_err());
    }
}
