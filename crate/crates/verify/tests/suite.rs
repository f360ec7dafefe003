use proptest::prelude::*;
use serde_json::Value;
use traceforge_core::channels::full_depolarizer;
use traceforge_core::linalg::interchange::matrix_from_json;
use traceforge_core::linalg::{partial_trace, FactorDims, Hermitian, Psd};
use traceforge_core::CMatrix;
use traceforge_verify::{derive_seed, registry, run_check, search_counterexample, CheckConfig, CheckId, CheckReport, Mode, Status, VerifyError};

fn body(r: &CheckReport) -> Value {
    let mut v = serde_json::to_value(r).unwrap();
    v.as_object_mut().unwrap().remove("wall_time");
    v
}

fn witness_matrix(r: &CheckReport, name: &str) -> CMatrix {
    let v = serde_json::to_value(r.witness.as_ref().unwrap()).unwrap();
    matrix_from_json(&v[name].to_string()).unwrap()
}

fn witness_scalar(r: &CheckReport, name: &str) -> f64 {
    serde_json::to_value(r.witness.as_ref().unwrap()).unwrap()[name].as_f64().unwrap()
}

fn psd(m: CMatrix) -> Psd {
    Psd::new(Hermitian::hermitian_part(m)).unwrap()
}

#[test]
fn default_suite_meets_expectations_for_several_seeds() {
    for seed in [42, 1, 2] {
        for info in registry() {
            let r = run_check(info.id, &CheckConfig::with_seed(seed)).unwrap();
            assert!(r.meets_expectation(), "seed {seed}: {} is {} (expected {}): {:?}", r.id, r.status, r.expected, r.details);
        }
    }
}

#[test]
fn every_check_covers_two_distinct_configurations() {
    for info in registry() {
        let r = run_check(info.id, &CheckConfig::with_seed(5)).unwrap();
        let mut dims: Vec<_> = r.configs.iter().map(|c| c.dims.clone()).collect();
        dims.dedup();
        // A search stops at its first verified counterexample.
        let needed = if info.mode == Mode::Search && r.status == Status::Fail { 1 } else { 2 };
        assert!(dims.len() >= needed, "{}: {dims:?}", info.name);
        assert!(info.default_dims.len() >= 2, "{}", info.name);
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let run_all = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| registry().iter().map(|i| body(&run_check(i.id, &CheckConfig::with_seed(9)).unwrap())).collect::<Vec<_>>())
    };
    assert_eq!(run_all(1), run_all(3));
}

#[test]
fn ando_witness_matches_recomputation() {
    let cfg = CheckConfig { dims: Some(vec![2]), ..CheckConfig::with_seed(0) };
    let r = search_counterexample(CheckId::AndoMonoFalse, &cfg).unwrap();
    assert_eq!(r.status, Status::Fail);
    let (x, k) = (witness_matrix(&r, "X"), witness_matrix(&r, "K"));
    // The full depolarizer sends the traceless K to zero, so the left side vanishes.
    let phi_k = full_depolarizer(2).unwrap().apply(&k).unwrap();
    assert!(phi_k.norm() < 1e-15);
    assert_eq!(witness_scalar(&r, "lhs"), 0.0);
    // (1/n) tr[K*K] (tr Y)^{1−t} (tr X)^{−t} with tr X = tr Y = 1.
    let closed = 0.5 * (k.adjoint() * &k).trace().re / x.trace().re;
    assert!((witness_scalar(&r, "rhs_closed_form") - closed).abs() < 1e-12);
    assert!(r.worst_slack.unwrap() <= -0.05);
}

fn minkowski_gap(a: &CMatrix, d: [usize; 3]) -> f64 {
    let dims = FactorDims::new(d.to_vec()).unwrap();
    let a = psd(a.clone());
    let b = psd(partial_trace(a.matrix(), &dims, &[0]).unwrap()).pow(3.0).unwrap();
    let inner = psd(partial_trace(b.matrix(), &FactorDims::new(vec![d[1], d[2]]).unwrap(), &[0]).unwrap());
    let lhs = inner.pow(1.0 / 3.0).unwrap().trace();
    let rhs = psd(partial_trace(a.pow(3.0).unwrap().matrix(), &dims, &[1]).unwrap()).pow(1.0 / 3.0).unwrap().trace();
    lhs - rhs
}

#[test]
fn minkowski_counterexample_reverifies() {
    let r = search_counterexample(CheckId::MinkowskiThreePGt2, &CheckConfig::with_seed(42)).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(minkowski_gap(&witness_matrix(&r, "A_lhs_greater"), [2, 2, 2]) > 0.0);
    assert!(minkowski_gap(&witness_matrix(&r, "A_lhs_smaller"), [2, 2, 2]) < 0.0);
}

fn upsilon(x: &CMatrix, b: &CMatrix) -> f64 {
    psd(b.adjoint() * psd(x.clone()).pow(3.0).unwrap().matrix() * b).pow(1.0 / 3.0).unwrap().trace()
}

#[test]
fn carlen_lieb_counterexample_reverifies() {
    let r = search_counterexample(CheckId::CarlenLiebPGt2, &CheckConfig::with_seed(42)).unwrap();
    assert_eq!(r.status, Status::Fail);
    for (prefix, sign) in [("convexity", 1.0), ("concavity", -1.0)] {
        let b = witness_matrix(&r, &format!("{prefix}_B"));
        let xa = witness_matrix(&r, &format!("{prefix}_X_a"));
        let xb = witness_matrix(&r, &format!("{prefix}_X_b"));
        let mid = upsilon(&((&xa + &xb) * traceforge_core::Complex::new(0.5, 0.0)), &b);
        let avg = 0.5 * (upsilon(&xa, &b) + upsilon(&xb, &b));
        assert!(sign * (mid - avg) > 0.0, "{prefix}: mid {mid} avg {avg}");
    }
}

#[test]
fn exhausted_budget_is_inconclusive_and_non_search_ids_are_rejected() {
    let cfg = CheckConfig { search_budget: 3, ..CheckConfig::with_seed(42) };
    assert_eq!(search_counterexample(CheckId::MinkowskiThreePGt2, &cfg).unwrap().status, Status::Inconclusive);
    assert!(matches!(search_counterexample(CheckId::Ssa, &cfg), Err(VerifyError::NotSearchable(_))));
}

#[test]
fn dimension_overrides_are_validated() {
    let cfg = CheckConfig { dims: Some(vec![2, 2]), ..CheckConfig::with_seed(1) };
    assert!(matches!(run_check(CheckId::Ssa, &cfg), Err(VerifyError::Config(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn identical_configs_give_identical_reports(seed in any::<u64>()) {
        let cfg = CheckConfig { trials: Some(20), ..CheckConfig::with_seed(seed) };
        for id in [CheckId::Klein, CheckId::Ssa, CheckId::Dpi] {
            prop_assert_eq!(body(&run_check(id, &cfg).unwrap()), body(&run_check(id, &cfg).unwrap()));
        }
    }

    #[test]
    fn configuration_seeds_are_distinct(seed in any::<u64>()) {
        let mut seeds: Vec<u64> = registry().iter().flat_map(|i| (0..2).map(move |c| derive_seed(seed, i.name, c))).collect();
        let n = seeds.len();
        seeds.sort_unstable();
        seeds.dedup();
        prop_assert_eq!(seeds.len(), n);
    }

    #[test]
    fn true_inequalities_pass_on_random_seeds(seed in any::<u64>()) {
        let cfg = CheckConfig { trials: Some(40), ..CheckConfig::with_seed(seed) };
        for id in [CheckId::Ssa, CheckId::LiebConcavity, CheckId::Dpi, CheckId::GfConvexity, CheckId::HiaiPetz3] {
            let r = run_check(id, &cfg).unwrap();
            prop_assert_eq!(r.status, Status::Pass, "{}: {:?}", r.id, r.worst_slack);
        }
    }
}
