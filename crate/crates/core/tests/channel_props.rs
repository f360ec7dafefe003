use proptest::prelude::*;
use traceforge_core::channels::{
    choi, is_k_positive, kraus_from_choi, named_map, sample_channel, stinespring_factorize, ChannelKind, KPositivity, KrausChannel,
    LinearMatrixMap, MapTag, NamedMap, PositivityMode,
};
use traceforge_core::linalg::random::{complex_gaussian, trial_rng};
use traceforge_core::linalg::{inner, matrix_unit, Hermitian};
use traceforge_core::{CMatrix, Complex, Error};

fn random_kraus(seed: u64, n: usize, m: usize, l: usize) -> KrausChannel {
    let mut rng = trial_rng(seed, 0);
    KrausChannel::new(n, m, (0..l).map(|_| complex_gaussian(n, m, &mut rng)).collect()).unwrap()
}

/// Mixes a CP map with a multiple of the transpose big enough to break complete positivity.
fn transpose_perturbed(seed: u64, n: usize) -> LinearMatrixMap {
    let cp = random_kraus(seed, n, n, 1).to_map();
    let t = named_map(NamedMap::Transpose, n).unwrap();
    let scale = Complex::new(10.0 * (1.0 + cp.action().norm()), 0.0);
    LinearMatrixMap::from_action(n, n, cp.action() + t.action() * scale, MapTag::Custom).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn choi_psd_iff_kraus_for_cp_maps(seed in any::<u64>(), n in 1usize..4, m in 1usize..4, l in 1usize..4) {
        let map = random_kraus(seed, n, m, l).to_map();
        let c = choi(&map);
        let back = kraus_from_choi(&c, 1e-9);
        prop_assert!(back.is_ok());
        let exact = is_k_positive(&map, n.max(m), PositivityMode::ExactCp, 0, &mut trial_rng(seed, 1)).unwrap();
        let positive = matches!(exact, KPositivity::Positive);
        prop_assert!(positive);
        prop_assert!(back.unwrap().kraus_ops().len() <= n * m);
    }

    #[test]
    fn adjoint_duality_on_matrix_units(seed in any::<u64>(), n in 1usize..5, m in 1usize..5, l in 1usize..3) {
        let ch = random_kraus(seed, n, m, l);
        for i in 0..n * n {
            for j in 0..m * m {
                let a = matrix_unit(n, i % n, i / n);
                let b = matrix_unit(m, j % m, j / m);
                let lhs = inner(&ch.apply(&a).unwrap(), &b);
                let rhs = inner(&a, &ch.adjoint_apply(&b).unwrap());
                prop_assert!((lhs - rhs).norm() < 1e-10);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn choi_not_psd_iff_no_kraus_for_non_cp_maps(seed in any::<u64>(), n in 2usize..4) {
        let map = transpose_perturbed(seed, n);
        let is_not_cp = matches!(kraus_from_choi(&choi(&map), 1e-9), Err(Error::NotCompletelyPositive { .. }));
        prop_assert!(is_not_cp);
        let exact = is_k_positive(&map, n, PositivityMode::ExactCp, 0, &mut trial_rng(seed, 1)).unwrap();
        let violated = matches!(exact, KPositivity::Violated { .. });
        prop_assert!(violated);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn stinespring_round_trip(seed in any::<u64>(), p in 1usize..5, q in 1usize..5, l in 1usize..5) {
        prop_assume!(l * p >= q);
        let mut rng = trial_rng(seed, 2);
        let ch = sample_channel(ChannelKind::CpUnital, p, q, l, &mut rng).unwrap();
        let f = stinespring_factorize(&ch, &mut rng).unwrap();
        prop_assert_eq!(f.m, l);
        prop_assert!(f.unitarity_defect() < 1e-10);
        prop_assert!(f.reconstruction_error(&ch).unwrap() < 1e-9);
    }
}

#[test]
fn choi_schwarz_passes_schwarz_and_fails_two_positivity() {
    let mut rng = trial_rng(77, 0);
    let map = named_map(NamedMap::ChoiSchwarz, 2).unwrap();
    for _ in 0..1000 {
        let a: CMatrix = complex_gaussian(2, 2, &mut rng);
        let fa = map.apply(&a).unwrap();
        let gap = map.apply(&(a.adjoint() * &a)).unwrap() - fa.adjoint() * fa;
        assert!(Hermitian::hermitian_part(gap).min_eigenvalue().unwrap() >= -1e-10);
    }
    match is_k_positive(&map, 2, PositivityMode::RefuteSample, 500, &mut rng).unwrap() {
        KPositivity::Violated { eigenvalue, .. } => assert!(eigenvalue < -1e-3),
        other => panic!("{other:?}"),
    }
}
