use proptest::prelude::*;
use traceforge_core::entropy::umegaki;
use traceforge_core::gns::{gf_apply, gf_superoperator, hess_log, t_map};
use traceforge_core::linalg::random::{complex_gaussian, random_density, random_hermitian, random_pd, random_unit_vector, real_gaussian, trial_rng};
use traceforge_core::linalg::{identity, max_abs_diff, operator_norm, Hermitian, Psd};
use traceforge_core::opfunc::{numeric_monotone_test, MonotoneOutcome};
use traceforge_core::opfunc::{catalog, FunctionId};
use traceforge_core::{CMatrix, Complex};

const CATALOG: [FunctionId; 10] = [
    FunctionId::Power(0.3),
    FunctionId::Power(0.5),
    FunctionId::Power(1.5),
    FunctionId::NegLog,
    FunctionId::XLogX,
    FunctionId::Inverse,
    FunctionId::Identity,
    FunctionId::Square,
    FunctionId::LogMean,
    FunctionId::Klein,
];

fn min_eig(m: CMatrix) -> f64 {
    Hermitian::hermitian_part(m).min_eigenvalue().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kernel_matches_explicit_assembly(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = trial_rng(seed, 0);
        let (x, y) = (random_pd(n, &mut rng), random_pd(n, &mut rng));
        let k = complex_gaussian(n, n, &mut rng);
        for id in CATALOG {
            let f = catalog(id).unwrap();
            let g = gf_superoperator(&f, &x, &y).unwrap();
            let explicit = g.apply(&k).unwrap();
            let scale = 1.0 + explicit.camax();
            prop_assert!(max_abs_diff(&gf_apply(&f, &x, &y, &k).unwrap(), &explicit) < 1e-9 * scale);
            if matches!(id, FunctionId::Power(_) | FunctionId::Inverse | FunctionId::Identity | FunctionId::Square | FunctionId::LogMean) {
                prop_assert!(g.self_adjoint_defect() < 1e-10 * (1.0 + g.action().camax()));
                prop_assert!(g.min_eigenvalue().unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn klein_through_gns_matches_umegaki(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = trial_rng(seed, 1);
        let (x, y) = (random_pd(n, &mut rng), random_pd(n, &mut rng));
        let f = catalog(FunctionId::Klein).unwrap();
        let v = gf_apply(&f, &x, &y, &identity(n)).unwrap().trace();
        let oracle = umegaki(&x, &y).unwrap().value - x.trace() + y.trace();
        prop_assert!(v.re >= -1e-10);
        prop_assert!((v.re - oracle).abs() < 1e-9 * (1.0 + oracle));
    }

    #[test]
    fn flip_lemma(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = trial_rng(seed, 2);
        let (b, c) = (random_pd(n, &mut rng), random_pd(n, &mut rng));
        let a0 = complex_gaussian(n, n, &mut rng);
        let c_inv = c.inv().unwrap();
        let b_inv = b.inv().unwrap();
        // Scales straddling the boundary of both conditions.
        for s in [0.05, 0.2, 0.5, 1.0, 2.0, 5.0] {
            let a = &a0 * Complex::new(s, 0.0);
            let left = min_eig(c_inv.matrix() - a.adjoint() * b_inv.matrix() * &a);
            let right = min_eig(b.matrix() - &a * c.matrix() * a.adjoint());
            if left.abs() > 1e-8 && right.abs() > 1e-8 {
                prop_assert_eq!(left > 0.0, right > 0.0, "s={} left={} right={}", s, left, right);
            }
        }
    }

    #[test]
    fn gradient_checks(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = trial_rng(seed, 3);
        // Difference quotients of log lose about eps·κ/h² to rounding: keep κ ≤ 2n + 1
        // and take steps relative to λ_min/‖K‖.
        let a0 = random_pd(n, &mut rng);
        let a = a0.mix(&Psd::identity(n).scale(a0.trace() / n as f64), 0.5).unwrap();
        let b = random_hermitian(n, &mut rng);
        let unit = a.eigenvalues()[0] / operator_norm(b.matrix());
        let log_at = |t: f64| Psd::new(a.hermitian().add(&b.scale(t))).unwrap().log().unwrap().into_matrix();
        let h = 1e-5 * unit;
        let fd = (log_at(h) - log_at(-h)) / Complex::new(2.0 * h, 0.0);
        let tm = t_map(&a, b.matrix()).unwrap();
        prop_assert!(max_abs_diff(&tm, &fd) < 1e-6 * (1.0 + tm.camax()));
        let h2 = 1e-3 * unit;
        let second = (log_at(h2) - log_at(0.0) * Complex::new(2.0, 0.0) + log_at(-h2)) / Complex::new(-h2 * h2, 0.0);
        let hl = hess_log(&a, &b).unwrap();
        prop_assert!(max_abs_diff(hl.matrix(), &second) < 1e-5 * (1.0 + hl.matrix().camax()));

        let x = random_density(n, n, &mut rng).unwrap();
        let y = random_density(n, n, &mut rng).unwrap();
        let d = umegaki(x.psd(), y.psd()).unwrap().value;
        let t: f64 = 1.0 - 1e-6;
        let tr = (y.psd().pow(1.0 - t).unwrap().matrix() * x.psd().pow(t).unwrap().matrix()).trace().re;
        prop_assert!(((1.0 - tr) / (1.0 - t) - d).abs() < 1e-4 * (1.0 + d));
    }

    #[test]
    fn representation_reproduces_catalog(x in 1e-3f64..1e3) {
        for id in CATALOG {
            let f = catalog(id).unwrap();
            let exact = f.eval(x);
            let via = f.eval_via_rep(x).unwrap();
            prop_assert!((via - exact).abs() <= 1e-6 * exact.abs().max(1e-12) + 1e-12, "{} at {}", id, x);
        }
    }

    #[test]
    fn convex_flags_hold_along_random_vectors(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = trial_rng(seed, 4);
        for id in CATALOG {
            let f = catalog(id).unwrap();
            if !f.flags().convex {
                continue;
            }
            let a = random_pd(n, &mut rng);
            let b = random_pd(n, &mut rng).scale(real_gaussian(&mut rng).exp());
            let u = random_unit_vector(n, &mut rng);
            let mid = f.apply(&a.mix(&b, 0.5).unwrap()).unwrap();
            let avg = f.apply(&a).unwrap().add(&f.apply(&b).unwrap()).scale(0.5);
            let gap = (u.adjoint() * (mid.matrix() - avg.matrix()) * &u)[(0, 0)].re;
            let scale = 1.0 + avg.matrix().camax();
            prop_assert!(gap <= 1e-9 * scale, "{}: {}", id, gap);
        }
    }
}

#[test]
fn increasing_flags_survive_500_trials() {
    for id in CATALOG {
        let f = catalog(id).unwrap();
        if !f.flags().increasing {
            continue;
        }
        for n in [2, 3, 4] {
            let out = numeric_monotone_test(&f, n, 500, &mut trial_rng(900 + n as u64, 0)).unwrap();
            assert!(matches!(out, MonotoneOutcome::Consistent { .. }), "{id} n={n}: {out:?}");
        }
    }
}
