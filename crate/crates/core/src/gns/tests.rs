use super::*;
use crate::entropy::umegaki;
use crate::linalg::random::{complex_gaussian, random_density, random_hermitian, random_pd, random_traceless_hermitian, trial_rng};
use crate::linalg::{diag, max_abs_diff, Density};
use crate::opfunc::{catalog, FunctionId};
use crate::quadrature::{integrate_half_line_matrix, integrate_matrix};

fn inv(p: &Psd) -> CMatrix {
    p.inv().unwrap().matrix().clone()
}

fn shifted_inverse(x: &Psd, s: f64) -> CMatrix {
    (x.matrix() + identity(x.dim()) * Complex::new(s, 0.0)).try_inverse().unwrap()
}

#[test]
fn multiplication_operators() {
    let mut rng = trial_rng(1, 0);
    assert_eq!(lmul(&identity(3)).unwrap(), SuperOperator::identity(3));
    assert_eq!(rmul(&identity(3)).unwrap(), SuperOperator::identity(3));
    let (x, y, k) = (complex_gaussian(3, 3, &mut rng), complex_gaussian(3, 3, &mut rng), complex_gaussian(3, 3, &mut rng));
    let lr = lmul(&x).unwrap().compose(&rmul(&y).unwrap()).unwrap();
    assert!(max_abs_diff(&lr.apply(&k).unwrap(), &(&x * &k * &y)) < 1e-12);
    let rl = rmul(&y).unwrap().compose(&lmul(&x).unwrap()).unwrap();
    assert!(max_abs_diff(lr.action(), rl.action()) < 1e-12);
    assert!(max_abs_diff(lmul(&x).unwrap().adjoint().action(), lmul(&x.adjoint()).unwrap().action()) < 1e-14);
    assert!(max_abs_diff(rmul(&x).unwrap().adjoint().action(), rmul(&x.adjoint()).unwrap().action()) < 1e-14);
}

#[test]
fn gf_identity_is_right_multiplication() {
    let mut rng = trial_rng(2, 0);
    let (x, y) = (random_pd(3, &mut rng), random_pd(3, &mut rng));
    let k = complex_gaussian(3, 3, &mut rng);
    let f = catalog(FunctionId::Identity).unwrap();
    assert!(max_abs_diff(&gf_apply(&f, &x, &y, &k).unwrap(), &(&k * x.matrix())) < 1e-12);
    assert!(max_abs_diff(&gf_inv_apply(&f, &x, &y, &k).unwrap(), &(&k * inv(&x))) < 1e-10);
}

#[test]
fn gf_power_quadratic_form() {
    let mut rng = trial_rng(3, 0);
    let (x, y) = (random_pd(3, &mut rng), random_pd(3, &mut rng));
    let k = complex_gaussian(3, 3, &mut rng);
    for t in [0.25, 0.5, 0.8] {
        let f = catalog(FunctionId::Power(t)).unwrap();
        let lhs = (k.adjoint() * gf_apply(&f, &x, &y, &k).unwrap()).trace();
        let rhs = (k.adjoint() * y.pow(1.0 - t).unwrap().matrix() * &k * x.pow(t).unwrap().matrix()).trace();
        assert!((lhs - rhs).norm() < 1e-10);
    }
}

#[test]
fn gf_log_mean_integral_forms() {
    let mut rng = trial_rng(4, 0);
    let (x, y) = (random_pd(3, &mut rng), random_pd(3, &mut rng));
    let k = complex_gaussian(3, 3, &mut rng);
    let f = catalog(FunctionId::LogMean).unwrap();
    let direct = integrate_matrix(|t| y.pow(1.0 - t).unwrap().matrix() * &k * x.pow(t).unwrap().matrix(), 0.0, 1.0, 1e-12);
    assert!(max_abs_diff(&gf_apply(&f, &x, &y, &k).unwrap(), &direct) < 1e-9);
    let inverse = integrate_half_line_matrix(|s| shifted_inverse(&y, s) * &k * shifted_inverse(&x, s), 1e-12);
    assert!(max_abs_diff(&gf_inv_apply(&f, &x, &y, &k).unwrap(), &inverse) < 1e-6);
}

#[test]
fn kernel_matches_explicit_superoperator() {
    let mut rng = trial_rng(5, 0);
    let ids = [
        FunctionId::Power(0.3),
        FunctionId::Power(1.5),
        FunctionId::Inverse,
        FunctionId::Identity,
        FunctionId::Square,
        FunctionId::LogMean,
        FunctionId::XLogX,
        FunctionId::NegLog,
        FunctionId::Klein,
    ];
    for n in 1..=4 {
        let (x, y) = (random_pd(n, &mut rng), random_pd(n, &mut rng));
        let k = complex_gaussian(n, n, &mut rng);
        for id in ids {
            let f = catalog(id).unwrap();
            let explicit = gf_superoperator(&f, &x, &y).unwrap().apply(&k).unwrap();
            let scale = 1.0 + explicit.camax();
            assert!(max_abs_diff(&gf_apply(&f, &x, &y, &k).unwrap(), &explicit) < 1e-9 * scale, "{id} n={n}");
        }
    }
}

#[test]
fn gf_is_positive_and_self_adjoint_for_positive_f() {
    let mut rng = trial_rng(6, 0);
    let (x, y) = (random_pd(3, &mut rng), random_pd(3, &mut rng));
    for id in [FunctionId::Power(0.5), FunctionId::LogMean, FunctionId::Inverse] {
        let g = gf_superoperator(&catalog(id).unwrap(), &x, &y).unwrap();
        assert!(g.self_adjoint_defect() < 1e-10, "{id}");
        assert!(g.min_eigenvalue().unwrap() > 0.0, "{id}");
    }
}

#[test]
fn gf_round_trip() {
    let mut rng = trial_rng(7, 0);
    let (x, y) = (random_pd(3, &mut rng), random_pd(3, &mut rng));
    let k = complex_gaussian(3, 3, &mut rng);
    let f = catalog(FunctionId::Power(0.4)).unwrap();
    let back = gf_apply(&f, &x, &y, &gf_inv_apply(&f, &x, &y, &k).unwrap()).unwrap();
    assert!(max_abs_diff(&back, &k) < 1e-9);
    let klein = catalog(FunctionId::Klein).unwrap();
    let same = random_pd(2, &mut rng);
    assert!(matches!(gf_inv_apply(&klein, &same, &same, &identity(2)), Err(Error::Singular(_))));
    let singular = Psd::from_diagonal(&[1.0, 0.0]).unwrap();
    assert!(gf_apply(&f, &singular, &same, &identity(2)).is_err());
}

#[test]
fn t_map_cases() {
    let mut rng = trial_rng(8, 0);
    let b = random_hermitian(3, &mut rng);
    let a = Psd::identity(3).scale(2.5);
    assert!(max_abs_diff(&t_map(&a, b.matrix()).unwrap(), &(b.matrix() / Complex::new(2.5, 0.0))) < 1e-14);
    let ad = Psd::from_diagonal(&[0.5, 1.0, 3.0]).unwrap();
    let bd = diag(&[1.0, -2.0, 0.3]);
    assert!(max_abs_diff(&t_map(&ad, &bd).unwrap(), &(inv(&ad) * &bd)) < 1e-14);

    let a = random_pd(4, &mut rng);
    let b = random_hermitian(4, &mut rng);
    let h = 1e-5;
    let log_at = |t: f64| Psd::new(a.hermitian().add(&b.scale(t))).unwrap().log().unwrap().into_matrix();
    let fd = (log_at(h) - log_at(-h)) / Complex::new(2.0 * h, 0.0);
    assert!(max_abs_diff(&t_map(&a, b.matrix()).unwrap(), &fd) < 1e-6);
    let integral = integrate_half_line_matrix(|s| shifted_inverse(&a, s) * b.matrix() * shifted_inverse(&a, s), 1e-12);
    assert!(max_abs_diff(&t_map(&a, b.matrix()).unwrap(), &integral) < 1e-8);
}

#[test]
fn hess_log_cases() {
    let mut rng = trial_rng(9, 0);
    let kd = Hermitian::from_real_diagonal(&[1.0, -0.5, 2.0]);
    let out = hess_log(&Psd::identity(3), &kd).unwrap();
    assert!(max_abs_diff(out.matrix(), &(kd.matrix() * kd.matrix())) < 1e-12);
    // Scalar oracle: −d²/dt² log(x + tk) = k²/x².
    let (xs, ks) = ([0.3, 1.2, 4.0], [1.0, -0.5, 2.0]);
    let out = hess_log(&Psd::from_diagonal(&xs).unwrap(), &Hermitian::from_real_diagonal(&ks)).unwrap();
    let oracle: Vec<f64> = xs.iter().zip(&ks).map(|(x, k)| k * k / (x * x)).collect();
    assert!(max_abs_diff(out.matrix(), &diag(&oracle)) < 1e-12);

    let x = random_pd(3, &mut rng);
    let k = random_hermitian(3, &mut rng);
    let out = hess_log(&x, &k).unwrap();
    let integral = integrate_half_line_matrix(
        |s| {
            let r = shifted_inverse(&x, s);
            (&r * k.matrix() * &r * k.matrix() * &r) * Complex::new(2.0, 0.0)
        },
        1e-13,
    );
    assert!(max_abs_diff(out.matrix(), &integral) < 1e-7);
    let h = 1e-4;
    let log_at = |t: f64| Psd::new(x.hermitian().add(&k.scale(t))).unwrap().log().unwrap().into_matrix();
    let second = (log_at(h) - log_at(0.0) * Complex::new(2.0, 0.0) + log_at(-h)) / Complex::new(-h * h, 0.0);
    assert!(max_abs_diff(out.matrix(), &second) < 1e-5);
}

#[test]
fn q_form_cases() {
    let mut rng = trial_rng(10, 0);
    let k = random_hermitian(3, &mut rng);
    let kk = (k.matrix() * k.matrix()).trace().re;
    assert!((q_form(&Psd::identity(3), &k).unwrap() - kk).abs() < 1e-12);
    let x = random_pd(3, &mut rng);
    let q = q_form(&x, &k).unwrap();
    assert!(q >= 0.0);
    let c = 3.7;
    assert!((q_form(&x.scale(c), &k.scale(c)).unwrap() - c * q).abs() < 1e-10 * (1.0 + q));
    let xd = Psd::from_diagonal(&[0.5, 2.0]).unwrap();
    let kd = Hermitian::from_real_diagonal(&[1.0, 3.0]);
    assert!((q_form(&xd, &kd).unwrap() - (1.0 / 0.5 + 9.0 / 2.0)).abs() < 1e-12);
}

#[test]
fn metrics() {
    let mut rng = trial_rng(11, 0);
    let p = [0.2, 0.3, 0.5];
    let kv = [0.4, -0.1, -0.3];
    let rho = Psd::from_diagonal(&p).unwrap();
    let k = Hermitian::from_real_diagonal(&kv);
    let fisher: f64 = p.iter().zip(&kv).map(|(p, k)| k * k / p).sum();
    assert!((metric_wyd(&rho, &k, 0.3).unwrap() - fisher).abs() < 1e-12);
    assert!((metric_bkm(&rho, &k).unwrap() - fisher).abs() < 1e-12);

    let mixed = Density::maximally_mixed(3).into_psd();
    let k = random_traceless_hermitian(3, &mut rng);
    let kk = 3.0 * (k.matrix() * k.matrix()).trace().re;
    assert!((metric_wyd(&mixed, &k, 0.5).unwrap() - kk).abs() < 1e-10);
    assert!((metric_bkm(&mixed, &k).unwrap() - kk).abs() < 1e-10);

    let rho = random_density(3, 3, &mut rng).unwrap().into_psd();
    assert!(metric_wyd(&rho, &k, 0.4).unwrap() > 0.0);
    assert!(metric_wyd(&rho, &random_hermitian(3, &mut rng).add(&Hermitian::identity(3)), 0.4).is_err());
    assert!(metric_wyd(&rho, &k, 1.0).is_err());

    // BKM is the Hessian of s ↦ tr[(ρ+sK) log(ρ+sK)].
    let ent = |s: f64| {
        let p = Psd::new(rho.hermitian().add(&k.scale(s))).unwrap();
        p.eigenvalues().iter().map(|l| l * l.ln()).sum::<f64>()
    };
    let h = 1e-4;
    let second = (ent(h) - 2.0 * ent(0.0) + ent(-h)) / (h * h);
    let bkm = metric_bkm(&rho, &k).unwrap();
    assert!((bkm - second).abs() < 1e-5 * (1.0 + bkm.abs()), "{bkm} vs {second} eigs {:?}", rho.eigenvalues());
}

#[test]
fn donald_entropy_cases() {
    let mut rng = trial_rng(12, 0);
    let x = random_pd(3, &mut rng);
    assert!(donald_entropy(&x, &x).unwrap().abs() < 1e-12);
    let (a, b) = (random_density(4, 4, &mut rng).unwrap(), random_density(4, 4, &mut rng).unwrap());
    let d = donald_entropy(a.psd(), b.psd()).unwrap();
    assert!((d - umegaki(a.psd(), b.psd()).unwrap().value).abs() < 1e-9);
    let (xs, ys) = (0.7, 2.3);
    let scalar = donald_entropy(&Psd::from_diagonal(&[xs]).unwrap(), &Psd::from_diagonal(&[ys]).unwrap()).unwrap();
    assert!((scalar - (xs * (xs.ln() - ys.ln()) + ys - xs)).abs() < 1e-15);
    let y = random_pd(3, &mut rng);
    let un = umegaki(&x, &y).unwrap().value + y.trace() - x.trace();
    assert!((donald_entropy(&x, &y).unwrap() - un).abs() < 1e-9);
}

#[test]
fn klein_through_gns() {
    let mut rng = trial_rng(13, 0);
    let (x, y) = (random_pd(3, &mut rng), random_pd(3, &mut rng));
    let f = catalog(FunctionId::Klein).unwrap();
    let v = gf_apply(&f, &x, &y, &identity(3)).unwrap().trace();
    assert!(v.im.abs() < 1e-12 && v.re >= 0.0);
    let expected = umegaki(&x, &y).unwrap().value - x.trace() + y.trace();
    assert!((v.re - expected).abs() < 1e-9);
}
