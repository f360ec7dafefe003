use super::*;
use crate::linalg::random::{complex_gaussian, haar_unitary, random_density, random_hermitian, random_pd, trial_rng};
use crate::linalg::{kron, max_abs_diff, partial_trace};

fn dens(values: &[f64]) -> Psd {
    Psd::from_diagonal(values).unwrap()
}

fn max_entangled(n: usize) -> Density {
    let mut v = CMatrix::zeros(n * n, 1);
    for i in 0..n {
        v[(i * n + i, 0)] = Complex::new(1.0, 0.0);
    }
    Density::from_matrix(&v * v.adjoint()).unwrap()
}

#[test]
fn von_neumann_values() {
    assert!((von_neumann(Density::maximally_mixed(5).psd()) - 5f64.ln()).abs() < 1e-12);
    let psi = complex_gaussian(3, 1, &mut trial_rng(1, 0));
    assert!(von_neumann(Density::from_matrix(&psi * psi.adjoint()).unwrap().psd()).abs() < 1e-10);
    // −(1/2 ln 1/2 + 2 · 1/4 ln 1/4) = (3/2) ln 2
    assert!((von_neumann(&dens(&[0.5, 0.25, 0.25])) - 1.5 * 2f64.ln()).abs() < 1e-12);
    assert!((1.5 * 2f64.ln() - 1.0397207708399179).abs() < 1e-15);
}

#[test]
fn umegaki_values() {
    let mut rng = trial_rng(2, 0);
    let x = random_density(3, 3, &mut rng).unwrap();
    let d = umegaki(x.psd(), x.psd()).unwrap();
    assert!(d.support_condition_met && d.value.abs() < 1e-12);
    let d = umegaki(&dens(&[0.5, 0.5]), &dens(&[0.25, 0.75])).unwrap();
    let oracle = classical_kl(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
    assert!((d.value - oracle).abs() < 1e-14);
    assert!((oracle - 0.5 * (4.0f64 / 3.0).ln()).abs() < 1e-15);
    assert!((oracle - 0.14384103622589045).abs() < 1e-15);
}

#[test]
fn umegaki_support_rule() {
    let d = umegaki(&dens(&[0.5, 0.5]), &dens(&[1.0, 0.0])).unwrap();
    assert!(!d.support_condition_met && d.value == f64::INFINITY);
    let d = umegaki(&dens(&[1.0, 0.0]), &dens(&[0.5, 0.5])).unwrap();
    assert!(d.support_condition_met && (d.value - 2f64.ln()).abs() < 1e-12);
    // Near-singular Y keeps a large finite value.
    let d = umegaki(&dens(&[0.5, 0.5]), &dens(&[1.0, 1e-9])).unwrap();
    assert!(d.support_condition_met && d.value > 5.0 && d.value.is_finite());
}

#[test]
fn umegaki_is_the_derivative_limit() {
    let mut rng = trial_rng(3, 0);
    let x = random_density(3, 3, &mut rng).unwrap();
    let y = random_density(3, 3, &mut rng).unwrap();
    let d = umegaki(x.psd(), y.psd()).unwrap().value;
    for k in 3..=6 {
        let t = 1.0 - 10f64.powi(-k);
        let tr = (y.psd().pow(1.0 - t).unwrap().matrix() * x.psd().pow(t).unwrap().matrix()).trace().re;
        let approx = (1.0 - tr) / (1.0 - t);
        assert!((approx - d).abs() < 10f64.powi(-k) * 50.0, "k={k}: {approx} vs {d}");
    }
}

#[test]
fn bs_entropy_properties() {
    let mut rng = trial_rng(4, 0);
    let x = random_density(3, 3, &mut rng).unwrap();
    assert!(bs_entropy(x.psd(), x.psd()).unwrap().abs() < 1e-12);
    let (p, q) = ([0.2, 0.3, 0.5], [0.6, 0.1, 0.3]);
    let v = bs_entropy(&dens(&p), &dens(&q)).unwrap();
    assert!((v - classical_kl(&p, &q).unwrap()).abs() < 1e-13);
    for _ in 0..20 {
        let y = random_density(3, 3, &mut rng).unwrap();
        let x = random_density(3, 3, &mut rng).unwrap();
        let bs = bs_entropy(y.psd(), x.psd()).unwrap();
        assert!(bs.is_finite());
        assert!(bs >= umegaki(y.psd(), x.psd()).unwrap().value - 1e-9);
    }
    assert!(bs_entropy(&dens(&[1.0, 0.0]), &dens(&[0.5, 0.5])).is_err());
}

#[test]
fn sandwiched_renyi_values() {
    let mut rng = trial_rng(5, 0);
    let r = random_density(3, 3, &mut rng).unwrap();
    for alpha in [0.5, 2.0, 3.0] {
        assert!(sandwiched_renyi(r.psd(), r.psd(), alpha).unwrap().abs() < 1e-12);
    }
    let (p, q) = ([0.2, 0.3, 0.5], [0.6, 0.1, 0.3]);
    let v = sandwiched_renyi(&dens(&p), &dens(&q), 2.0).unwrap();
    let oracle: f64 = p.iter().zip(&q).map(|(a, b)| a * a / b).sum::<f64>().ln();
    assert!((v - oracle).abs() < 1e-13);
    assert!((classical_renyi(&p, &q, 2.0) - oracle).abs() < 1e-14);
    let s = random_density(3, 3, &mut rng).unwrap();
    let d = umegaki(r.psd(), s.psd()).unwrap().value;
    for alpha in [1.0001, 0.9999] {
        assert!((sandwiched_renyi(r.psd(), s.psd(), alpha).unwrap() - d).abs() < 1e-3);
    }
    assert!(sandwiched_renyi(r.psd(), s.psd(), 1.0).is_err());
    assert_eq!(sandwiched_renyi(&dens(&[0.5, 0.5]), &dens(&[1.0, 0.0]), 2.0).unwrap(), f64::INFINITY);
}

#[test]
fn entropy_vector_of_product_and_pure_states() {
    let mut rng = trial_rng(6, 0);
    let parts: Vec<Density> = [2, 3, 2].iter().map(|&d| random_density(d, d, &mut rng).unwrap()).collect();
    let prod = Density::from_matrix(kron(&kron(parts[0].matrix(), parts[1].matrix()), parts[2].matrix())).unwrap();
    let dims = FactorDims::new(vec![2, 3, 2]).unwrap();
    let e = subsystem_entropies(&prod, &dims).unwrap();
    assert!((e.s123 - e.s1 - e.s2 - e.s3).abs() < 1e-10);
    assert!((e.s2 - von_neumann(parts[1].psd())).abs() < 1e-10);
    assert!(e.within_bounds(&dims, 1e-9));

    let pure = random_tripartite_from_pure([2, 2, 3], 1, &mut rng).unwrap();
    let dims = FactorDims::new(vec![2, 2, 3]).unwrap();
    let e = subsystem_entropies(&pure, &dims).unwrap();
    assert!(e.s123.abs() < 1e-9);
    assert!((e.s12 - e.s3).abs() < 1e-9 && (e.s13 - e.s2).abs() < 1e-9 && (e.s23 - e.s1).abs() < 1e-9);
}

#[test]
fn classical_tripartite_marginals() {
    let mut rng = trial_rng(7, 0);
    let p = crate::linalg::random::random_probabilities(8, &mut rng);
    let rho = classical_state(&p).unwrap();
    let dims = FactorDims::new(vec![2, 2, 2]).unwrap();
    let e = subsystem_entropies(&rho, &dims).unwrap();
    let marg = |keep: &[usize]| {
        let mut m = std::collections::BTreeMap::<Vec<usize>, f64>::new();
        for (k, &pk) in p.iter().enumerate() {
            let bits = [k >> 2 & 1, k >> 1 & 1, k & 1];
            *m.entry(keep.iter().map(|&i| bits[i]).collect()).or_default() += pk;
        }
        shannon(&m.values().copied().collect::<Vec<_>>())
    };
    assert!((e.s1 - marg(&[0])).abs() < 1e-12);
    assert!((e.s13 - marg(&[0, 2])).abs() < 1e-12);
    assert!((e.s23 - marg(&[1, 2])).abs() < 1e-12);
    assert!((e.s123 - shannon(&p)).abs() < 1e-12);
    let i = cmi(&rho, &dims).unwrap();
    assert!((i - (marg(&[0, 2]) + marg(&[1, 2]) - shannon(&p) - marg(&[2]))).abs() < 1e-12);
}

#[test]
fn conditional_entropy_cases() {
    let dims = FactorDims::new(vec![3, 3]).unwrap();
    let me = max_entangled(3);
    assert!((conditional_entropy(&me, &dims, 0).unwrap() + 3f64.ln()).abs() < 1e-10);
    assert!((squashed_lb(&me, &FactorDims::new(vec![3, 3]).unwrap()).unwrap() - 3f64.ln()).abs() < 1e-10);
    assert!(conditional_entropy(&me, &dims, 2).is_err());

    let mut rng = trial_rng(8, 0);
    let a = random_density(2, 2, &mut rng).unwrap();
    let b = random_density(3, 3, &mut rng).unwrap();
    let prod = Density::from_matrix(kron(a.matrix(), b.matrix())).unwrap();
    let dims = FactorDims::new(vec![2, 3]).unwrap();
    assert!((conditional_entropy(&prod, &dims, 0).unwrap() - von_neumann(b.psd())).abs() < 1e-10);
    assert!((conditional_entropy(&prod, &dims, 1).unwrap() - von_neumann(a.psd())).abs() < 1e-10);
    assert!(squashed_lb(&prod, &dims).unwrap() == 0.0);

    // Classical H(X|Y) = −Σ p(x,y) log p(x|y).
    let p = [0.1, 0.2, 0.05, 0.3, 0.25, 0.1];
    let rho = classical_state(&p).unwrap();
    let py: Vec<f64> = (0..3).map(|y| p[y] + p[3 + y]).collect();
    let oracle: f64 = (0..6).map(|k| -p[k] * (p[k] / py[k % 3]).ln()).sum();
    assert!((conditional_entropy(&rho, &dims, 1).unwrap() - oracle).abs() < 1e-12);
    assert!(oracle >= 0.0);
    assert_eq!(squashed_lb(&rho, &dims).unwrap(), 0.0);
}

#[test]
fn cmi_cases() {
    let mut rng = trial_rng(9, 0);
    let parts: Vec<CMatrix> = [2, 2, 2].iter().map(|&d| random_density(d, d, &mut rng).unwrap().matrix().clone()).collect();
    let prod = Density::from_matrix(kron(&kron(&parts[0], &parts[1]), &parts[2])).unwrap();
    let dims = FactorDims::new(vec![2, 2, 2]).unwrap();
    assert!(cmi(&prod, &dims).unwrap().abs() < 1e-10);
    let (rho, dims) = ssa_saturating_state(2, 2, &[(1, 2), (2, 1)], &mut rng).unwrap();
    assert_eq!(dims.as_slice(), &[2, 2, 4]);
    assert!(cmi(&rho, &dims).unwrap().abs() < 1e-9);
    let generic = random_tripartite_from_pure([2, 2, 2], 2, &mut rng).unwrap();
    let dims = FactorDims::new(vec![2, 2, 2]).unwrap();
    assert!(cmi(&generic, &dims).unwrap() > 1e-6);
}

#[test]
fn skew_information_cases() {
    let mut rng = trial_rng(10, 0);
    let h = random_hermitian(3, &mut rng);
    assert!(skew_information(Density::maximally_mixed(3).psd(), &h).unwrap().abs() < 1e-12);

    let rho = random_density(3, 3, &mut rng).unwrap();
    let r = rho.psd().sqrt();
    let comm = r.matrix() * h.matrix() - h.matrix() * r.matrix();
    let oracle = -0.5 * (&comm * &comm).trace().re;
    let v = skew_information(rho.psd(), &h).unwrap();
    assert!((v - oracle).abs() < 1e-12);
    assert!(v >= -1e-10);

    // Block form: ρ = diag(Y, X), H = [[0, K], [K*, 0]].
    let y = random_pd(2, &mut rng);
    let x = random_pd(2, &mut rng);
    let k = complex_gaussian(2, 2, &mut rng);
    let mut big = CMatrix::zeros(4, 4);
    big.view_mut((0, 0), (2, 2)).copy_from(y.matrix());
    big.view_mut((2, 2), (2, 2)).copy_from(x.matrix());
    let mut hb = CMatrix::zeros(4, 4);
    hb.view_mut((0, 2), (2, 2)).copy_from(&k);
    hb.view_mut((2, 0), (2, 2)).copy_from(&k.adjoint());
    let rb = Psd::from_matrix(big).unwrap().sqrt();
    let lhs = (&hb * rb.matrix() * &hb * rb.matrix()).trace();
    let rhs = (k.adjoint() * y.sqrt().matrix() * &k * x.sqrt().matrix()).trace() * 2.0;
    assert!((lhs - rhs).norm() < 1e-10);
}

#[test]
fn purification_marginals() {
    let mut rng = trial_rng(11, 0);
    let rho = random_density(3, 2, &mut rng).unwrap();
    let psi = purify(&rho);
    assert!((psi.norm() - 1.0).abs() < 1e-12);
    let full = &psi * psi.adjoint();
    let dims = FactorDims::new(vec![3, 3]).unwrap();
    assert!(max_abs_diff(&partial_trace(&full, &dims, &[0]).unwrap(), rho.matrix()) < 1e-10);
    assert!(max_abs_diff(&partial_trace(&full, &dims, &[1]).unwrap(), rho.matrix()) < 1e-10);

    let mixed = purify(&Density::maximally_mixed(2));
    let s = 1.0 / 2f64.sqrt();
    let oracle = [s, 0.0, 0.0, s];
    assert!(mixed.iter().zip(oracle).all(|(a, b)| (a - Complex::new(b, 0.0)).norm() < 1e-12));

    let u = haar_unitary(3, &mut rng);
    let v = u.column(0).into_owned();
    let pure = Density::from_matrix(&v * v.adjoint()).unwrap();
    let pp = purify(&pure);
    let overlap = v.kronecker(&v).dotc(&pp).norm();
    assert!((overlap - 1.0).abs() < 1e-10);
}

#[test]
fn classical_kl_support() {
    assert_eq!(classical_kl(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
    assert_eq!(classical_kl(&[0.3, 0.7], &[1.0, 0.0]).unwrap(), f64::INFINITY);
    assert!(classical_kl(&[1.0], &[0.5, 0.5]).is_err());
}

#[test]
fn entropy_is_additive_on_tensor_products() {
    let mut rng = trial_rng(12, 0);
    let a = random_density(2, 2, &mut rng).unwrap();
    let b = random_density(3, 2, &mut rng).unwrap();
    let ab = Psd::from_matrix(kron(a.matrix(), b.matrix())).unwrap();
    assert!((von_neumann(&ab) - von_neumann(a.psd()) - von_neumann(b.psd())).abs() < 1e-10);
}
