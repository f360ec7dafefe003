use rand::Rng;

use crate::linalg::random::{random_density, random_probabilities, random_unit_vector};
use crate::linalg::{kron, partial_trace, CMatrix, Complex, Density, FactorDims};
use crate::{Error, Result};

/// Marginal on the first three factors of a random pure state on `d1 d2 d3 d4`.
/// Small `d4` gives rank-deficient states.
pub fn random_tripartite_from_pure<R: Rng + ?Sized>(dims: [usize; 3], d4: usize, rng: &mut R) -> Result<Density> {
    let total: usize = dims.iter().product::<usize>() * d4;
    let psi = random_unit_vector(total, rng);
    let full = &psi * psi.adjoint();
    let fd = FactorDims::new(vec![dims[0], dims[1], dims[2], d4])?;
    Density::from_matrix(partial_trace(&full, &fd, &[3])?)
}

/// Random convex combination of `terms` product states; separable.
pub fn random_product_mixture<R: Rng + ?Sized>(dims: &[usize], terms: usize, rng: &mut R) -> Result<Density> {
    if dims.is_empty() || terms == 0 {
        return Err(Error::Parameter("need at least one factor and one term".into()));
    }
    let p = random_probabilities(terms, rng);
    let n: usize = dims.iter().product();
    let mut acc = CMatrix::zeros(n, n);
    for w in p {
        let mut prod = CMatrix::identity(1, 1);
        for &d in dims {
            let rank = rng.random_range(1..=d);
            prod = kron(&prod, random_density(d, rank, rng)?.matrix());
        }
        acc += prod * Complex::new(w, 0.0);
    }
    Density::from_matrix(acc)
}

/// Diagonal state from a joint distribution listed in row-major order over `dims`.
pub fn classical_state(p: &[f64]) -> Result<Density> {
    Density::from_matrix(crate::linalg::diag(p))
}

/// State of the form `⊕_j ρ^j_{1,3L} ⊗ ρ^j_{3R,2}` on `H_1 ⊗ H_2 ⊗ H_3` with
/// `H_3 = ⊕_j H_{3L}^j ⊗ H_{3R}^j`; `blocks` lists `(dim 3L, dim 3R)` per summand.
/// These saturate strong subadditivity.
pub fn ssa_saturating_state<R: Rng + ?Sized>(
    d1: usize,
    d2: usize,
    blocks: &[(usize, usize)],
    rng: &mut R,
) -> Result<(Density, FactorDims)> {
    if d1 == 0 || d2 == 0 || blocks.is_empty() || blocks.iter().any(|&(a, b)| a == 0 || b == 0) {
        return Err(Error::Parameter("block dimensions must be positive".into()));
    }
    let d3: usize = blocks.iter().map(|&(a, b)| a * b).sum();
    let n = d1 * d2 * d3;
    let weights = random_probabilities(blocks.len(), rng);
    let mut rho = CMatrix::zeros(n, n);
    let mut offset = 0;
    for (&(a, b), w) in blocks.iter().zip(weights) {
        let left = random_density(d1 * a, d1 * a, rng)?;
        let right = random_density(b * d2, b * d2, rng)?;
        let (sl, sr) = (left.matrix(), right.matrix());
        let idx = |i1: usize, i2: usize, l: usize, r: usize| i1 * d2 * d3 + i2 * d3 + offset + l * b + r;
        for i1 in 0..d1 {
            for l in 0..a {
                for j1 in 0..d1 {
                    for m in 0..a {
                        let s = sl[(i1 * a + l, j1 * a + m)] * w;
                        for r in 0..b {
                            for i2 in 0..d2 {
                                for q in 0..b {
                                    for j2 in 0..d2 {
                                        rho[(idx(i1, i2, l, r), idx(j1, j2, m, q))] += s * sr[(r * d2 + i2, q * d2 + j2)];
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        offset += a * b;
    }
    Ok((Density::from_matrix(rho)?, FactorDims::new(vec![d1, d2, d3])?))
}
