use std::f64::consts::PI;

use super::KrausChannel;
use crate::linalg::{identity, kron, CMatrix, Complex};
use crate::{Error, Result};

/// `Ψ_m(X) = I_m ⊗ X`: `m` diagonal copies of `X`.
pub fn block_embed(x: &CMatrix, m: usize) -> CMatrix {
    kron(&identity(m), x)
}

/// `Ψ_m` as a channel `M_n → M_{mn}` with Kraus operators `e_j^T ⊗ I_n`.
pub fn block_embed_channel(n: usize, m: usize) -> Result<KrausChannel> {
    let ops = (0..m)
        .map(|j| {
            let mut e = CMatrix::zeros(1, m);
            e[(0, j)] = Complex::new(1.0, 0.0);
            kron(&e, &identity(n))
        })
        .collect();
    KrausChannel::new(n, m * n, ops)
}

/// `Ξ_{q,p}(Y)`: the upper-left `p × p` block of `Y`.
pub fn corner(y: &CMatrix, p: usize) -> Result<CMatrix> {
    let q = y.nrows();
    if y.ncols() != q {
        return Err(Error::Shape("corner expects a square matrix".into()));
    }
    if p > q {
        return Err(Error::Shape(format!("corner size {p} exceeds matrix size {q}")));
    }
    Ok(y.view((0, 0), (p, p)).into_owned())
}

/// `Ξ†_{q,p}(X)`: `X` in the upper-left corner of a `q × q` zero matrix.
pub fn corner_embed(x: &CMatrix, q: usize) -> Result<CMatrix> {
    let p = x.nrows();
    if x.ncols() != p {
        return Err(Error::Shape("corner_embed expects a square matrix".into()));
    }
    if p > q {
        return Err(Error::Shape(format!("cannot embed size {p} into size {q}")));
    }
    let mut out = CMatrix::zeros(q, q);
    out.view_mut((0, 0), (p, p)).copy_from(x);
    Ok(out)
}

/// `Ξ_{q,p}` as a channel `M_q → M_p` with the single Kraus operator `[I_p; 0]`.
pub fn corner_channel(q: usize, p: usize) -> Result<KrausChannel> {
    if p > q {
        return Err(Error::Shape(format!("corner size {p} exceeds matrix size {q}")));
    }
    let mut w = CMatrix::zeros(q, p);
    w.view_mut((0, 0), (p, p)).copy_from(&identity(p));
    KrausChannel::new(q, p, vec![w])
}

/// The `m²` unitaries `C_l D_k` on `C^m ⊗ C^n`: `D_k = Σ_j e^{2πijk/m} P_j` with `P_j`
/// the `j`-th block projector, and `C_l` the cyclic shift of blocks by `l`.
/// Averaging `U* Y U` over the family gives `(1/m) Ψ_m(Ψ_m†(Y))`.
pub fn uhlmann_unitaries(m: usize, n: usize) -> Result<Vec<CMatrix>> {
    if m == 0 || n == 0 {
        return Err(Error::Parameter("uhlmann_unitaries needs m, n >= 1".into()));
    }
    let id_n = identity(n);
    let mut out = Vec::with_capacity(m * m);
    for l in 0..m {
        let mut shift = CMatrix::zeros(m, m);
        for j in 0..m {
            shift[((j + l) % m, j)] = Complex::new(1.0, 0.0);
        }
        for k in 0..m {
            let mut phases = CMatrix::zeros(m, m);
            for j in 0..m {
                let theta = 2.0 * PI * ((j * k) % m) as f64 / m as f64;
                phases[(j, j)] = Complex::from_polar(1.0, theta);
            }
            out.push(kron(&(&shift * phases), &id_n));
        }
    }
    Ok(out)
}
