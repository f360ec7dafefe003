use super::CMatrix;
use crate::{Error, Result};

/// Ordered tensor factor dimensions; the first factor is the slowest index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDims(Vec<usize>);

impl FactorDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Shape(format!("factor dims must be positive, got {dims:?}")));
        }
        Ok(Self(dims))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Product of the dimensions of the listed factors.
    pub fn sub_total(&self, factors: &[usize]) -> usize {
        factors.iter().map(|&k| self.0[k]).product()
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.total() == n {
            Ok(())
        } else {
            Err(Error::Shape(format!("dims {:?} do not multiply to {n}", self.0)))
        }
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            d[k] = idx % self.0[k];
            idx /= self.0[k];
        }
        d
    }
}

impl TryFrom<&[usize]> for FactorDims {
    type Error = Error;
    fn try_from(d: &[usize]) -> Result<Self> {
        Self::new(d.to_vec())
    }
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

struct Split {
    kept: Vec<usize>,
    traced: Vec<usize>,
}

fn split(dims: &FactorDims, traced_out: &[usize]) -> Result<Split> {
    if let Some(&k) = traced_out.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::Shape(format!("factor {k} out of range for {} factors", dims.len())));
    }
    let kept = (0..dims.len()).filter(|k| !traced_out.contains(k)).collect();
    let mut traced = traced_out.to_vec();
    traced.sort_unstable();
    traced.dedup();
    Ok(Split { kept, traced })
}

fn compose(dims: &FactorDims, digits: &[usize], factors: &[usize]) -> usize {
    factors.iter().fold(0, |acc, &k| acc * dims.0[k] + digits[k])
}

/// Trace over the listed factors; the kept factors stay in their original order.
pub fn partial_trace(a: &CMatrix, dims: &FactorDims, traced_out: &[usize]) -> Result<CMatrix> {
    let n = a.nrows();
    if !a.is_square() {
        return Err(Error::Shape("partial trace needs a square matrix".into()));
    }
    dims.check(n)?;
    let s = split(dims, traced_out)?;
    let m = dims.sub_total(&s.kept);
    let mut out = CMatrix::zeros(m, m);
    let digits: Vec<Vec<usize>> = (0..n).map(|i| dims.digits(i)).collect();
    for c in 0..n {
        let dc = &digits[c];
        let oc = compose(dims, dc, &s.kept);
        for r in 0..n {
            let dr = &digits[r];
            if s.traced.iter().all(|&k| dr[k] == dc[k]) {
                out[(compose(dims, dr, &s.kept), oc)] += a[(r, c)];
            }
        }
    }
    Ok(out)
}

/// Adjoint of [`partial_trace`]: places `x` on the kept factors and identities on the traced ones.
pub fn embed_identity(x: &CMatrix, dims: &FactorDims, traced_out: &[usize]) -> Result<CMatrix> {
    let s = split(dims, traced_out)?;
    let m = dims.sub_total(&s.kept);
    if x.nrows() != m || x.ncols() != m {
        return Err(Error::Shape(format!("embedded matrix must be {m}x{m}")));
    }
    let n = dims.total();
    let digits: Vec<Vec<usize>> = (0..n).map(|i| dims.digits(i)).collect();
    Ok(CMatrix::from_fn(n, n, |r, c| {
        let (dr, dc) = (&digits[r], &digits[c]);
        if s.traced.iter().all(|&k| dr[k] == dc[k]) {
            x[(compose(dims, dr, &s.kept), compose(dims, dc, &s.kept))]
        } else {
            Default::default()
        }
    }))
}
