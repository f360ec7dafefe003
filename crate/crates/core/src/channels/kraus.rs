use serde::{Deserialize, Serialize};

use super::{LinearMatrixMap, MapTag};
use crate::linalg::interchange::MatrixJson;
use crate::linalg::{CMatrix, Complex};
use crate::{Error, Result};

const FLAG_TOL: f64 = 1e-10;

/// Completely positive map `X ↦ Σ V_j* X V_j` with `V_j` of shape `in_dim × out_dim`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<CMatrix>,
    unital: bool,
    trace_preserving: bool,
}

fn identity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (m[(i, j)] - if i == j { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) }).norm())
        .fold(0.0, f64::max)
}

impl KrausChannel {
    pub fn new(in_dim: usize, out_dim: usize, kraus: Vec<CMatrix>) -> Result<Self> {
        if in_dim == 0 || out_dim == 0 || kraus.is_empty() {
            return Err(Error::Shape("a channel needs positive dims and at least one Kraus operator".into()));
        }
        if let Some(v) = kraus.iter().find(|v| v.nrows() != in_dim || v.ncols() != out_dim) {
            return Err(Error::Shape(format!("Kraus operator is {}x{}, expected {in_dim}x{out_dim}", v.nrows(), v.ncols())));
        }
        let mut vv = CMatrix::zeros(out_dim, out_dim);
        let mut ww = CMatrix::zeros(in_dim, in_dim);
        for v in &kraus {
            vv += v.adjoint() * v;
            ww += v * v.adjoint();
        }
        Ok(Self {
            in_dim,
            out_dim,
            kraus,
            unital: identity_defect(&vv) <= FLAG_TOL,
            trace_preserving: identity_defect(&ww) <= FLAG_TOL,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus_ops(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// `Σ V_j* V_j = I` within `1e-10`.
    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// `Σ V_j V_j* = I` within `1e-10`.
    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    /// `Φ(X) = Σ V_j* X V_j`.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.nrows() != self.in_dim || x.ncols() != self.in_dim {
            return Err(Error::Shape(format!("input must be {0}x{0}", self.in_dim)));
        }
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for v in &self.kraus {
            out += v.adjoint() * x * v;
        }
        Ok(out)
    }

    /// `Φ†(Y) = Σ V_j Y V_j*`.
    pub fn adjoint_apply(&self, y: &CMatrix) -> Result<CMatrix> {
        if y.nrows() != self.out_dim || y.ncols() != self.out_dim {
            return Err(Error::Shape(format!("input must be {0}x{0}", self.out_dim)));
        }
        let mut out = CMatrix::zeros(self.in_dim, self.in_dim);
        for v in &self.kraus {
            out += v * y * v.adjoint();
        }
        Ok(out)
    }

    /// The adjoint channel, with Kraus operators `V_j*`.
    pub fn adjoint(&self) -> KrausChannel {
        KrausChannel {
            in_dim: self.out_dim,
            out_dim: self.in_dim,
            kraus: self.kraus.iter().map(|v| v.adjoint()).collect(),
            unital: self.trace_preserving,
            trace_preserving: self.unital,
        }
    }

    /// Vectorized action `Σ V^T ⊗ V*` under column stacking.
    pub fn to_map(&self) -> LinearMatrixMap {
        let mut action = CMatrix::zeros(self.out_dim * self.out_dim, self.in_dim * self.in_dim);
        for v in &self.kraus {
            action += v.transpose().kronecker(&v.adjoint());
        }
        LinearMatrixMap::from_action(self.in_dim, self.out_dim, action, MapTag::KrausBacked)
            .expect("Kraus action has consistent shape")
    }

    /// Unitary conjugation `X ↦ U* X U`.
    pub fn unitary(u: CMatrix) -> Result<Self> {
        let n = u.nrows();
        Self::new(n, n, vec![u])
    }
}

/// `{"in_dim", "out_dim", "kraus": [matrix, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelJson {
    pub in_dim: usize,
    pub out_dim: usize,
    pub kraus: Vec<MatrixJson>,
}

impl From<&KrausChannel> for ChannelJson {
    fn from(ch: &KrausChannel) -> Self {
        ChannelJson {
            in_dim: ch.in_dim,
            out_dim: ch.out_dim,
            kraus: ch.kraus.iter().cloned().map(MatrixJson).collect(),
        }
    }
}

impl TryFrom<ChannelJson> for KrausChannel {
    type Error = Error;
    fn try_from(j: ChannelJson) -> Result<Self> {
        KrausChannel::new(j.in_dim, j.out_dim, j.kraus.into_iter().map(|m| m.0).collect())
    }
}
