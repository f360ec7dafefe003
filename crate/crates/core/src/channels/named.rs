use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{KrausChannel, LinearMatrixMap, MapTag};
use crate::linalg::random::{haar_unitary, random_probabilities};
use crate::linalg::{identity, CMatrix, Complex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedMap {
    FullDepolarizer,
    Transpose,
    /// `X ↦ X^T/2 + tr[X] I/4` on `M_2`: a Schwarz map that is not 2-positive.
    ChoiSchwarz,
    Identity,
}

impl NamedMap {
    pub const ALL: [NamedMap; 4] = [NamedMap::FullDepolarizer, NamedMap::Transpose, NamedMap::ChoiSchwarz, NamedMap::Identity];

    pub fn name(self) -> &'static str {
        match self {
            NamedMap::FullDepolarizer => "full_depolarizer",
            NamedMap::Transpose => "transpose",
            NamedMap::ChoiSchwarz => "choi_schwarz",
            NamedMap::Identity => "identity",
        }
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NamedMap::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unknown(format!("map '{s}'")))
    }
}

fn trace(x: &CMatrix) -> Complex {
    x.trace()
}

pub fn named_map(name: NamedMap, n: usize) -> Result<LinearMatrixMap> {
    if n == 0 {
        return Err(Error::Parameter("dimension must be positive".into()));
    }
    match name {
        NamedMap::FullDepolarizer => full_depolarizer(n).map(|ch| ch.to_map()),
        NamedMap::Identity => KrausChannel::new(n, n, vec![identity(n)]).map(|ch| ch.to_map()),
        NamedMap::Transpose => LinearMatrixMap::from_fn(n, n, MapTag::TransposeComponent, |x| x.transpose()),
        NamedMap::ChoiSchwarz => {
            if n != 2 {
                return Err(Error::Parameter("choi_schwarz is defined on M_2".into()));
            }
            LinearMatrixMap::from_fn(2, 2, MapTag::TransposeComponent, |x| {
                x.transpose().map(|z| z * 0.5) + identity(2) * (trace(x) * 0.25)
            })
        }
    }
}

/// `A ↦ tr[A] I/n` with Kraus operators `e_a e_b^T/√n`.
pub fn full_depolarizer(n: usize) -> Result<KrausChannel> {
    let s = Complex::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut ops = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut v = CMatrix::zeros(n, n);
            v[(a, b)] = s;
            ops.push(v);
        }
    }
    KrausChannel::new(n, n, ops)
}

/// `Φ_ε = (1−ε)Φ + ε tr[·] I/n_out` for trace-preserving `Φ`.
pub fn smooth(phi: &KrausChannel, eps: f64) -> Result<KrausChannel> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!("smoothing parameter must lie in (0, 1), got {eps}")));
    }
    if !phi.is_trace_preserving() {
        return Err(Error::Precondition("smoothing needs a trace-preserving channel".into()));
    }
    let (n, m) = (phi.in_dim(), phi.out_dim());
    let a = Complex::new((1.0 - eps).sqrt(), 0.0);
    let b = Complex::new((eps / m as f64).sqrt(), 0.0);
    let mut ops: Vec<CMatrix> = phi.kraus_ops().iter().map(|v| v * a).collect();
    for i in 0..n {
        for j in 0..m {
            let mut w = CMatrix::zeros(n, m);
            w[(i, j)] = b;
            ops.push(w);
        }
    }
    KrausChannel::new(n, m, ops)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    Cptp,
    CpUnital,
    CpUnitalTp,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Cptp => "cptp",
            ChannelKind::CpUnital => "cp_unital",
            ChannelKind::CpUnitalTp => "cp_unital_tp",
        }
    }
}

impl FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [ChannelKind::Cptp, ChannelKind::CpUnital, ChannelKind::CpUnitalTp]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Unknown(format!("channel kind '{s}'")))
    }
}

/// Random channel of the requested class.
///
/// `Cptp` slices the first `in_dim` rows of a Haar unitary into column blocks,
/// `CpUnital` slices the first `out_dim` columns into row blocks, and
/// `CpUnitalTp` mixes `count` Haar unitaries with random weights.
pub fn sample_channel<R: Rng + ?Sized>(kind: ChannelKind, in_dim: usize, out_dim: usize, count: usize, rng: &mut R) -> Result<KrausChannel> {
    if in_dim == 0 || out_dim == 0 || count == 0 {
        return Err(Error::Parameter("dims and Kraus count must be positive".into()));
    }
    let ops = match kind {
        ChannelKind::Cptp => {
            if count * out_dim < in_dim {
                return Err(Error::Parameter(format!("cptp needs count*out_dim >= in_dim ({count}*{out_dim} < {in_dim})")));
            }
            let u = haar_unitary(count * out_dim, rng);
            (0..count).map(|j| u.view((0, j * out_dim), (in_dim, out_dim)).into_owned()).collect()
        }
        ChannelKind::CpUnital => {
            if count * in_dim < out_dim {
                return Err(Error::Parameter(format!("cp_unital needs count*in_dim >= out_dim ({count}*{in_dim} < {out_dim})")));
            }
            let u = haar_unitary(count * in_dim, rng);
            (0..count).map(|j| u.view((j * in_dim, 0), (in_dim, out_dim)).into_owned()).collect()
        }
        ChannelKind::CpUnitalTp => {
            if in_dim != out_dim {
                return Err(Error::Parameter("cp_unital_tp needs in_dim == out_dim".into()));
            }
            let p = random_probabilities(count, rng);
            p.iter()
                .map(|&w| haar_unitary(in_dim, rng) * Complex::new(w.sqrt(), 0.0))
                .collect()
        }
    };
    KrausChannel::new(in_dim, out_dim, ops)
}
