use std::sync::OnceLock;

use crate::quadrature::gauss_legendre;
use crate::{Error, Result};

/// Which integral form an [`IntegralRep`] instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// `h(x) = β + γx + ∫ (1+λ)x/(λ+x) dμ(λ)`, operator monotone increasing.
    Lowner,
    /// `f(x) = β + ∫ (λ+1)/(λ+x) dν(λ)`, operator monotone decreasing.
    Hansen,
    /// `f(x) = α + βx + γx² + ∫ (λ+1)x²/(λ+x) dν(λ)`, operator convex.
    Convex,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lambda {
    Finite(f64),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub lambda: Lambda,
    pub weight: f64,
}

/// Discretized integral representation.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralRep {
    pub kind: RepKind,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub atoms: Vec<Atom>,
}

/// Gauss–Legendre nodes on `log λ`.
pub const REP_NODES: usize = 200;
pub const REP_LAMBDA_LO: f64 = 1e-12;
pub const REP_LAMBDA_HI: f64 = 1e12;

fn rep_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(REP_NODES))
}

/// Atoms approximating `∫_lo^hi g(λ) dλ` with nodes uniform in `log λ`.
pub(crate) fn discretize(density: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Vec<Atom> {
    let (x, w) = rep_rule();
    let (a, b) = (lo.ln(), hi.ln());
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    x.iter()
        .zip(w)
        .map(|(xi, wi)| {
            let lambda = (mid + half * xi).exp();
            Atom { lambda: Lambda::Finite(lambda), weight: wi * half * density(lambda) * lambda }
        })
        .collect()
}

impl IntegralRep {
    pub fn affine_lowner(beta: f64, gamma: f64) -> Self {
        Self { kind: RepKind::Lowner, alpha: 0.0, beta, gamma, atoms: Vec::new() }
    }

    pub fn new(kind: RepKind, alpha: f64, beta: f64, gamma: f64, atoms: Vec<Atom>) -> Result<Self> {
        if atoms.iter().any(|a| !(a.weight >= 0.0)) {
            return Err(Error::Parameter("representation weights must be nonnegative".into()));
        }
        if kind == RepKind::Lowner && gamma < 0.0 {
            return Err(Error::Parameter("Löwner representation needs gamma >= 0".into()));
        }
        if kind == RepKind::Hansen && (alpha != 0.0 || gamma != 0.0) {
            return Err(Error::Parameter("Hansen representation has only beta and a measure".into()));
        }
        Ok(Self { kind, alpha, beta, gamma, atoms })
    }

    fn kernel(&self, x: f64, lambda: Lambda) -> f64 {
        match (self.kind, lambda) {
            (RepKind::Lowner, Lambda::Finite(l)) => (1.0 + l) * x / (l + x),
            (RepKind::Lowner, Lambda::Infinity) => x,
            (RepKind::Hansen, Lambda::Finite(l)) => (l + 1.0) / (l + x),
            (RepKind::Hansen, Lambda::Infinity) => 1.0,
            (RepKind::Convex, Lambda::Finite(l)) => (l + 1.0) * x * x / (l + x),
            (RepKind::Convex, Lambda::Infinity) => x * x,
        }
    }

    /// Evaluates the representation at `x > 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Parameter(format!("representation is evaluated on x > 0, got {x}")));
        }
        let measure: f64 = self.atoms.iter().map(|a| a.weight * self.kernel(x, a.lambda)).sum();
        let base = match self.kind {
            RepKind::Lowner => self.beta + self.gamma * x,
            RepKind::Hansen => self.beta,
            RepKind::Convex => self.alpha + self.beta * x + self.gamma * x * x,
        };
        Ok(base + measure)
    }

    /// Scalar perspective `y · h(x/y)` assembled term by term from the representation.
    pub fn perspective(&self, x: f64, y: f64) -> Result<f64> {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::Parameter(format!("perspective needs x, y > 0, got ({x}, {y})")));
        }
        let term = |lambda: Lambda| match (self.kind, lambda) {
            (RepKind::Lowner, Lambda::Finite(l)) => (1.0 + l) * x * y / (l * y + x),
            (RepKind::Lowner, Lambda::Infinity) => x,
            (RepKind::Hansen, Lambda::Finite(l)) => (l + 1.0) * y * y / (l * y + x),
            (RepKind::Hansen, Lambda::Infinity) => y,
            (RepKind::Convex, Lambda::Finite(l)) => (1.0 + l) * x * x / (x + l * y),
            (RepKind::Convex, Lambda::Infinity) => x * x / y,
        };
        let measure: f64 = self.atoms.iter().map(|a| a.weight * term(a.lambda)).sum();
        let base = match self.kind {
            RepKind::Lowner => self.beta * y + self.gamma * x,
            RepKind::Hansen => self.beta * y,
            RepKind::Convex => self.alpha * y + self.beta * x + self.gamma * x * x / y,
        };
        Ok(base + measure)
    }
}

pub fn eval_rep(rep: &IntegralRep, x: f64) -> Result<f64> {
    rep.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_lowner_is_exact() {
        let rep = IntegralRep::affine_lowner(2.0, 3.0);
        assert_eq!(rep.eval(0.5).unwrap(), 3.5);
    }

    #[test]
    fn convex_gamma_only_is_square() {
        let rep = IntegralRep::new(RepKind::Convex, 0.0, 0.0, 1.0, vec![]).unwrap();
        for x in [0.1, 1.0, 7.0] {
            assert_eq!(rep.eval(x).unwrap(), x * x);
            assert!((rep.perspective(x, 2.0).unwrap() - x * x / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_nonpositive_argument_and_negative_weights() {
        let rep = IntegralRep::affine_lowner(0.0, 1.0);
        assert!(rep.eval(0.0).is_err());
        let bad = vec![Atom { lambda: Lambda::Finite(1.0), weight: -1.0 }];
        assert!(IntegralRep::new(RepKind::Lowner, 0.0, 0.0, 0.0, bad).is_err());
    }

    #[test]
    fn discretization_integrates_a_known_density() {
        // ∫ dλ/(1+λ)^2 over [lo, hi] is close to 1.
        let atoms = discretize(|l| 1.0 / ((1.0 + l) * (1.0 + l)), REP_LAMBDA_LO, REP_LAMBDA_HI);
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }
}
