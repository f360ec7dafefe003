//! Catalog of operator monotone and operator convex functions with discretized
//! integral representations, matrix perspectives and numeric property testers.

mod probe;
mod rep;

use std::f64::consts::PI;
use std::fmt;

pub use probe::{numeric_convexity_test, numeric_monotone_test, ConvexityOutcome, MonotoneOutcome};
pub use rep::{eval_rep, Atom, IntegralRep, Lambda, RepKind, REP_LAMBDA_HI, REP_LAMBDA_LO, REP_NODES};

use crate::linalg::{Domain, Hermitian, Psd};
use crate::{Error, Result};

/// Shift used when `f'(0+) = -∞` rules out a direct representation.
pub const REP_SHIFT: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FunctionId {
    /// `x^t` for `t ∈ [0, 2]`.
    Power(f64),
    NegLog,
    XLogX,
    Inverse,
    Identity,
    Square,
    /// `(x - 1)/log x = ∫_0^1 x^t dt`.
    LogMean,
    /// `x log x - x + 1`.
    Klein,
}

impl FunctionId {
    pub fn name(&self) -> &'static str {
        match self {
            FunctionId::Power(_) => "power",
            FunctionId::NegLog => "neg_log",
            FunctionId::XLogX => "x_log_x",
            FunctionId::Inverse => "inverse",
            FunctionId::Identity => "identity",
            FunctionId::Square => "square",
            FunctionId::LogMean => "log_mean",
            FunctionId::Klein => "klein",
        }
    }

    /// Parses a catalog name; `power` needs its exponent.
    pub fn parse(name: &str, param: Option<f64>) -> Result<Self> {
        Ok(match name {
            "power" => FunctionId::Power(param.ok_or_else(|| Error::Parameter("power needs an exponent".into()))?),
            "neg_log" => FunctionId::NegLog,
            "x_log_x" => FunctionId::XLogX,
            "inverse" => FunctionId::Inverse,
            "identity" => FunctionId::Identity,
            "square" => FunctionId::Square,
            "log_mean" => FunctionId::LogMean,
            "klein" => FunctionId::Klein,
            other => return Err(Error::Unknown(format!("operator function {other}"))),
        })
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionId::Power(t) => write!(f, "power({t})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Claimed operator properties. These are claims for the harness to test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub increasing: bool,
    pub decreasing: bool,
    pub convex: bool,
    pub concave: bool,
}

impl Flags {
    const CONSTANT: Flags = Flags { increasing: true, decreasing: true, convex: true, concave: true };
    const AFFINE_UP: Flags = Flags { increasing: true, decreasing: false, convex: true, concave: true };
    const MONOTONE: Flags = Flags { increasing: true, decreasing: false, convex: false, concave: true };
    const CONVEX: Flags = Flags { increasing: false, decreasing: false, convex: true, concave: false };
    const DECREASING_CONVEX: Flags = Flags { increasing: false, decreasing: true, convex: true, concave: false };
}

#[derive(Clone, Debug)]
pub struct OperatorFunction {
    id: FunctionId,
    flags: Flags,
    representation: Option<IntegralRep>,
    /// The representation reproduces `sign · f(x + shift)`.
    shift: f64,
    sign: f64,
}

/// Builds a catalog entry.
pub fn catalog(id: FunctionId) -> Result<OperatorFunction> {
    let (flags, rep, shift, sign) = match id {
        FunctionId::Power(t) => {
            if !(0.0..=2.0).contains(&t) {
                return Err(Error::Parameter(format!("power exponent {t} outside [0, 2]")));
            }
            let flags = if t == 0.0 {
                Flags::CONSTANT
            } else if t == 1.0 {
                Flags::AFFINE_UP
            } else if t < 1.0 {
                Flags::MONOTONE
            } else {
                Flags::CONVEX
            };
            (flags, power_rep(t), 0.0, 1.0)
        }
        FunctionId::NegLog => (Flags::DECREASING_CONVEX, log_shifted_rep(), REP_SHIFT, -1.0),
        FunctionId::XLogX => (Flags::CONVEX, xlogx_shifted_rep(0.0), REP_SHIFT, 1.0),
        FunctionId::Klein => (Flags::CONVEX, xlogx_shifted_rep(1.0), REP_SHIFT, 1.0),
        FunctionId::Inverse => {
            let atoms = vec![Atom { lambda: Lambda::Finite(0.0), weight: 1.0 }];
            (Flags::DECREASING_CONVEX, IntegralRep { kind: RepKind::Hansen, alpha: 0.0, beta: 0.0, gamma: 0.0, atoms }, 0.0, 1.0)
        }
        FunctionId::Identity => (Flags::AFFINE_UP, IntegralRep::affine_lowner(0.0, 1.0), 0.0, 1.0),
        FunctionId::Square => (Flags::CONVEX, convex_quadratic(), 0.0, 1.0),
        FunctionId::LogMean => (Flags::MONOTONE, log_mean_rep(), 0.0, 1.0),
    };
    Ok(OperatorFunction { id, flags, representation: Some(rep), shift, sign })
}

fn convex_quadratic() -> IntegralRep {
    IntegralRep { kind: RepKind::Convex, alpha: 0.0, beta: 0.0, gamma: 1.0, atoms: Vec::new() }
}

fn tail_atoms(lower: f64, upper: f64) -> [Atom; 2] {
    [
        Atom { lambda: Lambda::Finite(0.0), weight: lower },
        Atom { lambda: Lambda::Infinity, weight: upper },
    ]
}

/// `x^s = (sin πs/π) ∫ λ^{s-1} x/(λ+x) dλ` for `s ∈ (0,1)`; the measure for
/// the Löwner kernel is `(sin πs/π) λ^{s-1}/(1+λ) dλ`, and multiplying by `x`
/// gives the convex kernel for `x^{1+s}`.
fn power_rep(t: f64) -> IntegralRep {
    if t == 0.0 {
        return IntegralRep::affine_lowner(1.0, 0.0);
    }
    if t == 1.0 {
        return IntegralRep::affine_lowner(0.0, 1.0);
    }
    if t == 2.0 {
        return convex_quadratic();
    }
    let (kind, s) = if t < 1.0 { (RepKind::Lowner, t) } else { (RepKind::Convex, t - 1.0) };
    let c = (PI * s).sin() / PI;
    let mut atoms = rep::discretize(|l| c * l.powf(s - 1.0) / (1.0 + l), REP_LAMBDA_LO, REP_LAMBDA_HI);
    atoms.extend(tail_atoms(c * REP_LAMBDA_LO.powf(s) / s, c * REP_LAMBDA_HI.powf(s - 1.0) / (1.0 - s)));
    IntegralRep { kind, alpha: 0.0, beta: 0.0, gamma: 0.0, atoms }
}

/// Averaging the power measures over `t ∈ [0,1]` gives `dμ = dλ / (λ (log²λ + π²))`.
fn log_mean_rep() -> IntegralRep {
    let mut atoms = rep::discretize(|l| 1.0 / (l * (l.ln().powi(2) + PI * PI)), REP_LAMBDA_LO, REP_LAMBDA_HI);
    let lower = ((REP_LAMBDA_LO.ln() / PI).atan() + PI / 2.0) / PI;
    let upper = (PI / 2.0 - (REP_LAMBDA_HI.ln() / PI).atan()) / PI;
    atoms.extend(tail_atoms(lower, upper));
    IntegralRep { kind: RepKind::Lowner, alpha: 0.0, beta: 0.0, gamma: 0.0, atoms }
}

/// `log(x + ε) = log ε + ∫_ε^∞ (1+s)x/(s+x) · ds/(s(1+s))`.
fn log_shifted_rep() -> IntegralRep {
    let eps = REP_SHIFT;
    let mut atoms = rep::discretize(|s| 1.0 / (s * (1.0 + s)), eps, REP_LAMBDA_HI);
    atoms.push(Atom { lambda: Lambda::Infinity, weight: (1.0 / REP_LAMBDA_HI).ln_1p() });
    IntegralRep { kind: RepKind::Lowner, alpha: 0.0, beta: eps.ln(), gamma: 0.0, atoms }
}

/// `(x+ε) log(x+ε) = ε log ε + (1 + log ε) x + ∫_ε^∞ (λ+1)x²/(λ+x) · (λ-ε)/(λ²(λ+1)) dλ`.
/// `offset` adds `offset · (1 - (x+ε))`, which turns this into the shifted Klein function.
fn xlogx_shifted_rep(offset: f64) -> IntegralRep {
    let eps = REP_SHIFT;
    let mut atoms = rep::discretize(|l| (l - eps) / (l * l * (l + 1.0)), eps, REP_LAMBDA_HI);
    let hi = REP_LAMBDA_HI;
    atoms.push(Atom { lambda: Lambda::Infinity, weight: 1.0 / hi - (1.0 + eps) / (2.0 * hi * hi) });
    IntegralRep {
        kind: RepKind::Convex,
        alpha: eps * eps.ln() + offset * (1.0 - eps),
        beta: 1.0 + eps.ln() - offset,
        gamma: 0.0,
        atoms,
    }
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

impl OperatorFunction {
    pub fn id(&self) -> FunctionId {
        self.id
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn representation(&self) -> Option<&IntegralRep> {
        self.representation.as_ref()
    }

    /// Argument shift of the representation (zero unless `f'(0+) = -∞`).
    pub fn rep_shift(&self) -> f64 {
        self.shift
    }

    /// Closed-form value on `[0, ∞)`; functions singular at zero return `+∞` there.
    pub fn eval(&self, x: f64) -> f64 {
        match self.id {
            FunctionId::Power(t) => x.powf(t),
            FunctionId::NegLog => -x.ln(),
            FunctionId::XLogX => xlogx(x),
            FunctionId::Inverse => 1.0 / x,
            FunctionId::Identity => x,
            FunctionId::Square => x * x,
            FunctionId::LogMean => log_mean(x),
            FunctionId::Klein => xlogx(x) - x + 1.0,
        }
    }

    /// Value obtained from the discretized representation.
    pub fn eval_via_rep(&self, x: f64) -> Result<f64> {
        let rep = self.representation.as_ref().ok_or_else(|| Error::Precondition(format!("{} has no representation", self.id)))?;
        Ok(self.sign * rep.eval(x - self.shift)?)
    }

    /// Spectral domain used when lifting to matrices.
    pub fn domain(&self) -> Domain {
        match self.id {
            FunctionId::Power(t) if t > 0.0 => Domain::NonNegative,
            FunctionId::Power(_) => Domain::AllReals,
            FunctionId::NegLog | FunctionId::Inverse => Domain::PositiveOnly,
            FunctionId::Identity | FunctionId::Square => Domain::AllReals,
            FunctionId::XLogX | FunctionId::Klein | FunctionId::LogMean => Domain::NonNegative,
        }
    }

    /// `f(X)` through the spectral calculus.
    pub fn apply(&self, x: &Psd) -> Result<Hermitian> {
        x.apply(|v| self.eval(v), self.domain(), self.id.name())
    }

    pub fn apply_hermitian(&self, x: &Hermitian) -> Result<Hermitian> {
        x.apply(|v| self.eval(v), self.domain(), self.id.name())
    }
}

fn log_mean(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let d = x - 1.0;
    if d.abs() < 1e-4 {
        // Series of d / log(1 + d).
        1.0 + d / 2.0 - d * d / 12.0 + d * d * d / 24.0
    } else {
        d / x.ln()
    }
}

/// Operator perspective `Y^{1/2} f(Y^{-1/2} X Y^{-1/2}) Y^{1/2}`.
pub fn perspective(f: &OperatorFunction, x: &Psd, y: &Psd) -> Result<Hermitian> {
    if !y.is_definite() {
        return Err(Error::Singular("perspective needs a positive definite Y".into()));
    }
    let y_half = y.sqrt();
    let y_mhalf = y.pow(-0.5)?;
    let inner = Psd::new(Hermitian::hermitian_part(y_mhalf.matrix() * x.matrix() * y_mhalf.matrix()))?;
    let fz = f.apply(&inner)?;
    Ok(Hermitian::hermitian_part(y_half.matrix() * fz.matrix() * y_half.matrix()))
}

/// `|f(x/y) y − representation perspective|`, with the shift applied as `x - shift·y`.
pub fn scalar_perspective_rep_check(f: &OperatorFunction, x: f64, y: f64) -> Result<f64> {
    let rep = f.representation().ok_or_else(|| Error::Precondition(format!("{} has no representation", f.id)))?;
    let direct = f.eval(x / y) * y;
    let via = f.sign * rep.perspective(x - f.shift * y, y)?;
    Ok((direct - via).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_pd, trial_rng};

    fn all_entries() -> Vec<OperatorFunction> {
        let mut ids = vec![
            FunctionId::NegLog,
            FunctionId::XLogX,
            FunctionId::Inverse,
            FunctionId::Identity,
            FunctionId::Square,
            FunctionId::LogMean,
            FunctionId::Klein,
        ];
        for t in [0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0, 1.2, 1.5, 1.9, 2.0] {
            ids.push(FunctionId::Power(t));
        }
        ids.into_iter().map(|id| catalog(id).unwrap()).collect()
    }

    #[test]
    fn representations_reproduce_on_log_grid() {
        for f in all_entries() {
            let mut worst: f64 = 0.0;
            for k in 0..50 {
                let x = 10f64.powf(-3.0 + 6.0 * k as f64 / 49.0);
                let exact = f.eval(x);
                let rel = (f.eval_via_rep(x).unwrap() - exact).abs() / exact.abs().max(1e-300);
                worst = worst.max(rel);
            }
            assert!(worst < 1e-6, "{} worst relative error {worst:e}", f.id());
        }
    }

    #[test]
    fn sqrt_representation_at_sample_points() {
        let f = catalog(FunctionId::Power(0.5)).unwrap();
        for x in [0.01, 1.0, 100.0] {
            assert!((f.eval_via_rep(x).unwrap() - x.sqrt()).abs() < 1e-6 * x.sqrt());
        }
    }

    #[test]
    fn inverse_is_a_single_hansen_atom() {
        let f = catalog(FunctionId::Inverse).unwrap();
        let rep = f.representation().unwrap();
        assert_eq!(rep.kind, RepKind::Hansen);
        assert_eq!(rep.eval(4.0).unwrap(), 0.25);
    }

    #[test]
    fn power_one_is_the_identity() {
        let f = catalog(FunctionId::Power(1.0)).unwrap();
        let rep = f.representation().unwrap();
        assert!(rep.atoms.is_empty());
        assert_eq!((rep.beta, rep.gamma), (0.0, 1.0));
        assert_eq!(f.eval(3.5), 3.5);
    }

    #[test]
    fn log_mean_is_continuous_at_one() {
        let f = catalog(FunctionId::LogMean).unwrap();
        assert_eq!(f.eval(1.0), 1.0);
        let near = f.eval(1.0 + 2e-4);
        let direct = 2e-4 / (1.0f64 + 2e-4).ln();
        assert!((near - direct).abs() < 1e-12);
    }

    #[test]
    fn flags_are_consistent() {
        for f in all_entries() {
            let fl = f.flags();
            if fl.increasing && fl.decreasing {
                assert_eq!(f.id(), FunctionId::Power(0.0));
            }
        }
    }

    #[test]
    fn out_of_range_parameters_are_rejected() {
        assert!(catalog(FunctionId::Power(2.5)).is_err());
        assert!(catalog(FunctionId::Power(-0.1)).is_err());
        assert!(FunctionId::parse("cosh", None).is_err());
    }

    #[test]
    fn scalar_perspective_residuals() {
        let grid = [0.1, 0.5, 1.0, 3.0, 10.0];
        for f in all_entries().into_iter().filter(|f| f.flags().convex) {
            for &x in &grid {
                for &y in &grid {
                    let r = scalar_perspective_rep_check(&f, x, y).unwrap();
                    assert!(r <= 1e-6, "{} at ({x},{y}): {r:e}", f.id());
                }
            }
        }
        let f = catalog(FunctionId::Square).unwrap();
        assert!(scalar_perspective_rep_check(&f, 2.0, 3.0).unwrap() < 1e-15);
        let x = catalog(FunctionId::XLogX).unwrap();
        assert!(scalar_perspective_rep_check(&x, 0.7, 1.9).unwrap() < 1e-5);
    }

    #[test]
    fn perspective_special_cases() {
        let mut rng = trial_rng(11, 0);
        let x = random_pd(3, &mut rng);
        let y = random_pd(3, &mut rng);
        let id = perspective(&catalog(FunctionId::Identity).unwrap(), &x, &y).unwrap();
        assert!((id.matrix() - x.matrix()).norm() < 1e-10 * x.matrix().norm());
        let sq = perspective(&catalog(FunctionId::Square).unwrap(), &x, &y).unwrap();
        let expect = x.matrix() * y.inv().unwrap().matrix() * x.matrix();
        assert!((sq.matrix() - &expect).norm() < 1e-9 * expect.norm());
        // Degree-one homogeneity.
        let f = catalog(FunctionId::LogMean).unwrap();
        let base = perspective(&f, &x, &y).unwrap();
        let scaled = perspective(&f, &x.scale(3.0), &y.scale(3.0)).unwrap();
        assert!((scaled.matrix() - base.matrix() * crate::linalg::c(3.0)).norm() < 1e-10 * base.matrix().norm() * 3.0);
    }

    #[test]
    fn perspective_of_neg_log_on_diagonals() {
        let x = Psd::from_diagonal(&[0.2, 0.5, 0.3]).unwrap();
        let y = Psd::from_diagonal(&[0.4, 0.1, 0.5]).unwrap();
        let g = perspective(&catalog(FunctionId::NegLog).unwrap(), &x, &y).unwrap();
        for (i, (a, b)) in [(0.2, 0.4), (0.5, 0.1), (0.3, 0.5)].into_iter().enumerate() {
            let expect: f64 = -b * (a / b as f64).ln();
            assert!((g.matrix()[(i, i)].re - expect).abs() < 1e-14);
        }
    }
}
