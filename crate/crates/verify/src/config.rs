use serde::{Deserialize, Serialize};

use crate::{Result, VerifyError};

/// Default evaluation budget for counterexample searches.
pub const DEFAULT_SEARCH_BUDGET: usize = 100_000;

/// Overrides for a single check run. `None` fields fall back to the registry defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Per-factor dimensions; replaces every default configuration with this one.
    pub dims: Option<Vec<usize>>,
    /// Trials per dimension configuration.
    pub trials: Option<usize>,
    pub seed: u64,
    /// Slack tolerance; defaults to 1e-8 for trace functionals and 1e-9 for eigenvalues.
    pub tol: Option<f64>,
    pub search_budget: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { dims: None, trials: None, seed: 0, tol: None, search_budget: DEFAULT_SEARCH_BUDGET }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == Some(0) {
            return Err(VerifyError::Config("trials must be at least 1".into()));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(VerifyError::Config(format!("tolerance must be positive and finite, got {tol}")));
            }
        }
        if self.search_budget == 0 {
            return Err(VerifyError::Config("search budget must be at least 1".into()));
        }
        if let Some(dims) = &self.dims {
            if dims.is_empty() || dims.contains(&0) {
                return Err(VerifyError::Config("dimensions must be positive".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_trials_and_bad_tolerances() {
        assert!(CheckConfig { trials: Some(0), ..CheckConfig::default() }.validate().is_err());
        for tol in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(CheckConfig { tol: Some(tol), ..CheckConfig::default() }.validate().is_err());
        }
        assert!(CheckConfig { dims: Some(vec![2, 0]), ..CheckConfig::default() }.validate().is_err());
        assert!(CheckConfig::with_seed(3).validate().is_ok());
    }
}
