use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.6e})")]
    NotPsd { eigenvalue: f64 },
    #[error("eigenvalue {eigenvalue:.6e} outside the domain of {function}")]
    Domain { function: &'static str, eigenvalue: f64 },
    #[error("eigensolver did not converge (dim {dim}, max iterations {iterations})")]
    Eigen { dim: usize, iterations: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("map is not completely positive (Choi eigenvalue {eigenvalue:.6e})")]
    NotCompletelyPositive { eigenvalue: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("singular operator: {0}")]
    Singular(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("interchange format: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
