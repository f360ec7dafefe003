//! Numerical substrate for matrix trace inequalities: Hermitian linear algebra,
//! completely positive maps, entropies, GNS superoperators and operator
//! monotone/convex functions with their integral representations.
//!
//! Conventions used throughout:
//! - `kron(A, B)`: the first factor is the slow index.
//! - A Kraus channel stores `V_j` of shape `in_dim × out_dim` and acts as
//!   `X ↦ Σ V_j* X V_j`; its adjoint acts as `Y ↦ Σ V_j Y V_j*`.
//! - Superoperators act on column-stacked matrices, so `L_X = I ⊗ X` and
//!   `R_X = X^T ⊗ I`.
//! - Entropies are in nats.

pub mod channels;
pub mod entropy;
mod error;
pub mod gns;
pub mod linalg;
pub mod opfunc;
pub mod quadrature;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, Complex};
