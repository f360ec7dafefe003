//! Randomized verification of matrix trace inequalities.
//!
//! Each registered check samples random instances, evaluates a normalized
//! slack (negative means the claimed inequality is violated) and reduces the
//! trials into a [`CheckReport`]. Convexity claims are tested by midpoint
//! probes, which suffices for functionals continuous on their domain.
//! Monotonicity claims are tested against channels drawn from the class the
//! statement requires.
//!
//! Runs are deterministic in `(id, config)`: every trial draws from its own
//! ChaCha stream and the reduction is done in trial order, so the thread
//! count never changes a report.

mod checks;
mod config;
mod error;
mod probe;
mod registry;
mod report;
mod runner;
mod search;
mod witness;

pub use config::{CheckConfig, DEFAULT_SEARCH_BUDGET};
pub use error::{Result, VerifyError};
pub use probe::{convexity_probe, monotonicity_probe, ChannelClass, Direction, Midpoint};
pub use registry::{registry, CheckId, CheckInfo, Mode, SlackKind};
pub use report::{CheckReport, ConfigSummary, ReportDocument, Status, Units, REPORT_SCHEMA};
pub use runner::{derive_seed, run_check};
pub use search::search_counterexample;
pub use witness::{Witness, WitnessValue};
