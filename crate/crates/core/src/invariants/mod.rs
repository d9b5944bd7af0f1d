//! Knot-level invariants: λ′ by degree and by surgery asymptotics,
//! connected sums, Alexander data of twisted doubles, and the
//! eigenvalue-curve seminorm.

mod alexander;
mod db;
mod lambda;
mod seminorm;

pub use alexander::{admissible_condition_ii, alexander_twisted_double, Admissibility};
pub use db::{bundled_db, find, load_db, parse_db, render_db, save_db, KnotRecord, RecordIssue};
pub use lambda::{connected_sum, lambda_prime, lambda_prime_asymptotic, Asymptotic};
pub use seminorm::{eigenvalue_seminorm, Seminorm};

use thiserror::Error;

use crate::elimination::ElimError;
use crate::poly::PolyError;
use crate::surgery::SurgeryError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvError {
    #[error("p must be nonzero")]
    ZeroP,
    #[error("q_max must be at least 1, got {0}")]
    QMaxTooSmall(i64),
    #[error("trials must be positive")]
    NoTrials,
    #[error("unknown knot {0:?}")]
    UnknownKnot(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed database JSON: {0}")]
    Json(String),
    #[error("{} invalid record(s): {}", .0.len(), .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidRecords(Vec<RecordIssue>),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Elim(#[from] ElimError),
}
