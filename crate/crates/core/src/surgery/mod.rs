//! Surgery curves `m^p ℓ^q = 1` and their intersections with A-polynomial
//! curves.

mod curve;
mod intersection;
mod slope;

pub use curve::{
    check_nonsingular, surgery_poly, transversal, CommonPoint, NonsingularCertificate,
    NonsingularReason, TransversalityCertificate, TransversalityConfig,
};
pub use intersection::{
    classify_point, intersection_points, linear_growth_params, total_intersection,
    IntersectionReport, LinearGrowth, PointConfig, PointKind, SurgeryPoint,
};
pub use slope::Slope;

use thiserror::Error;

use crate::poly::{BiLaurent, PolyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurgeryError {
    #[error("invalid slope {p}/{q}: {reason}")]
    InvalidSlope { p: i64, q: i64, reason: &'static str },
    #[error("cannot parse slope {0:?}; expected P/Q")]
    SlopeSyntax(String),
    #[error("slopes {0} and {1} are identical")]
    IdenticalSlopes(Slope, Slope),
    #[error("surgery curve {factor} divides the polynomial")]
    Divisible { factor: BiLaurent },
    #[error("growth parameters need p != 0")]
    ZeroP,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
