//! Group presentations, SL(2) word evaluation and elimination of the Riley
//! chart parameter to obtain A-polynomials.

mod alexander;
mod presentation;
mod riley;
mod sl2;
mod word;

pub use alexander::alexander_polynomial;
pub use presentation::{fixture, two_bridge, Presentation, FIXTURE_NAMES};
pub use riley::{
    a_polynomial, lift_points, riley_chart, riley_polynomial, APolynomial, ChartPoint, LiftSample,
    RileyPolynomial,
};
pub use sl2::{eval_word, Assignment, Scalar, Sl2, DET_TOLERANCE};
pub use word::{Letter, Word};

use thiserror::Error;

use crate::poly::{BiLaurent, PolyError};

/// Largest `|k|` accepted in `g^k` when parsing.
pub const MAX_EXPONENT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElimError {
    #[error("empty word")]
    EmptyWord,
    #[error("unknown generator {token:?} at byte {pos}")]
    UnknownGenerator { token: String, pos: usize },
    #[error("malformed exponent {text:?} at byte {pos}")]
    MalformedExponent { text: String, pos: usize },
    #[error("invalid generator name {0:?}")]
    BadGeneratorName(String),
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("longitude {0} is not null-homologous")]
    LongitudeNotNullHomologous(String),
    #[error("invalid presentation JSON: {0}")]
    Json(String),
    #[error("no two-bridge knot b({p}, {q}); need odd p >= 3 and odd q in (0, p) coprime to p")]
    BadTwoBridge { p: i64, q: i64 },
    #[error("matrix is not in SL(2) (|det - 1| = {defect})")]
    NotSl2 { defect: f64 },
    #[error("generator {0} has no assigned matrix")]
    Unassigned(String),
    #[error("empty assignment")]
    EmptyAssignment,
    #[error("the Riley chart needs exactly 2 generators, got {0}")]
    NotTwoGenerator(usize),
    #[error("meridian {0} is not a generator")]
    MeridianNotGenerator(String),
    #[error("relator conditions vanish identically")]
    DegenerateRelators,
    #[error("resultant vanishes identically; common factor {factor}")]
    ResultantVanishes { factor: BiLaurent },
    #[error("longitude is not triangular on the irreducible locus")]
    LongitudeNotTriangular,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
