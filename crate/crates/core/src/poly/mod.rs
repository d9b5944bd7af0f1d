//! Exact polynomial arithmetic and numeric root finding.

mod bivariate;
mod intpoly;
mod laurent;
mod mpoly;
mod parse;
mod roots;

pub use intpoly::IntPoly1;
pub use laurent::{BiLaurent, SurgerySubstitution};
pub use mpoly::{determinant, resultant, MPoly};
pub use roots::{backward_error, complex_roots, roots, Root, RootConfig};

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("cannot normalize the zero polynomial")]
    NormalizeZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for a constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not in normal form")]
    NotNormal,
    #[error("slice index {index} outside 0..={degree}")]
    SliceOutOfRange { index: i64, degree: i64 },
    #[error("variable {0} occurs with a negative exponent")]
    NegativeExponent(String),
    #[error("no value supplied for variable {0}")]
    UnboundVariable(String),
    #[error("unexpected variable {0}")]
    UnexpectedVariable(String),
    #[error("coefficient is not an integer")]
    NonIntegerCoefficient,
    #[error("inexact division")]
    InexactDivision,
    #[error("degree {degree} exceeds the limit {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize, partial: Vec<Root> },
    #[error("cannot parse polynomial at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}

// JSON form: a list of [coefficient, exponent...] with the coefficient as a
// decimal string so that big integers survive round trips.

fn parse_coeff<E: serde::de::Error>(s: &str) -> Result<BigInt, E> {
    s.parse::<BigInt>()
        .map_err(|_| E::custom(format!("bad integer coefficient {s:?}")))
}

impl Serialize for BiLaurent {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(String, i64, i64)> = self
            .terms()
            .map(|((a, b), c)| (c.to_string(), a, b))
            .collect();
        rows.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BiLaurent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let rows: Vec<(String, i64, i64)> = Vec::deserialize(de)?;
        let mut terms = Vec::with_capacity(rows.len());
        for (c, a, b) in rows {
            terms.push((parse_coeff::<D::Error>(&c)?, a, b));
        }
        Ok(BiLaurent::from_terms(terms))
    }
}

impl Serialize for IntPoly1 {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(String, u32)> = self.terms().map(|(e, c)| (c.to_string(), e)).collect();
        rows.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntPoly1 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let rows: Vec<(String, u32)> = Vec::deserialize(de)?;
        let mut terms = Vec::with_capacity(rows.len());
        for (c, e) in rows {
            terms.push((parse_coeff::<D::Error>(&c)?, e));
        }
        if terms.iter().any(|(c, _)| c == &BigInt::from(0)) {
            return Err(D::Error::custom("zero coefficient in sparse polynomial"));
        }
        Ok(IntPoly1::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_bilaurent() {
        let p = BiLaurent::from_i64_terms(&[(1, 6, 1), (1, 0, 0), (-1234567890123456789, 2, 3)]);
        let s = serde_json::to_string(&p).unwrap();
        let back: BiLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn json_bigint_coefficients() {
        let s = r#"[["123456789012345678901234567890", 1, 0], ["-1", 0, 0]]"#;
        let p: BiLaurent = serde_json::from_str(s).unwrap();
        assert_eq!(serde_json::from_str::<BiLaurent>(&serde_json::to_string(&p).unwrap()).unwrap(), p);
        assert!(serde_json::from_str::<BiLaurent>(r#"[["x", 1, 0]]"#).is_err());
    }

    #[test]
    fn json_roundtrip_intpoly() {
        let p = IntPoly1::from_coeffs(&[1, 0, -3, 7]);
        let back: IntPoly1 = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(p, back);
    }
}
