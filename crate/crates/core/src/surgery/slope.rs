use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::SurgeryError;

/// A slope `p/q` in canonical form: coprime, `q >= 1`, except `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSlope")]
pub struct Slope {
    p: i64,
    q: i64,
}

#[derive(Deserialize)]
struct RawSlope {
    p: i64,
    q: i64,
}

impl TryFrom<RawSlope> for Slope {
    type Error = SurgeryError;

    fn try_from(r: RawSlope) -> Result<Self, Self::Error> {
        let s = Slope::new(r.p, r.q)?;
        if (s.p, s.q) != (r.p, r.q) {
            return Err(SurgeryError::InvalidSlope {
                p: r.p,
                q: r.q,
                reason: "not in canonical form",
            });
        }
        Ok(s)
    }
}

impl Slope {
    /// Canonicalizes the sign so that `q >= 1` (or `p = 1` when `q = 0`).
    pub fn new(p: i64, q: i64) -> Result<Self, SurgeryError> {
        let bad = |reason| SurgeryError::InvalidSlope { p, q, reason };
        if p == i64::MIN || q == i64::MIN {
            return Err(bad("out of range"));
        }
        if p == 0 && q == 0 {
            return Err(bad("0/0 is not a slope"));
        }
        if p.gcd(&q) != 1 {
            return Err(bad("p and q must be coprime"));
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = SurgeryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SurgeryError::SlopeSyntax(s.to_string());
        let (a, b) = s.trim().split_once('/').ok_or_else(err)?;
        let p = a.trim().parse().map_err(|_| err())?;
        let q = b.trim().parse().map_err(|_| err())?;
        Slope::new(p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sign() {
        let s = Slope::new(3, -2).unwrap();
        assert_eq!((s.p(), s.q()), (-3, 2));
        assert_eq!(Slope::new(-1, 0).unwrap(), Slope::new(1, 0).unwrap());
        assert_eq!(Slope::new(0, -1).unwrap(), Slope::new(0, 1).unwrap());
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
        assert!(Slope::new(0, 2).is_err());
        assert!(Slope::new(2, 0).is_err());
    }

    #[test]
    fn parse_and_print() {
        let s: Slope = " -2/3 ".parse().unwrap();
        assert_eq!(s.to_string(), "-2/3");
        assert!("2".parse::<Slope>().is_err());
        assert!("a/b".parse::<Slope>().is_err());
    }

    #[test]
    fn json_requires_canonical_form() {
        assert!(serde_json::from_str::<Slope>(r#"{"p":1,"q":5}"#).is_ok());
        assert!(serde_json::from_str::<Slope>(r#"{"p":-1,"q":-5}"#).is_err());
    }
}
