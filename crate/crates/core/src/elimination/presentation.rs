use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{ElimError, Word};

/// A finite presentation with a chosen meridian and longitude.
///
/// JSON form: `{generators, relators, meridian, longitude}` with words as
/// strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub meridian: Word,
    pub longitude: Word,
}

#[derive(Clone, Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
    meridian: String,
    longitude: String,
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = ElimError;

    fn try_from(raw: PresentationJson) -> Result<Self, ElimError> {
        let gens: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
        let rels: Vec<&str> = raw.relators.iter().map(String::as_str).collect();
        Self::from_strings(&gens, &rels, &raw.meridian, &raw.longitude)
    }
}

impl From<Presentation> for PresentationJson {
    fn from(p: Presentation) -> Self {
        p.to_raw()
    }
}

impl Presentation {
    /// Parses every word against `generators` and validates the result.
    pub fn from_strings(
        generators: &[&str],
        relators: &[&str],
        meridian: &str,
        longitude: &str,
    ) -> Result<Self, ElimError> {
        let generators: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let parse = |s: &str| Word::parse(s, &generators);
        let p = Self {
            relators: relators.iter().map(|r| parse(r)).collect::<Result<_, _>>()?,
            meridian: parse(meridian)?,
            longitude: parse(longitude)?,
            generators: generators.clone(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_json(src: &str) -> Result<Self, ElimError> {
        let raw: PresentationJson =
            serde_json::from_str(src).map_err(|e| ElimError::Json(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("plain strings serialize")
    }

    fn to_raw(&self) -> PresentationJson {
        PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(Word::to_string).collect(),
            meridian: self.meridian.to_string(),
            longitude: self.longitude.to_string(),
        }
    }

    /// Checks generator usage, duplicate names, and that the longitude is
    /// trivial in the abelianization.
    pub fn validate(&self) -> Result<(), ElimError> {
        if self.generators.is_empty() {
            return Err(ElimError::NoGenerators);
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() || !g.chars().all(|c| c.is_alphanumeric()) || !g.chars().next().unwrap().is_alphabetic() {
                return Err(ElimError::BadGeneratorName(g.clone()));
            }
            if self.generators[..i].contains(g) || self.generators[..i].iter().any(|h| h.to_uppercase() == *g) {
                return Err(ElimError::BadGeneratorName(g.clone()));
            }
        }
        let words = self.relators.iter().chain([&self.meridian, &self.longitude]);
        for w in words {
            if let Some(g) = w.generators().find(|g| !self.generators.iter().any(|h| h == g)) {
                return Err(ElimError::UnknownGenerator {
                    token: g.to_string(),
                    pos: 0,
                });
            }
        }
        if !self.longitude_abelianizes_to_zero() {
            return Err(ElimError::LongitudeNotNullHomologous(self.longitude.to_string()));
        }
        Ok(())
    }

    pub fn exponent_vector(&self, w: &Word) -> Vec<i64> {
        self.generators.iter().map(|g| w.exponent_sum(g)).collect()
    }

    /// Whether the longitude maps to zero in `H_1 = Z^n / <relators>`, i.e.
    /// its exponent vector lies in the lattice spanned by the relators'.
    pub fn longitude_abelianizes_to_zero(&self) -> bool {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| self.exponent_vector(r)).collect();
        in_lattice(&rows, &self.exponent_vector(&self.longitude))
    }
}

/// Integer row reduction to echelon form, then back-substitution.
fn in_lattice(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let n = v.len();
    let mut basis: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut echelon: Vec<Vec<i128>> = Vec::new();
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (0..basis.len()).filter(|&i| basis[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    echelon.push(basis.remove(i));
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| basis[i][col].abs()).unwrap();
            let prow = basis[piv].clone();
            for &i in &nz {
                if i != piv {
                    let f = basis[i][col].div_euclid(prow[col]);
                    for k in 0..n {
                        basis[i][k] -= f * prow[k];
                    }
                }
            }
        }
    }
    let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for row in &echelon {
        let col = row.iter().position(|&x| x != 0).unwrap();
        if rest[col] % row[col] != 0 {
            return false;
        }
        let f = rest[col] / row[col];
        for k in 0..n {
            rest[k] -= f * row[k];
        }
    }
    rest.iter().all(|&x| x == 0)
}

/// Two-bridge knot `b(p, q)` (p odd, q odd and coprime to p) as
/// `<a, b | a w = w b>`, meridian `a`, longitude `w w̄ a^{-2σ}` where
/// `w = b^{ε1} a^{ε2} b^{ε3} ...`, `ε_i = (-1)^{⌊iq/p⌋}`, `w̄` is `w`
/// reversed and `σ = Σ ε_i`.
pub fn two_bridge(p: i64, q: i64) -> Result<Presentation, ElimError> {
    if p < 3 || p % 2 == 0 || q <= 0 || q >= p || q % 2 == 0 || p.gcd(&q) != 1 {
        return Err(ElimError::BadTwoBridge { p, q });
    }
    let eps: Vec<i64> = (1..p)
        .map(|i| if ((i * q) / p) % 2 == 0 { 1 } else { -1 })
        .collect();
    let mut w = String::new();
    for (i, e) in eps.iter().enumerate() {
        let g = if i % 2 == 0 { 'b' } else { 'a' };
        w.push(if *e > 0 { g } else { g.to_ascii_uppercase() });
    }
    let gens = ["a".to_string(), "b".to_string()];
    let w = Word::parse(&w, &gens)?;
    let sigma: i64 = eps.iter().sum();
    let a = Word::gen("a");
    let b = Word::gen("b");
    let relator = &(&(&a * &w) * &b.inverse()) * &w.inverse();
    let wrev = Word::from_letters(w.letters().iter().rev().cloned());
    let longitude = &(&w * &wrev) * &a.pow(-2 * sigma);
    let pres = Presentation {
        generators: gens.to_vec(),
        relators: vec![relator],
        meridian: a,
        longitude,
    };
    pres.validate()?;
    Ok(pres)
}

/// Named presentations shipped with the crate.
pub fn fixture(name: &str) -> Option<Presentation> {
    let tb = |p, q| two_bridge(p, q).ok();
    match name {
        // Wirtinger form g1 g2 g1 = g2 g1 g2.
        "trefoil" | "3_1" => Presentation::from_strings(
            &["g1", "g2"],
            &["g1 g2 g1 G2 G1 G2"],
            "g1",
            "g2 g1 g1 g2 G1^4",
        )
        .ok(),
        "figure-8" | "figure8" | "4_1" => tb(5, 3),
        "5_1" => tb(5, 1),
        "5_2" => tb(7, 3),
        "6_1" => tb(9, 7),
        "7_1" => tb(7, 1),
        "unknot" | "0_1" => Presentation::from_strings(&["g1", "g2"], &["g1 G2"], "g1", "g1 G2").ok(),
        _ => None,
    }
}

pub const FIXTURE_NAMES: &[&str] = &["unknot", "trefoil", "figure-8", "5_1", "5_2", "6_1", "7_1"];
