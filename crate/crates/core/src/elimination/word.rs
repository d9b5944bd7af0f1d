use std::fmt;
use std::ops::Mul;

use super::ElimError;

/// One generator occurrence, `gen` or `gen^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: String,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(&self) -> Self {
        Self {
            gen: self.gen.clone(),
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word in named generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn gen(name: &str) -> Self {
        Self::from_letters([Letter {
            gen: name.to_string(),
            inverse: false,
        }])
    }

    /// Builds a word, freely reducing as it goes.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|top| top.gen == l.gen && top.inverse != l.inverse) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(Letter::inv).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Self::from_letters(
            std::iter::repeat_n(base.letters, k.unsigned_abs() as usize).flatten(),
        )
    }

    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(|l| l.gen.as_str())
    }

    /// Parses a word over `generators`.
    ///
    /// A generator name stands for itself and its uppercase spelling for its
    /// inverse; either may carry `^k`. Tokens may be separated by whitespace
    /// or written contiguously.
    pub fn parse(src: &str, generators: &[String]) -> Result<Self, ElimError> {
        if src.trim().is_empty() {
            return Err(ElimError::EmptyWord);
        }
        let mut names: Vec<(String, bool, &str)> = Vec::new();
        for g in generators {
            names.push((g.clone(), false, g));
            let up = g.to_uppercase();
            if up != *g && !generators.contains(&up) {
                names.push((up, true, g));
            }
        }
        // Longest match first so that e.g. `g12` is not read as `g1` `2`.
        names.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        let mut letters = Vec::new();
        let mut rest = src;
        loop {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let pos = src.len() - rest.len();
            let Some((tok, inverse, gen)) = names.iter().find(|(n, _, _)| rest.starts_with(n.as_str())) else {
                let bad: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                return Err(ElimError::UnknownGenerator { token: bad, pos });
            };
            rest = &rest[tok.len()..];
            let mut exp: i64 = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let digits_end = after
                    .char_indices()
                    .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+'))))
                    .map_or(after.len(), |(i, _)| i);
                let num = &after[..digits_end];
                exp = num.parse().map_err(|_| ElimError::MalformedExponent {
                    text: num.to_string(),
                    pos,
                })?;
                if exp.unsigned_abs() > super::MAX_EXPONENT {
                    return Err(ElimError::MalformedExponent {
                        text: num.to_string(),
                        pos,
                    });
                }
                rest = &after[digits_end..];
            }
            let inv = *inverse ^ (exp < 0);
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter {
                    gen: gen.to_string(),
                    inverse: inv,
                });
            }
        }
        Ok(Self::from_letters(letters))
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&rhs.letters).cloned())
    }
}

impl fmt::Display for Word {
    /// Uppercase for inverses; contiguous when every generator is a single
    /// character, space-separated otherwise. The empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let compact = self.letters.iter().all(|l| l.gen.chars().count() == 1);
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 && !compact {
                write!(f, " ")?;
            }
            if l.inverse {
                write!(f, "{}", l.gen.to_uppercase())?;
            } else {
                write!(f, "{}", l.gen)?;
            }
        }
        Ok(())
    }
}
