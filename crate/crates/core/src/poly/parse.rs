//! Text form of polynomials: a signed sum of terms, each an optional
//! integer coefficient times powers of variables, e.g. `m^6*l + 1` or
//! `-2 m^4 l^-1`. Factors may be joined by `*` or whitespace.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::{BiLaurent, IntPoly1, PolyError};

fn err(pos: usize, message: impl Into<String>) -> PolyError {
    PolyError::Parse {
        pos,
        message: message.into(),
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &'a str {
        let r = self.rest();
        let n = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        self.pos += n;
        &r[..n]
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let start = self.pos;
        let d = self.digits();
        let e: i64 = d.parse().map_err(|_| err(start, "expected an exponent"))?;
        if e > 100_000 {
            return Err(err(start, "exponent too large"));
        }
        Ok(if neg { -e } else { e })
    }
}

/// Terms `(coefficient, exponents)` over `vars`; `aliases` maps extra
/// spellings to variable indices.
fn parse_terms(src: &str, vars: &[&str], aliases: &[(&str, usize)]) -> Result<Vec<(BigInt, Vec<i64>)>, PolyError> {
    let mut names: Vec<(&str, usize)> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    names.extend_from_slice(aliases);
    names.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
    let mut c = Cursor { src, pos: 0 };
    let mut terms = Vec::new();
    c.skip_ws();
    if c.rest().is_empty() {
        return Err(err(0, "empty input"));
    }
    let mut first = true;
    loop {
        c.skip_ws();
        if c.rest().is_empty() {
            break;
        }
        let mut negative = false;
        if c.eat('-') {
            negative = true;
        } else if !c.eat('+') && !first {
            return Err(err(c.pos, "expected + or -"));
        }
        first = false;
        c.skip_ws();
        let mut coeff = BigInt::one();
        let mut exps = vec![0i64; vars.len()];
        let mut factors = 0;
        loop {
            c.skip_ws();
            if factors > 0 && c.eat('*') {
                c.skip_ws();
            }
            match c.peek() {
                Some(ch) if ch.is_ascii_digit() => {
                    let start = c.pos;
                    let d = c.digits();
                    coeff *= d.parse::<BigInt>().map_err(|_| err(start, "bad integer"))?;
                    c.skip_ws();
                    if c.eat('^') {
                        return Err(err(start, "powers of constants are not supported"));
                    }
                }
                Some(_) => {
                    let Some(&(name, idx)) = names.iter().find(|(n, _)| c.rest().starts_with(n)) else {
                        if factors == 0 {
                            return Err(err(c.pos, "expected a coefficient or variable"));
                        }
                        break;
                    };
                    c.pos += name.len();
                    let e = if c.eat('^') { c.exponent()? } else { 1 };
                    exps[idx] += e;
                }
                None => {
                    if factors == 0 {
                        return Err(err(c.pos, "expected a term"));
                    }
                    break;
                }
            }
            factors += 1;
            c.skip_ws();
            if matches!(c.peek(), Some('+') | Some('-') | None) {
                break;
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((coeff, exps));
    }
    Ok(terms)
}

impl FromStr for BiLaurent {
    type Err = PolyError;

    /// Variables `m` and `l` (also written `ℓ`); negative exponents allowed.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let terms = parse_terms(s, &["m", "l"], &[("ℓ", 1)])?;
        Ok(BiLaurent::from_terms(terms.into_iter().map(|(c, e)| (c, e[0], e[1]))))
    }
}

impl FromStr for IntPoly1 {
    type Err = PolyError;

    /// Variable `t`, nonnegative exponents.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let terms = parse_terms(s, &["t"], &[])?;
        let mut out = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            let e = u32::try_from(e[0]).map_err(|_| PolyError::NegativeExponent("t".into()))?;
            out.push((c, e));
        }
        Ok(IntPoly1::from_terms(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        let t: BiLaurent = "m^6*l + 1".parse().unwrap();
        assert_eq!(t, BiLaurent::from_i64_terms(&[(1, 6, 1), (1, 0, 0)]));
        let u: BiLaurent = "1 + l m^6".parse().unwrap();
        assert_eq!(t, u);
        let v: BiLaurent = "-2 m^-1 ℓ^2 + 3*m*m".parse().unwrap();
        assert_eq!(v, BiLaurent::from_i64_terms(&[(-2, -1, 2), (3, 2, 0)]));
        let w: BiLaurent = "m^2 - m^2".parse().unwrap();
        assert!(w.is_zero());
        let a: IntPoly1 = "t^2 - 3t + 1".parse().unwrap();
        assert_eq!(a, IntPoly1::from_coeffs(&[1, -3, 1]));
    }

    #[test]
    fn display_roundtrip() {
        let f = BiLaurent::from_i64_terms(&[(1, 8, 1), (-1, 6, 1), (-1, 4, 2), (-2, 4, 1), (-1, 4, 0), (-1, 2, 1), (1, 0, 1)]);
        assert_eq!(f.to_string().parse::<BiLaurent>().unwrap(), f);
        let a = IntPoly1::from_coeffs(&[1, -1, 1]);
        assert_eq!(a.to_string().parse::<IntPoly1>().unwrap(), a);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "m +", "x", "m^", "2^3", "m l q", "+ + m", "m^-"] {
            assert!(bad.parse::<BiLaurent>().is_err(), "{bad:?}");
        }
        assert!(matches!("t^-1".parse::<IntPoly1>(), Err(PolyError::NegativeExponent(_))));
    }
}
