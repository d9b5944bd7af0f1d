//! Sparse multivariate polynomials with rational coefficients.
//!
//! Exponents are signed so that Laurent monomials such as `m^-1` can appear
//! in representation matrices; elimination routines shift them away before
//! taking resultants.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{BiLaurent, PolyError};

/// A polynomial over `Q` in named variables.
///
/// Values built over different variable lists can be combined; operands are
/// re-expressed over the union of their variables first.
#[derive(Clone, Debug, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, BigRational>,
}

impl MPoly {
    /// The zero polynomial over `vars`.
    pub fn zero_in(vars: &[&str]) -> Self {
        Self {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// A constant with no variables.
    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn var(name: &str) -> Self {
        Self::from_terms(&[name], [(vec![1], BigRational::one())])
    }

    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Vec<i32>, BigRational)>,
    ) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut map: BTreeMap<Vec<i32>, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { vars, terms: map }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if no variable occurs with nonzero exponent.
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Whether `name` occurs with a nonzero exponent.
    pub fn involves(&self, name: &str) -> bool {
        self.var_index(name)
            .is_some_and(|i| self.terms.keys().any(|e| e[i] != 0))
    }

    /// Re-expresses `self` over `vars`, which must contain all used variables.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let idx: Vec<Option<usize>> = vars.iter().map(|v| self.var_index(v)).collect();
        for (i, name) in self.vars.iter().enumerate() {
            if !vars.contains(name) {
                assert!(
                    self.terms.keys().all(|e| e[i] == 0),
                    "variable {name} dropped while in use"
                );
            }
        }
        Self {
            vars: vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        idx.iter().map(|j| j.map_or(0, |j| e[j])).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut v = self.vars.clone();
        for name in &other.vars {
            if !v.contains(name) {
                v.push(name.clone());
            }
        }
        v
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let u = self.union_vars(other);
        (self.with_vars(&u), other.with_vars(&u))
    }

    /// Drops variables that no longer occur.
    pub fn compact(&self) -> Self {
        let keep: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] != 0))
            .map(|(_, v)| v.clone())
            .collect();
        self.with_vars(&keep)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::int(1);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Multiplies by `name^k` (the variable is added if missing).
    pub fn shift(&self, name: &str, k: i32) -> Self {
        let mut p = self.clone();
        let i = match p.var_index(name) {
            Some(i) => i,
            None => {
                let mut vars = p.vars.clone();
                vars.push(name.to_string());
                p = p.with_vars(&vars);
                vars.len() - 1
            }
        };
        p.terms = p
            .terms
            .into_iter()
            .map(|(mut e, c)| {
                e[i] += k;
                (e, c)
            })
            .collect();
        p
    }

    /// `(min, max)` exponent of `name`, `None` for zero or absent.
    pub fn exponent_range(&self, name: &str) -> Option<(i32, i32)> {
        let i = self.var_index(name)?;
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn degree_in(&self, name: &str) -> i32 {
        self.exponent_range(name).map_or(0, |r| r.1.max(0))
    }

    /// Coefficients of `name^0, name^1, ...`; each keeps the full variable list.
    pub fn coefficients_in(&self, name: &str) -> Result<Vec<MPoly>, PolyError> {
        let Some(i) = self.var_index(name) else {
            return Ok(vec![self.clone()]);
        };
        let Some((lo, hi)) = self.exponent_range(name) else {
            return Ok(Vec::new());
        };
        if lo < 0 {
            return Err(PolyError::NegativeExponent(name.to_string()));
        }
        let mut out = vec![
            Self {
                vars: self.vars.clone(),
                terms: BTreeMap::new()
            };
            hi as usize + 1
        ];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        Ok(out)
    }

    /// Substitutes a rational value for `name` and removes the variable.
    pub fn specialize(&self, name: &str, value: &BigRational) -> Self {
        let Some(i) = self.var_index(name) else {
            return self.clone();
        };
        let vars: Vec<&str> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.as_str())
            .collect();
        Self::from_terms(
            &vars,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = e.clone();
                let k = e2.remove(i);
                (e2, c * rational_pow(value, k))
            }),
        )
    }

    /// Substitutes another polynomial for `name` (nonnegative exponents only).
    pub fn substitute(&self, name: &str, value: &MPoly) -> Result<Self, PolyError> {
        if self.var_index(name).is_none() {
            return Ok(self.clone());
        }
        let coeffs = self.coefficients_in(name)?;
        let mut acc = MPoly::int(0);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + &c.compact_without(name);
        }
        Ok(acc)
    }

    fn compact_without(&self, name: &str) -> Self {
        let vars: Vec<String> = self.vars.iter().filter(|v| *v != name).cloned().collect();
        self.with_vars(&vars)
    }

    pub fn derivative(&self, name: &str) -> Self {
        let Some(i) = self.var_index(name) else {
            return self.scale(&BigRational::zero());
        };
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        Self::from_terms(
            &vars,
            self.terms.iter().filter(|(e, _)| e[i] != 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * BigRational::from_integer(e[i].into()))
            }),
        )
    }

    /// Evaluates with complex values supplied per variable name.
    pub fn eval_complex(&self, value: impl Fn(&str) -> Option<Complex64>) -> Result<Complex64, PolyError> {
        let vals: Vec<Complex64> = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| PolyError::UnboundVariable(v.clone())))
            .collect::<Result<_, _>>()?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut z = Complex64::new(rational_to_f64(c), 0.0);
                for (x, &k) in vals.iter().zip(e) {
                    if k != 0 {
                        z *= x.powi(k);
                    }
                }
                z
            })
            .sum())
    }

    /// Shifts every variable so its minimal exponent is zero; returns the
    /// polynomial and the applied shift per variable.
    pub fn clear_monomial_denominator(&self) -> (Self, Vec<i32>) {
        let n = self.vars.len();
        let mut lo = vec![0i32; n];
        for (k, slot) in lo.iter_mut().enumerate() {
            *slot = self.terms.keys().map(|e| e[k]).min().unwrap_or(0);
        }
        let shift: Vec<i32> = lo.iter().map(|&x| -x).collect();
        let p = Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&shift).map(|(a, s)| a + s).collect(), c.clone()))
                .collect(),
        };
        (p, shift)
    }

    fn shift_all(&self, shift: &[i32]) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, s)| a + s).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (a, d) = self.aligned(d);
        if a.is_zero() {
            return Some(a);
        }
        let (a, sa) = a.clear_monomial_denominator();
        let (d, sd) = d.clear_monomial_denominator();
        let (lt_e, lt_c) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = a;
        let mut quot: BTreeMap<Vec<i32>, BigRational> = BTreeMap::new();
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = e.iter().zip(&lt_e).map(|(x, y)| x - y).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = c / &lt_c;
            for (de, dc) in &d.terms {
                let te: Vec<i32> = de.iter().zip(&qe).map(|(x, y)| x + y).collect();
                let entry = rem.terms.entry(te).or_insert_with(BigRational::zero);
                *entry -= dc * &qc;
                if entry.is_zero() {
                    let key: Vec<i32> = de.iter().zip(&qe).map(|(x, y)| x + y).collect();
                    rem.terms.remove(&key);
                }
            }
            quot.insert(qe, qc);
        }
        let q = Self {
            vars: d.vars.clone(),
            terms: quot,
        };
        let back: Vec<i32> = sa.iter().zip(&sd).map(|(a, d)| d - a).collect();
        Some(q.shift_all(&back))
    }

    /// Multiplies by a rational so all coefficients are coprime integers with
    /// a positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut k = BigRational::new(lcm, g);
        if self.terms.values().next_back().unwrap().is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    /// Converts to a [`BiLaurent`] in the two named variables; every other
    /// variable must be absent and every coefficient an integer.
    pub fn to_bilaurent(&self, m: &str, l: &str) -> Result<BiLaurent, PolyError> {
        let im = self.var_index(m);
        let il = self.var_index(l);
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            for (k, &x) in e.iter().enumerate() {
                if x != 0 && Some(k) != im && Some(k) != il {
                    return Err(PolyError::UnexpectedVariable(self.vars[k].clone()));
                }
            }
            if !c.is_integer() {
                return Err(PolyError::NonIntegerCoefficient);
            }
            out.push((
                c.to_integer(),
                im.map_or(0, |i| e[i] as i64),
                il.map_or(0, |i| e[i] as i64),
            ));
        }
        Ok(BiLaurent::from_terms(out))
    }

    pub fn from_bilaurent(b: &BiLaurent, m: &str, l: &str) -> Self {
        Self::from_terms(
            &[m, l],
            b.terms()
                .map(|((a, c), v)| (vec![a as i32, c as i32], BigRational::from_integer(v.clone()))),
        )
    }
}

fn rational_pow(x: &BigRational, k: i32) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Sylvester resultant of `a` and `b` with respect to `var`; the result no
/// longer contains `var`. Both inputs must be polynomial in `var`.
pub fn resultant(a: &MPoly, b: &MPoly, var: &str) -> Result<MPoly, PolyError> {
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (a, b) = a.aligned(b);
    let ca = a.coefficients_in(var)?;
    let cb = b.coefficients_in(var)?;
    let da = ca.len() - 1;
    let db = cb.len() - 1;
    let strip = |p: &MPoly| p.compact_without(var);
    if da == 0 {
        return Ok(strip(&ca[0].pow(db as u32)));
    }
    if db == 0 {
        return Ok(strip(&cb[0].pow(da as u32)));
    }
    let n = da + db;
    let zero = ca[0].scale(&BigRational::zero());
    let mut rows = vec![vec![zero.clone(); n]; n];
    for i in 0..db {
        for (j, c) in ca.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in cb.iter().rev().enumerate() {
            rows[db + i][i + j] = c.clone();
        }
    }
    Ok(strip(&determinant(rows)?))
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(mut m: Vec<Vec<MPoly>>) -> Result<MPoly, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(MPoly::int(1));
    }
    let mut negate = false;
    let mut prev = MPoly::int(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(m[0][0].scale(&BigRational::zero()));
            };
            m.swap(k, piv);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).ok_or(PolyError::InexactDivision)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Equality as polynomials: variable lists are aligned first, so absent
/// variables and ordering do not matter.
impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            let entry = a.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                a.terms.remove(&e);
            }
        }
        a
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let (a, b) = self.aligned(rhs);
        let mut out: BTreeMap<Vec<i32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        MPoly {
            vars: a.vars,
            terms: out,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
