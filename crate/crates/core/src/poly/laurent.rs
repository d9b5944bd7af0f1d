//! Bivariate integer Laurent polynomials in the boundary eigenvalues `(m, ℓ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bivariate::{gcd_all, BiPoly};
use super::{IntPoly1, PolyError};

/// A Laurent polynomial `Σ c · m^i ℓ^j` with integer coefficients.
///
/// Terms are keyed by `(i, j)`; their `BTreeMap` order is the lexicographic
/// `(m, ℓ)` term order used to fix the sign in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

/// Result of substituting `m = t^q`, `ℓ = t^-p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgerySubstitution {
    /// `t^d · A(t^q, t^-p)`, with nonzero constant term.
    pub poly: IntPoly1,
    /// The clearing exponent `d` (minus the lowest exponent of the Laurent
    /// substitution; may be negative).
    pub clearing_exponent: i64,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, em: i64, el: i64) -> Self {
        Self::from_terms([(c.into(), em, el)])
    }

    pub fn m() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn l() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds a polynomial from `(coefficient, e_m, e_ℓ)` triples, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, i64, i64)>) -> Self {
        let mut map: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (c, em, el) in terms {
            *map.entry((em, el)).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    /// Convenience for small fixtures: `[(c, e_m, e_ℓ), ...]`.
    pub fn from_i64_terms(terms: &[(i64, i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, a, b)| (BigInt::from(c), a, b)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, em: i64, el: i64) -> BigInt {
        self.terms.get(&(em, el)).cloned().unwrap_or_default()
    }

    fn min_max(&self, pick: impl Fn(&(i64, i64)) -> i64) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(pick);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// `(min, max)` exponent of `m`.
    pub fn m_range(&self) -> Option<(i64, i64)> {
        self.min_max(|k| k.0)
    }

    /// `(min, max)` exponent of `ℓ`.
    pub fn l_range(&self) -> Option<(i64, i64)> {
        self.min_max(|k| k.1)
    }

    /// Whether this is the normal form: minimal exponents zero, content one,
    /// positive leading coefficient in lex `(m, ℓ)` order.
    pub fn is_normal(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.m_range().unwrap().0 == 0
            && self.l_range().unwrap().0 == 0
            && gcd_all(self.terms.values()).is_one()
            && self.terms.values().next_back().unwrap().is_positive()
    }

    pub fn normalize(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::NormalizeZero);
        }
        let (lo_m, _) = self.m_range().unwrap();
        let (lo_l, _) = self.l_range().unwrap();
        let mut g = gcd_all(self.terms.values());
        if self.terms.values().next_back().unwrap().is_negative() {
            g = -g;
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a - lo_m, b - lo_l), c / &g))
                .collect(),
        })
    }

    fn require_normal(&self) -> Result<(), PolyError> {
        if self.is_zero() {
            Err(PolyError::ZeroPolynomial)
        } else if !self.is_normal() {
            Err(PolyError::NotNormal)
        } else {
            Ok(())
        }
    }

    /// Maximum `m`-exponent of a normal-form polynomial.
    pub fn deg_m(&self) -> Result<i64, PolyError> {
        self.require_normal()?;
        Ok(self.m_range().unwrap().1)
    }

    /// Maximum `ℓ`-exponent of a normal-form polynomial.
    pub fn deg_l(&self) -> Result<i64, PolyError> {
        self.require_normal()?;
        Ok(self.l_range().unwrap().1)
    }

    /// The coefficient `α_i(ℓ)` of `m^i`.
    pub fn coeff_slice(&self, i: i64) -> Result<IntPoly1, PolyError> {
        let n = self.deg_m()?;
        if i < 0 || i > n {
            return Err(PolyError::SliceOutOfRange { index: i, degree: n });
        }
        Ok(IntPoly1::from_terms(
            self.terms
                .range((i, i64::MIN)..=(i, i64::MAX))
                .map(|(&(_, b), c)| (c.clone(), b as u32)),
        ))
    }

    /// Substitutes `m = t^q`, `ℓ = t^-p` and clears the lowest power of `t`.
    pub fn substitute_surgery(&self, p: i64, q: i64) -> Result<SurgerySubstitution, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut laurent: BTreeMap<i128, BigInt> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let e = i128::from(q) * i128::from(a) - i128::from(p) * i128::from(b);
            *laurent.entry(e).or_default() += c;
        }
        laurent.retain(|_, c| !c.is_zero());
        // Only possible when distinct terms cancel under the substitution.
        let Some((&low, _)) = laurent.iter().next() else {
            return Ok(SurgerySubstitution {
                poly: IntPoly1::zero(),
                clearing_exponent: 0,
            });
        };
        let span = laurent.keys().next_back().unwrap() - low;
        if span > i128::from(u32::MAX) || low.unsigned_abs() > i64::MAX as u128 {
            return Err(PolyError::DegreeTooLarge {
                degree: usize::try_from(span).unwrap_or(usize::MAX),
                max: u32::MAX as usize,
            });
        }
        let low = low as i64;
        let poly = IntPoly1::from_terms(laurent.into_iter().map(|(e, c)| (c, (e as i64 - low) as u32)));
        Ok(SurgerySubstitution {
            poly,
            clearing_exponent: -low,
        })
    }

    pub fn eval(&self, m: Complex64, l: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c.to_f64().unwrap_or(f64::NAN) * m.powi(a as i32) * l.powi(b as i32))
            .sum()
    }

    /// `Σ |c| |m|^a |ℓ|^b`, the natural scale for residuals.
    pub fn eval_abs(&self, m: f64, l: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                c.abs().to_f64().unwrap_or(f64::INFINITY) * m.powi(a as i32) * l.powi(b as i32)
            })
            .sum()
    }

    pub fn derivative_m(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 != 0)
                .map(|(&(a, b), c)| (c * BigInt::from(a), a - 1, b)),
        )
    }

    pub fn derivative_l(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 != 0)
                .map(|(&(a, b), c)| (c * BigInt::from(b), a, b - 1)),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Swaps the roles of `m` and `ℓ`.
    pub fn swap_vars(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// As an element of `Z[m][ℓ]`, after shifting exponents to be nonnegative.
    pub(crate) fn to_bipoly(&self) -> BiPoly {
        let Some((lo_m, _)) = self.m_range() else {
            return BiPoly::new(Vec::new());
        };
        let (lo_l, hi_l) = self.l_range().unwrap();
        let mut rows = vec![Vec::new(); (hi_l - lo_l + 1) as usize];
        for (&(a, b), c) in &self.terms {
            rows[(b - lo_l) as usize].push((c.clone(), (a - lo_m) as u32));
        }
        BiPoly::new(rows.into_iter().map(IntPoly1::from_terms).collect())
    }

    pub(crate) fn from_bipoly(b: &BiPoly) -> Self {
        Self::from_terms(b.coeffs.iter().enumerate().flat_map(|(j, c)| {
            c.terms().map(move |(i, v)| (v.clone(), i as i64, j as i64))
        }))
    }

    /// Exact quotient in the Laurent ring, `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lo_m, lo_l) = (self.m_range().unwrap().0, self.l_range().unwrap().0);
        let (dlo_m, dlo_l) = (d.m_range().unwrap().0, d.l_range().unwrap().0);
        let q = self.to_bipoly().div_exact(&d.to_bipoly())?;
        let q = Self::from_bipoly(&q);
        Some(q.shift(lo_m - dlo_m, lo_l - dlo_l))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Multiplies by `m^a ℓ^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(x, y), c)| ((x + a, y + b), c.clone())).collect(),
        }
    }

    /// Greatest common divisor (normal form), one for coprime inputs.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let g = BiPoly::gcd(&a.to_bipoly(), &b.to_bipoly());
        Self::from_bipoly(&g).normalize().unwrap_or_else(|_| Self::one())
    }

    /// Part of `self` not depending on `ℓ` alone through a factor in `m`:
    /// divides out the `Z[m]`-content of the coefficients of `ℓ^j`.
    pub fn strip_m_content(&self) -> Result<Self, PolyError> {
        let b = self.to_bipoly();
        if b.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Self::from_bipoly(&b.primitive_part()).normalize()
    }

    /// Square-free part in normal form (repeated factors involving `ℓ` and
    /// `m` are both reduced).
    pub fn square_free(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let b = self.to_bipoly();
        let content = b.content();
        let prim = b.primitive_part().square_free_y();
        let content_sf: IntPoly1 = content
            .square_free_decomposition()
            .into_iter()
            .fold(IntPoly1::one(), |acc, (f, _)| &acc * &f);
        Self::from_bipoly(&prim.scale(&content_sf)).normalize()
    }

    /// Divides out `factor` as often as it divides, returning the cofactor
    /// and the multiplicity.
    pub fn strip_factor(&self, factor: &Self) -> (Self, u32) {
        let mut cur = self.clone();
        let mut k = 0;
        while let Some(q) = cur.div_exact(factor) {
            if q == cur {
                break;
            }
            cur = q;
            k += 1;
        }
        (cur, k)
    }

    pub fn fmt_vars(&self, m: &str, l: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (v, e) in [(m, a), (l, b)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("m", "l"))
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        BiLaurent::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(&(a, b), c)| (c.clone(), a, b)),
        )
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                *out.entry((a + x, b + y)).or_default() += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        BiLaurent { terms: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiLaurent {
            type Output = BiLaurent;
            fn $m(self, rhs: BiLaurent) -> BiLaurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> BiLaurent {
        BiLaurent::from_i64_terms(&[(1, 6, 1), (1, 0, 0)])
    }

    #[test]
    fn normalize_examples() {
        let a = BiLaurent::from_i64_terms(&[(2, 2, 1), (-2, 1, -1)]);
        assert_eq!(
            a.normalize().unwrap(),
            BiLaurent::from_i64_terms(&[(1, 1, 2), (-1, 0, 0)])
        );
        assert_eq!(trefoil().normalize().unwrap(), trefoil());
        let neg = BiLaurent::from_i64_terms(&[(-1, 0, 1), (1, 0, 0)]);
        assert_eq!(neg.normalize().unwrap(), BiLaurent::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]));
        assert_eq!(BiLaurent::zero().normalize(), Err(PolyError::NormalizeZero));
    }

    #[test]
    fn mul_examples() {
        let sq = &trefoil() * &trefoil();
        assert_eq!(sq, BiLaurent::from_i64_terms(&[(1, 12, 2), (2, 6, 1), (1, 0, 0)]));
        assert_eq!(&trefoil() * &BiLaurent::one(), trefoil());
        let a = &(&BiLaurent::m() - &BiLaurent::one()) * &(&BiLaurent::l() - &BiLaurent::one());
        assert_eq!(
            a,
            BiLaurent::from_i64_terms(&[(1, 1, 1), (-1, 1, 0), (-1, 0, 1), (1, 0, 0)])
        );
    }

    #[test]
    fn degrees_and_slices() {
        assert_eq!(trefoil().deg_m().unwrap(), 6);
        let l1 = BiLaurent::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]);
        assert_eq!(l1.deg_m().unwrap(), 0);
        let c = BiLaurent::from_i64_terms(&[(1, 4, 2), (3, 1, 0), (-7, 0, 0)]);
        assert_eq!(c.deg_m().unwrap(), 4);
        assert_eq!(trefoil().coeff_slice(6).unwrap(), IntPoly1::t());
        assert_eq!(trefoil().coeff_slice(0).unwrap(), IntPoly1::one());
        assert_eq!(trefoil().coeff_slice(3).unwrap(), IntPoly1::zero());
        assert!(matches!(
            trefoil().coeff_slice(7),
            Err(PolyError::SliceOutOfRange { .. })
        ));
        assert_eq!(BiLaurent::zero().deg_m(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn surgery_substitution_examples() {
        let s = trefoil().substitute_surgery(1, 5).unwrap();
        assert_eq!(s.poly, IntPoly1::from_terms([(1.into(), 29), (1.into(), 0)]));
        assert_eq!(s.clearing_exponent, 0);

        let l1 = BiLaurent::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]);
        let s = l1.substitute_surgery(1, 1).unwrap();
        assert_eq!(s.poly, IntPoly1::from_coeffs(&[1, -1]));
        assert_eq!(s.clearing_exponent, 1);

        let m1 = BiLaurent::from_i64_terms(&[(1, 1, 0), (-1, 0, 0)]);
        let s = m1.substitute_surgery(0, 1).unwrap();
        assert_eq!(s.poly, IntPoly1::from_coeffs(&[-1, 1]));
        assert_eq!(s.clearing_exponent, 0);
    }

    #[test]
    fn exact_division_and_gcd() {
        let f = BiLaurent::from_i64_terms(&[(1, 1, 1), (-1, 0, 0)]);
        let prod = &f * &trefoil();
        assert_eq!(prod.div_exact(&f).unwrap(), trefoil());
        assert!(trefoil().div_exact(&f).is_none());
        assert_eq!(BiLaurent::gcd(&prod, &(&f * &f)), f);
        let shifted = prod.shift(-3, 2);
        assert_eq!(shifted.div_exact(&f).unwrap(), trefoil().shift(-3, 2));
    }

    #[test]
    fn square_free_and_strip() {
        let l1 = BiLaurent::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]);
        let m1 = BiLaurent::from_i64_terms(&[(1, 1, 0), (-1, 0, 0)]);
        let a = &(&trefoil() * &trefoil()) * &(&(&l1 * &l1) * &(&m1 * &m1));
        let sf = a.square_free().unwrap();
        assert_eq!(sf, (&(&trefoil() * &l1) * &m1).normalize().unwrap());
        let (rest, k) = a.strip_factor(&l1);
        assert_eq!(k, 2);
        assert_eq!(rest, &(&trefoil() * &trefoil()) * &(&m1 * &m1));
        assert_eq!(a.strip_m_content().unwrap(), (&(&trefoil() * &trefoil()) * &(&l1 * &l1)).normalize().unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(trefoil().to_string(), "m^6*l + 1");
        assert_eq!(BiLaurent::from_i64_terms(&[(-2, -1, 3)]).to_string(), "-2*m^-1*l^3");
    }
}
