//! Univariate integer polynomials in a single variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A sparse polynomial with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty
/// map and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly1 {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exponent: u32) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exponent, c);
        }
        Self { coeffs }
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds a polynomial from ascending coefficients `[c0, c1, ...]`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (c.clone().into(), e as u32)),
        )
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, u32)>) -> Self {
        let mut coeffs: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            *coeffs.entry(e).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, exponent: u32) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.values().next_back().cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (c * BigInt::from(*e), e - 1)),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.coeffs {
            acc += c * num_traits::pow(x.clone(), *e as usize);
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(e, c)| z.powu(*e) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// `Σ |c_i| |z|^i`, the scale against which residuals are measured.
    pub fn eval_abs(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c.abs().to_f64().unwrap_or(f64::INFINITY) * r.powi(*e as i32))
            .sum()
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Exact division of every coefficient by `k`; panics if inexact.
    fn div_scalar(&self, k: &BigInt) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact scalar division");
                    (*e, q)
                })
                .collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Removes powers of `t` and fixes a positive leading coefficient, the
    /// usual normalization of Alexander polynomials up to units `±t^k`.
    pub fn unit_normalize(&self) -> Self {
        let Some(low) = self.low_degree() else {
            return Self::zero();
        };
        let shifted = Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e - low, c.clone())).collect(),
        };
        if shifted.leading_coeff().is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    fn to_dense(&self) -> Vec<BigInt> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let mut v = vec![BigInt::zero(); d as usize + 1];
        for (e, c) in &self.coeffs {
            v[*e as usize] = c.clone();
        }
        v
    }

    fn from_dense(v: Vec<BigInt>) -> Self {
        Self::from_terms(v.into_iter().enumerate().map(|(e, c)| (c, e as u32)))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        let (Some(da), Some(db)) = (self.degree(), b.degree()) else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let bd = b.to_dense();
        let lc = bd[db as usize].clone();
        let mut r = self.to_dense();
        let db = db as usize;
        let mut k = da as usize;
        while k >= db && r.len() > db {
            let top = std::mem::take(&mut r[k]);
            for c in r.iter_mut().take(k) {
                *c *= &lc;
            }
            if !top.is_zero() {
                for (i, bc) in bd.iter().enumerate().take(db) {
                    r[k - db + i] -= &top * bc;
                }
            }
            r.truncate(k);
            if k == 0 {
                break;
            }
            k -= 1;
        }
        Self::from_dense(r)
    }

    /// Exact quotient `self / b` in `Z[t]`, or `None` when `b` does not divide.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let da = self.degree()?;
        if da < db {
            return None;
        }
        let bd = b.to_dense();
        let lc = &bd[db as usize];
        let mut r = self.to_dense();
        let mut q = vec![BigInt::zero(); (da - db) as usize + 1];
        for k in (db as usize..=da as usize).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (quot, rem) = r[k].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = k - db as usize;
            for (i, bc) in bd.iter().enumerate() {
                r[shift + i] -= &quot * bc;
            }
            q[shift] = quot;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::from_dense(q))
        } else {
            None
        }
    }

    /// Greatest common divisor over `Q[t]`, cleared to a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.primitive_part();
        let mut y = b.primitive_part();
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        loop {
            if y.degree() == Some(0) {
                return Self::one();
            }
            let r = x.pseudo_rem(&y);
            if r.is_zero() {
                return y.primitive_part();
            }
            x = y;
            y = r.primitive_part();
        }
    }

    /// Gcd in `Z[t]`: integer gcd of contents times [`IntPoly1::gcd`].
    pub fn gcd_z(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            return Self::zero();
        }
        let c = a.content().gcd(&b.content());
        Self::gcd(a, b).scale(&c)
    }

    /// Square-free decomposition (Yun): pairs `(a_i, i)` with
    /// `pp(self) = Π a_i^i`, each `a_i` square-free, primitive and
    /// non-constant.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let b = Self::gcd(&f, &fp);
        let mut c = f.div_exact(&b).expect("gcd divides f");
        let mut d = &fp.div_exact(&b).expect("gcd divides f'") - &c.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let a = Self::gcd(&c, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            c = c.div_exact(&a).expect("a divides c");
            d = &d.div_exact(&a).expect("a divides d") - &c.derivative();
            i += 1;
        }
        out
    }

    /// Coefficients as complex floats, ascending, dense.
    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.to_dense()
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for IntPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl Add for &IntPoly1 {
    type Output = IntPoly1;
    fn add(self, rhs: &IntPoly1) -> IntPoly1 {
        IntPoly1::from_terms(
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(e, c)| (c.clone(), *e)),
        )
    }
}

impl Sub for &IntPoly1 {
    type Output = IntPoly1;
    fn sub(self, rhs: &IntPoly1) -> IntPoly1 {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly1 {
    type Output = IntPoly1;
    fn neg(self) -> IntPoly1 {
        IntPoly1 {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for IntPoly1 {
    type Output = IntPoly1;
    fn neg(self) -> IntPoly1 {
        -&self
    }
}

impl Mul for &IntPoly1 {
    type Output = IntPoly1;
    fn mul(self, rhs: &IntPoly1) -> IntPoly1 {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                *out.entry(ea + eb).or_default() += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        IntPoly1 { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly1 {
            type Output = IntPoly1;
            fn $m(self, rhs: IntPoly1) -> IntPoly1 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
