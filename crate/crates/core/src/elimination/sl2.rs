use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ElimError, Word};
use crate::poly::MPoly;

/// Coefficient domain for matrix words.
pub trait Scalar: Clone + Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse where one exists in the domain.
    fn inverse(&self) -> Option<Self>;
    fn is_exact() -> bool;
    /// Exact zero test for exact domains, `|x| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;
    /// Size used for residual norms; exact domains report 0 or 1.
    fn magnitude(&self) -> f64;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn is_exact() -> bool {
        true
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Scalar for Complex<BigRational> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Complex::new(&self.re / &n, -&self.im / &n))
    }
    fn is_exact() -> bool {
        true
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.inv())
    }
    fn is_exact() -> bool {
        false
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::int(0)
    }
    fn one_like(&self) -> Self {
        MPoly::int(1)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    /// Only monomials are units of the Laurent ring.
    fn inverse(&self) -> Option<Self> {
        if self.num_terms() != 1 {
            return None;
        }
        let (exps, c) = self.terms().next().unwrap();
        let inv: Vec<i32> = exps.iter().map(|e| -e).collect();
        Some(MPoly::from_terms(
            self.vars().iter().map(String::as_str).collect::<Vec<_>>().as_slice(),
            [(inv, c.recip())],
        ))
    }
    fn is_exact() -> bool {
        true
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]` of determinant one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

/// Tolerance on `|det - 1|` for floating-point matrices.
pub const DET_TOLERANCE: f64 = 1e-9;

impl<S: Scalar> Sl2<S> {
    /// Checks the determinant (exactly, or to [`DET_TOLERANCE`]).
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self, ElimError> {
        let m = Self::new_unchecked(a, b, c, d);
        let defect = m.det().sub(&m.a.one_like());
        if !defect.is_negligible(DET_TOLERANCE) {
            return Err(ElimError::NotSl2 {
                defect: if S::is_exact() { f64::NAN } else { defect.magnitude() },
            });
        }
        Ok(m)
    }

    pub fn new_unchecked(a: S, b: S, c: S, d: S) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity_like(x: &S) -> Self {
        Self::new_unchecked(x.one_like(), x.zero_like(), x.zero_like(), x.one_like())
    }

    pub fn det(&self) -> S {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> S {
        self.a.add(&self.d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new_unchecked(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    /// Inverse via the adjugate, valid since the determinant is one.
    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new_unchecked(self.a.sub(&o.a), self.b.sub(&o.b), self.c.sub(&o.c), self.d.sub(&o.d))
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Frobenius-style size: sum of entry magnitudes.
    pub fn magnitude(&self) -> f64 {
        self.entries().iter().map(|e| e.magnitude()).sum()
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.entries().iter().all(|e| e.is_negligible(tol))
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).mul(&self.inverse()).mul(&o.inverse())
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Sl2<T> {
        Sl2 {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

pub type Assignment<S> = BTreeMap<String, Sl2<S>>;

/// Evaluates `w` with generators sent to the assigned matrices.
pub fn eval_word<S: Scalar>(w: &Word, assignment: &Assignment<S>) -> Result<Sl2<S>, ElimError> {
    let any = assignment.values().next().ok_or(ElimError::EmptyAssignment)?;
    let mut acc = Sl2::identity_like(&any.a);
    let mut inverses: BTreeMap<&str, Sl2<S>> = BTreeMap::new();
    for l in w.letters() {
        let g = assignment
            .get(&l.gen)
            .ok_or_else(|| ElimError::Unassigned(l.gen.clone()))?;
        acc = if l.inverse {
            let inv = inverses.entry(l.gen.as_str()).or_insert_with(|| g.inverse());
            acc.mul(inv)
        } else {
            acc.mul(g)
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rat_assignment() -> Assignment<BigRational> {
        let x = Sl2::new(q(2, 1), q(1, 1), q(3, 1), q(2, 1)).unwrap();
        let y = Sl2::new(q(1, 2), q(0, 1), q(5, 3), q(2, 1)).unwrap();
        BTreeMap::from([("x".to_string(), x), ("y".to_string(), y)])
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(Sl2::new(q(2, 1), q(0, 1), q(0, 1), q(2, 1)).is_err());
        let z = Complex64::new(1.0, 0.0);
        assert!(Sl2::new(z, z * 0.0, z * 0.0, z * (1.0 + 1e-12)).is_ok());
    }

    #[test]
    fn word_evaluation() {
        let g = vec!["x".to_string(), "y".to_string()];
        let a = rat_assignment();
        let id = eval_word(&Word::empty(), &a).unwrap();
        assert_eq!(id, Sl2::identity_like(&q(1, 1)));
        assert_eq!(eval_word(&Word::parse("x", &g).unwrap(), &a).unwrap(), a["x"]);
        let x = &a["x"];
        assert_eq!(x.mul(&x.inverse()), id);
        let w = Word::parse("xyXXy", &g).unwrap();
        let direct = x.mul(&a["y"]).mul(&x.inverse()).mul(&x.inverse()).mul(&a["y"]);
        assert_eq!(eval_word(&w, &a).unwrap(), direct);
        assert!(matches!(
            eval_word(&Word::gen("z"), &a),
            Err(ElimError::Unassigned(_))
        ));
    }

    #[test]
    fn polynomial_matrices() {
        let m = MPoly::var("m");
        let minv = m.inverse().unwrap();
        let g = Sl2::new(m.clone(), MPoly::int(1), MPoly::int(0), minv).unwrap();
        assert_eq!(g.mul(&g.inverse()), Sl2::identity_like(&m));
        assert_eq!(g.trace(), &m + &m.inverse().unwrap());
    }
}
