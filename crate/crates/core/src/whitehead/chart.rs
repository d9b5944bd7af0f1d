use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{whitehead_group, WhError};
use crate::elimination::{eval_word, Assignment, Scalar, Sl2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartKind {
    /// `s = 1`.
    U1,
    /// `t = 1`.
    U2,
    /// Diagonal representations, `s = t = 0`.
    X0,
    General,
}

/// `x ↦ [[u, s], [0, 1/u]]`, `y ↦ [[v, 0], [t, 1/v]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhiteheadChart<S> {
    pub s: S,
    pub t: S,
    pub u: S,
    pub v: S,
    pub kind: ChartKind,
}

impl<S: Scalar> WhiteheadChart<S> {
    pub fn new(kind: ChartKind, s: S, t: S, u: S, v: S) -> Result<Self, WhError> {
        if u.inverse().is_none() {
            return Err(WhError::ZeroParameter("u"));
        }
        if v.inverse().is_none() {
            return Err(WhError::ZeroParameter("v"));
        }
        let one = u.one_like();
        let zero = u.zero_like();
        let requirement = match kind {
            ChartKind::U1 if s != one => Some("s = 1"),
            ChartKind::U2 if t != one => Some("t = 1"),
            ChartKind::X0 if s != zero || t != zero => Some("s = t = 0"),
            _ => None,
        };
        if let Some(requirement) = requirement {
            return Err(WhError::ChartViolation { kind, requirement });
        }
        Ok(Self { s, t, u, v, kind })
    }

    pub fn u1(t: S, u: S, v: S) -> Result<Self, WhError> {
        Self::new(ChartKind::U1, u.one_like(), t, u, v)
    }

    pub fn u2(s: S, u: S, v: S) -> Result<Self, WhError> {
        Self::new(ChartKind::U2, s, u.one_like(), u, v)
    }

    pub fn diagonal(u: S, v: S) -> Result<Self, WhError> {
        Self::new(ChartKind::X0, u.zero_like(), u.zero_like(), u, v)
    }

    pub fn general(s: S, t: S, u: S, v: S) -> Result<Self, WhError> {
        Self::new(ChartKind::General, s, t, u, v)
    }

    /// `f(s, t, u, v)`.
    pub fn f_value(&self) -> S {
        let w = self.s.mul(&self.t);
        let [c0, c1, c2, c3] = super::f_cubic_coefficients(&self.u, &self.v);
        c3.mul(&w).add(&c2).mul(&w).add(&c1).mul(&w).add(&c0)
    }
}

pub fn chart_rep<S: Scalar>(c: &WhiteheadChart<S>) -> Result<Assignment<S>, WhError> {
    let ui = c.u.inverse().ok_or(WhError::ZeroParameter("u"))?;
    let vi = c.v.inverse().ok_or(WhError::ZeroParameter("v"))?;
    let zero = c.u.zero_like();
    let x = Sl2::new_unchecked(c.u.clone(), c.s.clone(), zero.clone(), ui);
    let y = Sl2::new_unchecked(c.v.clone(), zero, c.t.clone(), vi);
    Ok(BTreeMap::from([("x".to_string(), x), ("y".to_string(), y)]))
}

/// `ρ(lhs) - ρ(rhs)` for the defining relation.
fn relator_defect<S: Scalar>(c: &WhiteheadChart<S>) -> Result<Sl2<S>, WhError> {
    let rep = chart_rep(c)?;
    let g = whitehead_group();
    Ok(eval_word(&g.lhs, &rep)?.sub(&eval_word(&g.rhs, &rep)?))
}

/// Sum of entry magnitudes of `ρ(lhs) - ρ(rhs)`. In exact domains this is
/// zero exactly when the relation holds.
pub fn relator_residual<S: Scalar>(c: &WhiteheadChart<S>) -> Result<f64, WhError> {
    Ok(relator_defect(c)?.magnitude())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySide {
    /// `x` parabolic, `y` diagonal.
    XParabolic,
    /// `y` parabolic, `x` diagonal.
    YParabolic,
}

/// The reducible non-abelian representations: `x ↦ [[±1, 1], [0, ±1]]`,
/// `y ↦ diag(v, 1/v)`, or the transposed family with `x` diagonal.
pub fn reducible_nonabelian_family<S: Scalar>(side: FamilySide, sign: i64, param: S) -> Result<WhiteheadChart<S>, WhError> {
    let one = param.one_like();
    let e = match sign {
        1 => one.clone(),
        -1 => one.neg(),
        _ => return Err(WhError::BadSign(sign)),
    };
    let tol = 1e-12;
    if param.is_negligible(tol) || param.sub(&one).is_negligible(tol) || param.add(&one).is_negligible(tol) {
        return Err(WhError::ExcludedParameter);
    }
    match side {
        FamilySide::XParabolic => WhiteheadChart::new(ChartKind::U1, one, param.zero_like(), e, param),
        FamilySide::YParabolic => WhiteheadChart::new(ChartKind::U2, param.zero_like(), one, param, e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    X0,
    X1,
    X0AndX1,
    Indeterminate,
}

enum Verdict {
    Zero,
    Nonzero,
    Unclear,
}

fn verdict<S: Scalar>(x: &S, tol: f64) -> Verdict {
    if x.is_negligible(tol) {
        Verdict::Zero
    } else if !x.is_negligible(tol * 1e3) {
        Verdict::Nonzero
    } else {
        Verdict::Unclear
    }
}

/// Which component of the character variety the character lies on.
///
/// Irreducible (commutator trace not 2) means `X1`. A reducible character
/// equals a diagonal one, which lies on `X1` as well exactly when one of the
/// generator traces is `±2`.
pub fn component_membership<S: Scalar>(c: &WhiteheadChart<S>, tol: f64) -> Result<Component, WhError> {
    let defect = relator_defect(c)?;
    if !defect.is_negligible(tol) {
        return Err(WhError::RelatorNotSatisfied(defect.magnitude()));
    }
    let rep = chart_rep(c)?;
    let (x, y) = (&rep["x"], &rep["y"]);
    let one = c.u.one_like();
    let two = one.add(&one);
    match verdict(&x.commutator(y).trace().sub(&two), tol) {
        Verdict::Nonzero => return Ok(Component::X1),
        Verdict::Unclear => return Ok(Component::Indeterminate),
        Verdict::Zero => {}
    }
    let mut unclear = false;
    for tr in [x.trace(), y.trace()] {
        for target in [two.clone(), two.neg()] {
            match verdict(&tr.sub(&target), tol) {
                Verdict::Zero => return Ok(Component::X0AndX1),
                Verdict::Unclear => unclear = true,
                Verdict::Nonzero => {}
            }
        }
    }
    Ok(if unclear { Component::Indeterminate } else { Component::X0 })
}

/// Eigenvalue data of the restriction to the `y` boundary torus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Restriction {
    /// `ρ(y)` and `ρ(λ_y)` act on a common eigenvector by `m` and `ℓ`.
    Diagonal { m: Complex64, l: Complex64 },
    /// `ρ(y)` has a repeated eigenvalue; no eigenvalue coordinates.
    Parabolic { trace: Complex64 },
}

pub fn restriction_eigenvalues(c: &WhiteheadChart<Complex64>, tol: f64) -> Result<Restriction, WhError> {
    let rep = chart_rep(c)?;
    let y = &rep["y"];
    let lam = eval_word(&whitehead_group().lambda_y, &rep)?;
    let tr = y.trace();
    let disc = tr * tr - 4.0;
    if disc.norm() <= tol {
        return Ok(Restriction::Parabolic { trace: tr });
    }
    let m = (tr + disc.sqrt()) / 2.0;
    // Eigenvector of [[a, b], [c, d]] for m: (b, m - a) or (m - d, c).
    let w1 = [y.b, m - y.a];
    let w2 = [m - y.d, y.c];
    let w = if w1[0].norm() + w1[1].norm() >= w2[0].norm() + w2[1].norm() { w1 } else { w2 };
    let lw = [lam.a * w[0] + lam.b * w[1], lam.c * w[0] + lam.d * w[1]];
    let l = if w[0].norm() >= w[1].norm() { lw[0] / w[0] } else { lw[1] / w[1] };
    Ok(Restriction::Diagonal { m, l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn chart_invariants() {
        assert!(matches!(
            WhiteheadChart::u1(q(1), q(0), q(1)),
            Err(WhError::ZeroParameter("u"))
        ));
        assert!(matches!(
            WhiteheadChart::new(ChartKind::X0, q(1), q(0), q(2), q(3)),
            Err(WhError::ChartViolation { .. })
        ));
        assert!(WhiteheadChart::u2(q(4), q(2), q(3)).is_ok());
    }

    #[test]
    fn diagonal_charts_satisfy_relation() {
        for (u, v) in [(2, 3), (-1, 5), (7, 1)] {
            let ch = WhiteheadChart::diagonal(q(u), q(v)).unwrap();
            assert_eq!(relator_residual(&ch).unwrap(), 0.0);
        }
        let ch = WhiteheadChart::diagonal(q(2), q(3)).unwrap();
        assert_eq!(component_membership(&ch, 0.0).unwrap(), Component::X0);
        let ch = WhiteheadChart::diagonal(q(-1), q(3)).unwrap();
        assert_eq!(component_membership(&ch, 0.0).unwrap(), Component::X0AndX1);
    }

    #[test]
    fn parabolic_fiber_point() {
        let ch = WhiteheadChart::u1(c(1.0, 1.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(ch.f_value().norm() < 1e-14);
        assert!(relator_residual(&ch).unwrap() < 1e-12);
        assert_eq!(component_membership(&ch, 1e-10).unwrap(), Component::X1);
    }

    #[test]
    fn off_curve_point() {
        let ch = WhiteheadChart::u1(q(1), q(2), q(3)).unwrap();
        assert_ne!(ch.f_value(), q(0));
        let chf = WhiteheadChart::u1(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!(relator_residual(&chf).unwrap() > 1e-3);
        assert!(matches!(
            component_membership(&chf, 1e-9),
            Err(WhError::RelatorNotSatisfied(_))
        ));
    }

    #[test]
    fn reducible_families() {
        let fam = reducible_nonabelian_family(FamilySide::XParabolic, 1, q(2)).unwrap();
        assert_eq!(relator_residual(&fam).unwrap(), 0.0);
        let rep = chart_rep(&fam).unwrap();
        let lam = eval_word(&whitehead_group().lambda_y, &rep).unwrap();
        assert_eq!(lam.trace(), q(2));
        assert_eq!(component_membership(&fam, 0.0).unwrap(), Component::X0AndX1);

        let fam = reducible_nonabelian_family(FamilySide::YParabolic, -1, q(3)).unwrap();
        assert_eq!(relator_residual(&fam).unwrap(), 0.0);
        assert_eq!(chart_rep(&fam).unwrap()["y"].trace(), q(-2));

        assert_eq!(
            reducible_nonabelian_family(FamilySide::XParabolic, 1, q(-1)),
            Err(WhError::ExcludedParameter)
        );
        assert_eq!(
            reducible_nonabelian_family(FamilySide::XParabolic, 2, q(5)),
            Err(WhError::BadSign(2))
        );
    }

    #[test]
    fn symbolic_families_satisfy_relation() {
        for sign in [1, -1] {
            let fam = reducible_nonabelian_family(FamilySide::XParabolic, sign, MPoly::var("v")).unwrap();
            assert!(relator_defect(&fam).unwrap().is_negligible(0.0));
            let fam = reducible_nonabelian_family(FamilySide::YParabolic, sign, MPoly::var("u")).unwrap();
            assert!(relator_defect(&fam).unwrap().is_negligible(0.0));
            let rep = chart_rep(&fam).unwrap();
            let lam = eval_word(&whitehead_group().lambda_y, &rep).unwrap();
            assert_eq!(lam.trace(), MPoly::int(2));
            assert_eq!(rep["y"].trace(), MPoly::int(2 * sign));
        }
    }

    #[test]
    fn symbolic_relation_is_a_multiple_of_f() {
        let ch = WhiteheadChart::general(
            MPoly::var("s"),
            MPoly::var("t"),
            MPoly::var("u"),
            MPoly::var("v"),
        )
        .unwrap();
        let f = super::super::f_poly();
        for e in relator_defect(&ch).unwrap().entries() {
            assert!(e.div_exact(&f).is_some());
        }
    }
}
