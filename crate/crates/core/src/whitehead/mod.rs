//! The Whitehead link group, its character variety in the `(s, t, u, v)`
//! chart, twisted-double gluing and algebraic bending.

mod bending;
mod chart;
mod gluing;
mod verify;

pub use bending::{bend, bend_gluing, diagonalizing_conjugator};
pub use chart::{
    chart_rep, component_membership, reducible_nonabelian_family, relator_residual, restriction_eigenvalues,
    ChartKind, Component, FamilySide, Restriction, WhiteheadChart,
};
pub use gluing::{gluing_residual, solve_gluing, GluingConfig, SolverConfig};
pub use verify::{f_equivalence_check, EquivalenceReport, SampleFailure};

use std::sync::OnceLock;

use num_rational::BigRational;
use thiserror::Error;

use crate::elimination::{ElimError, Presentation, Word};
use crate::poly::{MPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WhError {
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("chart {kind:?} requires {requirement}")]
    ChartViolation { kind: ChartKind, requirement: &'static str },
    #[error("family parameter must avoid 0 and ±1")]
    ExcludedParameter,
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("relator not satisfied (residual {0:e})")]
    RelatorNotSatisfied(f64),
    #[error("samples must be positive")]
    NoSamples,
    #[error("seeds must be positive")]
    NoSeeds,
    #[error("boundary restriction is not diagonal with an eigenvalue other than ±1")]
    NotDiagonal,
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Both sides of the defining relation, and the two peripheral words.
#[derive(Clone, Debug, PartialEq)]
pub struct WhiteheadGroup {
    /// Generators `x`, `y`; single relator `lhs · rhs⁻¹`; meridian `x`,
    /// longitude `λ_x`.
    pub presentation: Presentation,
    pub lhs: Word,
    pub rhs: Word,
    pub lambda_x: Word,
    pub lambda_y: Word,
}

const LHS: &str = "yxYXyXYx";
const RHS: &str = "xYXyXYxy";
const LAMBDA_X: &str = "YxyXyxYX";
const LAMBDA_Y: &str = "YXyxYxyX";

pub fn whitehead_group() -> &'static WhiteheadGroup {
    static G: OnceLock<WhiteheadGroup> = OnceLock::new();
    G.get_or_init(|| {
        let gens = ["x".to_string(), "y".to_string()];
        let parse = |s: &str| Word::parse(s, &gens).expect("fixed word");
        let (lhs, rhs) = (parse(LHS), parse(RHS));
        let relator = &lhs * &rhs.inverse();
        let presentation = Presentation {
            generators: gens.to_vec(),
            relators: vec![relator],
            meridian: Word::gen("x"),
            longitude: parse(LAMBDA_X),
        };
        presentation.validate().expect("valid presentation");
        WhiteheadGroup {
            presentation,
            lhs,
            rhs,
            lambda_x: parse(LAMBDA_X),
            lambda_y: parse(LAMBDA_Y),
        }
    })
}

pub fn whitehead_presentation() -> Presentation {
    whitehead_group().presentation.clone()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The polynomial in `(s, t, u, v)` whose zero set is the chart locus of
/// representations, a cubic in `w = st`:
///
/// `u²v²w³ + uv(u²v² - 2u² - 2v² + 1)w² + (u⁴ + v⁴ - u²(v²-1)² - v²(u²-1)²)w + uv(u²-1)(v²-1)`.
pub fn f_poly() -> MPoly {
    let [s, t, u, v] = ["s", "t", "u", "v"].map(MPoly::var);
    let one = MPoly::int(1);
    let w = &s * &t;
    let (u2, v2) = (u.pow(2), v.pow(2));
    let uv = &u * &v;
    let c3 = &u2 * &v2;
    let c2 = &uv * &(&(&(&(&u2 * &v2) - &u2.scale(&q(2))) - &v2.scale(&q(2))) + &one);
    let c1 = &(&(&u.pow(4) + &v.pow(4)) - &(&u2 * &(&v2 - &one).pow(2))) - &(&v2 * &(&u2 - &one).pow(2));
    let c0 = &(&uv * &(&u2 - &one)) * &(&v2 - &one);
    let f = &(&(&(&c3 * &w.pow(3)) + &(&c2 * &w.pow(2))) + &(&c1 * &w)) + &c0;
    f.with_vars(&["s", "t", "u", "v"].map(String::from))
}

/// Coefficients `[c0, c1, c2, c3]` of `f` as a cubic in `w = st`.
pub(crate) fn f_cubic_coefficients<S: crate::elimination::Scalar>(u: &S, v: &S) -> [S; 4] {
    let one = u.one_like();
    let two = one.add(&one);
    let (u2, v2) = (u.mul(u), v.mul(v));
    let uv = u.mul(v);
    let u2m = u2.sub(&one);
    let v2m = v2.sub(&one);
    let c3 = u2.mul(&v2);
    let c2 = uv.mul(&u2.mul(&v2).sub(&two.mul(&u2)).sub(&two.mul(&v2)).add(&one));
    let c1 = u2
        .mul(&u2)
        .add(&v2.mul(&v2))
        .sub(&u2.mul(&v2m).mul(&v2m))
        .sub(&v2.mul(&u2m).mul(&u2m));
    let c0 = uv.mul(&u2m).mul(&v2m);
    [c0, c1, c2, c3]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_shape() {
        let g = whitehead_group();
        assert_eq!(g.presentation.relators[0].len(), 16);
        let p = &g.presentation;
        assert_eq!(p.exponent_vector(&p.relators[0]), vec![0, 0]);
        assert_eq!(p.exponent_vector(&g.lambda_x), vec![0, 0]);
        assert_eq!(p.exponent_vector(&g.lambda_y), vec![0, 0]);
        assert_eq!(g.lambda_x.to_string(), LAMBDA_X);
        assert_eq!(g.lambda_y.to_string(), LAMBDA_Y);
    }

    #[test]
    fn f_special_values() {
        let f = f_poly();
        let at = |s: i64, t: &MPoly, u: i64, v: i64| {
            f.substitute("s", &MPoly::int(s))
                .and_then(|g| g.substitute("t", t))
                .and_then(|g| g.substitute("u", &MPoly::int(u)))
                .and_then(|g| g.substitute("v", &MPoly::int(v)))
                .unwrap()
                .compact()
        };
        let w = MPoly::var("w");
        let expected = &(&w.pow(3) - &w.pow(2).scale(&q(2))) + &w.scale(&q(2));
        assert_eq!(at(1, &w, 1, 1), expected);
        // st = 0 leaves uv(u²-1)(v²-1): 2·3·3·8 at (u, v) = (2, 3).
        assert_eq!(at(5, &MPoly::int(0), 2, 3), MPoly::int(144));
    }

    #[test]
    fn cubic_coefficients_match_f() {
        let f = f_poly();
        let (u, v) = (q(3), BigRational::new(2.into(), 5.into()));
        let c = f_cubic_coefficients(&u, &v);
        let g = f
            .substitute("s", &MPoly::int(1))
            .unwrap()
            .substitute("u", &MPoly::constant(u.clone()))
            .unwrap()
            .substitute("v", &MPoly::constant(v.clone()))
            .unwrap()
            .compact();
        let coeffs = g.coefficients_in("t").unwrap();
        assert_eq!(coeffs.len(), 4);
        for (a, b) in coeffs.iter().zip(&c) {
            assert_eq!(a.constant_value().unwrap_or_else(|| q(0)), *b);
        }
    }
}
