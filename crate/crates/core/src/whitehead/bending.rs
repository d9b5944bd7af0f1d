use num_complex::Complex64;

use super::{gluing_residual, GluingConfig, WhError};
use crate::elimination::{eval_word, Assignment, Scalar, Sl2};

const DIAGONAL_TOLERANCE: f64 = 1e-12;

/// `P` of determinant one with `P⁻¹ M P` diagonal, for `M` with distinct
/// eigenvalues.
pub fn diagonalizing_conjugator(mat: &Sl2<Complex64>) -> Option<Sl2<Complex64>> {
    let tr = mat.trace();
    let disc = (tr * tr - 4.0).sqrt();
    if disc.norm() < 1e-9 {
        return None;
    }
    let eig = [(tr + disc) / 2.0, (tr - disc) / 2.0];
    let vec_for = |e: Complex64| {
        let w1 = [mat.b, e - mat.a];
        let w2 = [e - mat.d, mat.c];
        if w1[0].norm() + w1[1].norm() >= w2[0].norm() + w2[1].norm() {
            w1
        } else {
            w2
        }
    };
    let (p, q) = (vec_for(eig[0]), vec_for(eig[1]));
    let det = p[0] * q[1] - q[0] * p[1];
    if det.norm() < 1e-300 {
        return None;
    }
    let k = det.sqrt();
    Some(Sl2::new_unchecked(p[0] / k, q[0] / k, p[1] / k, q[1] / k))
}

/// Algebraic bending: replaces `ρ2` by `A ρ2 A⁻¹` with `A = diag(a, 1/a)`.
///
/// `boundary` holds the images of the shared boundary subgroup; they must
/// be diagonal and not all `±I`, so that `A` centralizes them and the glued
/// representation is still well defined.
pub fn bend<S: Scalar>(second: &Assignment<S>, boundary: &[Sl2<S>], a: &S) -> Result<Assignment<S>, WhError> {
    let ainv = a.inverse().ok_or(WhError::ZeroParameter("a"))?;
    let diagonal = boundary
        .iter()
        .all(|g| g.b.is_negligible(DIAGONAL_TOLERANCE) && g.c.is_negligible(DIAGONAL_TOLERANCE));
    let generic = boundary.iter().any(|g| !g.a.sub(&g.d).is_negligible(DIAGONAL_TOLERANCE));
    if !diagonal || !generic {
        return Err(WhError::NotDiagonal);
    }
    let zero = a.zero_like();
    let big = Sl2::new_unchecked(a.clone(), zero.clone(), zero, ainv);
    Ok(second
        .iter()
        .map(|(k, g)| (k.clone(), g.conjugate_by(&big)))
        .collect())
}

/// Bends a glued representation along the companion's boundary torus:
/// `ρ1` is conjugated by an element of the centralizer of `ρ1(μ_J)`.
pub fn bend_gluing(g: &GluingConfig, a: Complex64) -> Result<GluingConfig, WhError> {
    let mu = eval_word(&g.companion.meridian, &g.rho1)?;
    let lon = eval_word(&g.companion.longitude, &g.rho1)?;
    let p = diagonalizing_conjugator(&mu).ok_or(WhError::NotDiagonal)?;
    let pinv = p.inverse();
    let into = |m: &Sl2<Complex64>| pinv.mul(m).mul(&p);
    let boundary = [into(&mu), into(&lon)];
    let local: Assignment<Complex64> = g.rho1.iter().map(|(k, m)| (k.clone(), into(m))).collect();
    let bent = bend(&local, &boundary, &a)?;
    let mut out = g.clone();
    out.rho1 = bent.iter().map(|(k, m)| (k.clone(), p.mul(m).mul(&pinv))).collect();
    out.residual = gluing_residual(&out)?;
    Ok(out)
}
