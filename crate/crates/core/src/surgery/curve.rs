use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Slope, SurgeryError};
use crate::poly::BiLaurent;

/// `m^p ℓ^q - 1` in normal form.
pub fn surgery_poly(slope: Slope) -> BiLaurent {
    raw_curve(slope)
        .normalize()
        .expect("m^p l^q - 1 is never zero for a valid slope")
}

fn raw_curve(slope: Slope) -> BiLaurent {
    &BiLaurent::monomial(1, slope.p(), slope.q()) - &BiLaurent::one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonsingularReason {
    /// Both partials are nonzero monomials.
    MonomialPartials,
    /// `∂F/∂m` is a nonzero monomial and `∂F/∂ℓ = 0`.
    MonomialPartialM,
    /// `∂F/∂ℓ` is a nonzero monomial and `∂F/∂m = 0`.
    MonomialPartialL,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonsingularCertificate {
    pub slope: Slope,
    pub dm: BiLaurent,
    pub dl: BiLaurent,
    /// `None` means no certificate could be produced.
    pub reason: Option<NonsingularReason>,
}

impl NonsingularCertificate {
    pub fn certified(&self) -> bool {
        self.reason.is_some()
    }
}

/// Certifies that `F = m^p ℓ^q - 1` has no singular point on `(C*)^2`: a
/// nonzero monomial partial derivative cannot vanish there.
pub fn check_nonsingular(slope: Slope) -> NonsingularCertificate {
    let f = raw_curve(slope);
    let dm = f.derivative_m();
    let dl = f.derivative_l();
    let mono = |p: &BiLaurent| p.num_terms() == 1;
    let reason = match (mono(&dm), mono(&dl)) {
        (true, true) => Some(NonsingularReason::MonomialPartials),
        (true, false) if dl.is_zero() => Some(NonsingularReason::MonomialPartialM),
        (false, true) if dm.is_zero() => Some(NonsingularReason::MonomialPartialL),
        _ => None,
    };
    NonsingularCertificate {
        slope,
        dm,
        dl,
        reason,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalityConfig {
    /// Common points are listed individually only up to this count.
    pub max_points: usize,
}

impl Default for TransversalityConfig {
    fn default() -> Self {
        Self { max_points: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommonPoint {
    /// `(m, ℓ) = (e^{2πi x/D}, e^{2πi y/D})` with `D = |det|`.
    pub x: i64,
    pub y: i64,
    pub m: Complex64,
    pub l: Complex64,
    /// Determinant of the two tangent-line coefficient vectors
    /// `(p ℓ0, q m0)` and `(p' ℓ0, q' m0)`.
    pub local_determinant: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalityCertificate {
    pub a: Slope,
    pub b: Slope,
    /// `p q' - p' q`; the local determinant at every common point is
    /// `ℓ0 m0` times this.
    pub determinant: i128,
    /// Number of common points on `(C*)^2`, equal to `|determinant|`.
    pub point_count: u128,
    /// Enumerated common points, empty when `point_count` exceeds the cap.
    pub points: Vec<CommonPoint>,
}

/// Certifies that two distinct surgery curves meet transversally.
///
/// Common points satisfy `M (x, y)^T ≡ 0 mod D` for `M = [[p, q], [p', q']]`;
/// they form the group generated by the columns of `adj(M)` modulo `D`, which
/// is enumerated and checked exactly.
pub fn transversal(
    a: Slope,
    b: Slope,
    cfg: &TransversalityConfig,
) -> Result<TransversalityCertificate, SurgeryError> {
    let (p, q) = (a.p() as i128, a.q() as i128);
    let (p2, q2) = (b.p() as i128, b.q() as i128);
    let det = p * q2 - p2 * q;
    if det == 0 {
        return Err(SurgeryError::IdenticalSlopes(a, b));
    }
    let d = det.unsigned_abs();
    let mut points = Vec::new();
    if d <= cfg.max_points as u128 {
        let d = d as i128;
        let gens = [(q2.rem_euclid(d), (-p2).rem_euclid(d)), ((-q).rem_euclid(d), p.rem_euclid(d))];
        let mut seen = BTreeSet::from([(0i128, 0i128)]);
        let mut queue = VecDeque::from([(0i128, 0i128)]);
        while let Some((x, y)) = queue.pop_front() {
            for (gx, gy) in gens {
                let next = ((x + gx) % d, (y + gy) % d);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        debug_assert_eq!(seen.len() as i128, d);
        for (x, y) in seen {
            debug_assert_eq!((p * x + q * y) % d, 0);
            debug_assert_eq!((p2 * x + q2 * y) % d, 0);
            let m = Complex64::from_polar(1.0, TAU * x as f64 / d as f64);
            let l = Complex64::from_polar(1.0, TAU * y as f64 / d as f64);
            let local = (l * p as f64) * (m * q2 as f64) - (l * p2 as f64) * (m * q as f64);
            points.push(CommonPoint {
                x: x as i64,
                y: y as i64,
                m,
                l,
                local_determinant: local,
            });
        }
    }
    Ok(TransversalityCertificate {
        a,
        b,
        determinant: det,
        point_count: d,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn surgery_curves() {
        assert_eq!(surgery_poly(s(1, 0)), BiLaurent::from_i64_terms(&[(1, 1, 0), (-1, 0, 0)]));
        assert_eq!(surgery_poly(s(0, 1)), BiLaurent::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]));
        // ℓ^3 - m^2 up to the sign fixed by the lex (m, ℓ) convention.
        assert_eq!(surgery_poly(s(-2, 3)), BiLaurent::from_i64_terms(&[(1, 2, 0), (-1, 0, 3)]));
    }

    #[test]
    fn nonsingular() {
        for (p, q) in [(1, 2), (1, 0), (5, 7), (0, 1), (-3, 4)] {
            assert!(check_nonsingular(s(p, q)).certified(), "{p}/{q}");
        }
        assert_eq!(check_nonsingular(s(1, 0)).reason, Some(NonsingularReason::MonomialPartialM));
    }

    #[test]
    fn meridian_and_longitude_curves() {
        let c = transversal(s(1, 0), s(0, 1), &Default::default()).unwrap();
        assert_eq!(c.determinant, 1);
        assert_eq!(c.points.len(), 1);
        assert!((c.points[0].m - 1.0).norm() < 1e-15 && (c.points[0].l - 1.0).norm() < 1e-15);
    }

    #[test]
    fn point_count_matches_determinant() {
        let c = transversal(s(2, 3), s(3, 2), &Default::default()).unwrap();
        assert_eq!(c.determinant, -5);
        assert_eq!(c.points.len(), 5);
        for pt in &c.points {
            assert!((pt.m.powi(2) * pt.l.powi(3) - 1.0).norm() < 1e-12);
            assert!((pt.m.powi(3) * pt.l.powi(2) - 1.0).norm() < 1e-12);
            assert!((pt.local_determinant.norm() - 5.0).abs() < 1e-12);
        }
        assert_eq!(transversal(s(1, 1), s(1, 2), &Default::default()).unwrap().determinant, 1);
    }

    #[test]
    fn identical_slopes_rejected() {
        assert!(matches!(
            transversal(s(2, 3), s(-2, -3), &Default::default()),
            Err(SurgeryError::IdenticalSlopes(..))
        ));
    }
}
