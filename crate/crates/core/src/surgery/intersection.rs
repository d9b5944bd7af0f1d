use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{surgery_poly, Slope, SurgeryError};
use crate::poly::{backward_error, roots, BiLaurent, IntPoly1, PolyError, RootConfig, SurgerySubstitution};

fn guarded_substitution(a: &BiLaurent, slope: Slope) -> Result<SurgerySubstitution, SurgeryError> {
    if a.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if !a.is_normal() {
        return Err(PolyError::NotNormal.into());
    }
    let f = surgery_poly(slope);
    if f.divides(a) {
        return Err(SurgeryError::Divisible { factor: f });
    }
    let sub = a.substitute_surgery(slope.p(), slope.q())?;
    debug_assert!(!sub.poly.is_zero(), "nonzero exactly when F does not divide A");
    Ok(sub)
}

/// Number of intersection points of `A = 0` and `F_{p/q}` on `(C*)^2`,
/// counted with multiplicity: the degree of `t^d A(t^q, t^-p)`.
pub fn total_intersection(a: &BiLaurent, slope: Slope) -> Result<u64, SurgeryError> {
    let sub = guarded_substitution(a, slope)?;
    Ok(sub.poly.degree().unwrap_or(0) as u64)
}

/// `total_intersection(A, p/q) = n q + c` for every coprime `q >= q0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearGrowth {
    pub n: i64,
    pub c: i64,
    pub q0: i64,
}

impl LinearGrowth {
    pub fn predicted(&self, q: i64) -> i64 {
        self.n.saturating_mul(q).saturating_add(self.c)
    }
}

/// Growth law of the intersection count in `q` for fixed `p`.
///
/// Writing `A = Σ m^i α_i(ℓ)`, the `t`-exponents of slice `i` lie in
/// `q i + E_i` with `E_i = {-p j : j ∈ supp α_i}`. Once `q` is large the
/// maximum comes only from slice `n` and the minimum only from slice `0`, so
/// the span is `n q + max E_n - min E_0`. `q0` is the least `q >= 1` from
/// which both extremes are unique.
pub fn linear_growth_params(a: &BiLaurent, p: i64) -> Result<LinearGrowth, SurgeryError> {
    if p == 0 {
        return Err(SurgeryError::ZeroP);
    }
    let n = a.deg_m()?;
    let (p, wide_n) = (i128::from(p), i128::from(n));
    let mut top: Vec<Option<i128>> = Vec::with_capacity(n as usize + 1);
    let mut bot: Vec<Option<i128>> = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let slice = a.coeff_slice(i)?;
        if slice.is_zero() {
            top.push(None);
            bot.push(None);
            continue;
        }
        let (lo, hi) = (i128::from(slice.low_degree().unwrap()), i128::from(slice.degree().unwrap()));
        let (e1, e2) = (-p * lo, -p * hi);
        top.push(Some(e1.max(e2)));
        bot.push(Some(e1.min(e2)));
    }
    let top_n = top[n as usize].expect("leading slice is nonzero");
    let bot_0 = bot[0].expect("normal form has a nonzero m^0 slice");
    let mut q0 = 1i128;
    for i in 0..n as usize {
        if let Some(t) = top[i] {
            // q (n - i) > t - top_n
            q0 = q0.max((t - top_n).div_euclid(wide_n - i as i128) + 1);
        }
    }
    for i in 1..=n as usize {
        if let Some(b) = bot[i] {
            // q i > bot_0 - b
            q0 = q0.max((bot_0 - b).div_euclid(i as i128) + 1);
        }
    }
    let too_large = |v: i128| PolyError::DegreeTooLarge {
        degree: usize::try_from(v.unsigned_abs()).unwrap_or(usize::MAX),
        max: i64::MAX as usize,
    };
    let c = i64::try_from(top_n - bot_0).map_err(|_| too_large(top_n - bot_0))?;
    let q0 = i64::try_from(q0).map_err(|_| too_large(q0))?;
    Ok(LinearGrowth { n, c, q0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    /// `m = ±1` and `ℓ = ±1`.
    Type1,
    /// `ℓ = 1` and `m^2` a root of the Alexander polynomial.
    Type2,
    /// Neither of the above; ideal points are not detected.
    RegularOrType3,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurgeryPoint {
    pub t: Complex64,
    pub m: Complex64,
    pub l: Complex64,
    #[serde(rename = "mult")]
    pub multiplicity: u32,
    pub kind: PointKind,
    /// Scaled residual `|A(m, ℓ)| / Σ |c| |m|^i |ℓ|^j`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub p: i64,
    pub q: i64,
    pub total: u64,
    pub d: i64,
    pub points: Vec<SurgeryPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    pub roots: RootConfig,
    pub classify_tolerance: f64,
}

impl Default for PointConfig {
    fn default() -> Self {
        Self {
            roots: RootConfig::default(),
            classify_tolerance: 1e-8,
        }
    }
}

fn scaled_residual(a: &BiLaurent, m: Complex64, l: Complex64) -> f64 {
    let scale = a.eval_abs(m.norm(), l.norm());
    if scale == 0.0 {
        0.0
    } else {
        a.eval(m, l).norm() / scale
    }
}

/// Intersection points with multiplicities, classified against `alexander`.
pub fn intersection_points(
    a: &BiLaurent,
    slope: Slope,
    alexander: &IntPoly1,
    cfg: &PointConfig,
) -> Result<IntersectionReport, SurgeryError> {
    let sub = guarded_substitution(a, slope)?;
    let total = sub.poly.degree().unwrap_or(0) as u64;
    let found = if total == 0 {
        Vec::new()
    } else {
        roots(&sub.poly, &cfg.roots)?
    };
    let points = found
        .into_iter()
        .map(|r| {
            let t = r.value;
            let m = t.powi(slope.q() as i32);
            let l = t.powi(-slope.p() as i32);
            SurgeryPoint {
                t,
                m,
                l,
                multiplicity: r.multiplicity,
                kind: classify_point(m, l, alexander, cfg.classify_tolerance),
                residual: scaled_residual(a, m, l),
            }
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(points.iter().map(|p| p.multiplicity as u64).sum::<u64>(), total);
    Ok(IntersectionReport {
        p: slope.p(),
        q: slope.q(),
        total,
        d: sub.clearing_exponent,
        points,
    })
}

/// Sorts a point into the types that can be recognized from `(m, ℓ)` and
/// the Alexander polynomial alone.
pub fn classify_point(m: Complex64, l: Complex64, alexander: &IntPoly1, tol: f64) -> PointKind {
    let near_unit = |z: Complex64| (z - 1.0).norm() < tol || (z + 1.0).norm() < tol;
    if near_unit(m) && near_unit(l) {
        return PointKind::Type1;
    }
    if (l - 1.0).norm() < tol && !alexander.is_constant() {
        let coeffs = alexander.to_complex_coeffs();
        if backward_error(&coeffs, m * m) < tol {
            return PointKind::Type2;
        }
    }
    PointKind::RegularOrType3
}
