use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{eval_word, Assignment, ElimError, Presentation, Scalar, Sl2};
use crate::poly::{complex_roots, resultant, BiLaurent, MPoly, RootConfig};

/// Generator names of the chart: `(meridian, other)`.
fn chart_generators(p: &Presentation) -> Result<(String, String), ElimError> {
    if p.generators.len() != 2 {
        return Err(ElimError::NotTwoGenerator(p.generators.len()));
    }
    let mer = match p.meridian.letters() {
        [l] if !l.inverse => l.gen.clone(),
        _ => return Err(ElimError::MeridianNotGenerator(p.meridian.to_string())),
    };
    let other = p.generators.iter().find(|g| **g != mer).unwrap().clone();
    Ok((mer, other))
}

/// The chart `meridian ↦ [[m, 1], [0, 1/m]]`, `other ↦ [[m, 0], [s, 1/m]]`
/// over any scalar domain.
pub fn riley_chart<S: Scalar>(p: &Presentation, m: &S, s: &S) -> Result<Assignment<S>, ElimError> {
    let (mer, other) = chart_generators(p)?;
    let minv = m.inverse().ok_or(ElimError::Poly(crate::poly::PolyError::ZeroPolynomial))?;
    let (zero, one) = (m.zero_like(), m.one_like());
    let g1 = Sl2::new_unchecked(m.clone(), one, zero.clone(), minv.clone());
    let g2 = Sl2::new_unchecked(m.clone(), zero, s.clone(), minv);
    Ok(BTreeMap::from([(mer, g1), (other, g2)]))
}

fn symbolic_chart(p: &Presentation) -> Result<Assignment<MPoly>, ElimError> {
    riley_chart(p, &MPoly::var("m"), &MPoly::var("s"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RileyPolynomial {
    /// `φ(m, s)` in variables `m`, `s`; the constant 1 when there is no
    /// irreducible locus.
    pub phi: MPoly,
    /// Factors split off the gcd of the relator conditions.
    pub removed: Vec<BiLaurent>,
}

impl RileyPolynomial {
    pub fn has_irreducible_locus(&self) -> bool {
        self.phi.constant_value().is_none()
    }
}

/// The polynomial cutting out irreducible chart representations: the gcd
/// of the entries of `ρ(r) - I` over all relators, with powers of `s`
/// (the reducible locus `s = 0`) and factors in `m` alone removed.
pub fn riley_polynomial(p: &Presentation) -> Result<RileyPolynomial, ElimError> {
    let chart = symbolic_chart(p)?;
    let mut g: Option<BiLaurent> = None;
    let mut s_divides_all = true;
    for r in &p.relators {
        let e = eval_word(r, &chart)?;
        let id = Sl2::identity_like(&e.a);
        for entry in e.sub(&id).entries() {
            let b = entry.to_bilaurent("m", "s")?;
            if b.is_zero() {
                continue;
            }
            s_divides_all &= b.l_range().unwrap().0 > 0;
            g = Some(match g {
                None => b.normalize()?,
                Some(acc) => BiLaurent::gcd(&acc, &b),
            });
        }
    }
    let g = g.ok_or(ElimError::DegenerateRelators)?;
    let mut removed = Vec::new();
    if s_divides_all {
        removed.push(BiLaurent::l());
    }
    let phi = g.strip_m_content()?;
    if phi != g {
        let content = g.div_exact(&phi).expect("content divides").normalize()?;
        removed.push(content);
    }
    let phi = if phi.l_range().unwrap().1 == 0 {
        // No dependence on s: every solution is reducible.
        removed.push(phi);
        BiLaurent::one()
    } else {
        phi
    };
    Ok(RileyPolynomial {
        phi: MPoly::from_bilaurent(&phi, "m", "s").compact(),
        removed,
    })
}

/// Result of eliminating `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct APolynomial {
    pub apoly: BiLaurent,
    pub riley: RileyPolynomial,
    /// The `(1,1)` entry of `ρ(longitude)` in the chart.
    pub longitude_entry: MPoly,
    /// Multiplicity of `ℓ - 1` in the raw resultant.
    pub l_minus_one: u32,
}

/// A-polynomial by eliminating `s` between `φ(m, s) = 0` and
/// `ℓ = ρ(λ)_{11}`; on `φ = 0` the longitude commutes with the upper
/// triangular meridian and is itself upper triangular.
pub fn a_polynomial(p: &Presentation) -> Result<APolynomial, ElimError> {
    let riley = riley_polynomial(p)?;
    let chart = symbolic_chart(p)?;
    let lon = eval_word(&p.longitude, &chart)?;
    if !riley.has_irreducible_locus() {
        return Ok(APolynomial {
            apoly: BiLaurent::one(),
            riley,
            longitude_entry: lon.a,
            l_minus_one: 0,
        });
    }
    let phi = &riley.phi;
    if !lon.c.is_zero() && lon.c.div_exact(phi).is_none() {
        return Err(ElimError::LongitudeNotTriangular);
    }
    let (num, shift) = lon.a.with_vars(&["m".into(), "s".into()]).clear_monomial_denominator();
    debug_assert_eq!(shift[1], 0, "longitude entry is polynomial in s");
    let h = &MPoly::var("l").shift("m", shift[0]) - &num;
    let res = resultant(phi, &h, "s")?;
    let raw = res.to_bilaurent("m", "l")?;
    if raw.is_zero() {
        return Err(ElimError::ResultantVanishes {
            factor: riley_to_bilaurent(phi)?,
        });
    }
    let reduced = raw.normalize()?.strip_m_content()?.square_free()?;
    let l_minus_one = BiLaurent::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]);
    let (apoly, k) = reduced.strip_factor(&l_minus_one);
    let apoly = if apoly.is_constant() {
        BiLaurent::one()
    } else {
        apoly.normalize()?
    };
    Ok(APolynomial {
        apoly,
        riley,
        longitude_entry: lon.a,
        l_minus_one: k,
    })
}

fn riley_to_bilaurent(phi: &MPoly) -> Result<BiLaurent, ElimError> {
    Ok(phi.to_bilaurent("m", "s")?)
}

/// Numeric chart point `(m, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub m: Complex64,
    pub s: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftSample {
    pub m: Complex64,
    pub l: Complex64,
    pub s: Complex64,
    /// Largest of: relator defect, `|ρ(λ)_{11} - ℓ|`, `|ρ(λ)_{21}|` and
    /// the meridian–longitude commutator defect.
    pub residual: f64,
}

fn coefficients_in_second(b: &BiLaurent, m: Complex64) -> Vec<Complex64> {
    let hi = b.l_range().map_or(0, |r| r.1) as usize;
    let mut c = vec![Complex64::new(0.0, 0.0); hi + 1];
    for ((i, j), v) in b.terms() {
        c[j as usize] += v.to_f64().unwrap_or(f64::NAN) * m.powi(i as i32);
    }
    c
}

/// Lifts random points of `A(m, ℓ) = 0` to chart representations.
///
/// For each sample a random `m` in the annulus `0.5 <= |m| <= 2` is drawn,
/// a root `ℓ` of `A(m, ·)` chosen, and among the roots `s` of `φ(m, ·)` the
/// one whose longitude eigenvalue is closest to `ℓ` is kept.
pub fn lift_points(
    p: &Presentation,
    apoly: &BiLaurent,
    count: usize,
    seed: u64,
) -> Result<Vec<LiftSample>, ElimError> {
    let riley = riley_polynomial(p)?;
    if !riley.has_irreducible_locus() || apoly.is_constant() {
        return Ok(Vec::new());
    }
    let phi = riley_to_bilaurent(&riley.phi)?;
    let cfg = RootConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let ls = complex_roots(&coefficients_in_second(apoly, m), &cfg)?;
        if ls.is_empty() {
            continue;
        }
        let l = ls[rng.gen_range(0..ls.len())];
        let ss = complex_roots(&coefficients_in_second(&phi, m), &cfg)?;
        let mut best: Option<LiftSample> = None;
        for s in ss {
            let chart = riley_chart(p, &m, &s)?;
            let lon = eval_word(&p.longitude, &chart)?;
            let mer = eval_word(&p.meridian, &chart)?;
            let id = Sl2::identity_like(&m);
            let mut residual = (lon.a - l).norm().max(lon.c.norm());
            residual = residual.max(lon.commutator(&mer).sub(&id).magnitude());
            for r in &p.relators {
                residual = residual.max(eval_word(r, &chart)?.sub(&id).magnitude());
            }
            if best.is_none_or(|b| residual < b.residual) {
                best = Some(LiftSample { m, l, s, residual });
            }
        }
        if let Some(b) = best {
            out.push(b);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elimination::fixture;

    #[test]
    fn trefoil_riley_polynomial_has_s_degree_one() {
        let r = riley_polynomial(&fixture("trefoil").unwrap()).unwrap();
        assert_eq!(r.phi.degree_in("s"), 1);
        // m^2 (s + m^2 + m^-2 - 1)
        let expected = BiLaurent::from_i64_terms(&[(1, 4, 0), (1, 2, 1), (-1, 2, 0), (1, 0, 0)]);
        assert_eq!(r.phi.to_bilaurent("m", "s").unwrap(), expected);
    }

    #[test]
    fn figure_eight_riley_polynomial_has_s_degree_two() {
        let r = riley_polynomial(&fixture("figure-8").unwrap()).unwrap();
        assert_eq!(r.phi.degree_in("s"), 2);
    }

    #[test]
    fn unknot_has_no_irreducible_locus() {
        let u = fixture("unknot").unwrap();
        assert!(!riley_polynomial(&u).unwrap().has_irreducible_locus());
        assert_eq!(a_polynomial(&u).unwrap().apoly, BiLaurent::one());
    }

    #[test]
    fn trefoil_a_polynomial() {
        let a = a_polynomial(&fixture("trefoil").unwrap()).unwrap();
        assert_eq!(a.apoly, BiLaurent::from_i64_terms(&[(1, 6, 1), (1, 0, 0)]));
    }

    #[test]
    fn trefoil_points_lift() {
        let p = fixture("trefoil").unwrap();
        let a = a_polynomial(&p).unwrap().apoly;
        let samples = lift_points(&p, &a, 20, 7).unwrap();
        assert_eq!(samples.len(), 20);
        for s in samples {
            assert!(s.residual < 1e-8, "{s:?}");
        }
    }

    #[test]
    fn reducible_at_s_zero() {
        let p = fixture("trefoil").unwrap();
        let m = Complex64::new(1.3, 0.4);
        let chart = riley_chart(&p, &m, &Complex64::new(0.0, 0.0)).unwrap();
        assert!(chart.values().all(|g| g.c.norm() == 0.0));
    }
}
