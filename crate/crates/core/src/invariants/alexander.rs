use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::InvError;
use crate::poly::{IntPoly1, PolyError};

/// `Δ(t) = n t² + (1 - 2n) t + n` for the `n`-twisted double, up to units.
pub fn alexander_twisted_double(n: i64) -> IntPoly1 {
    IntPoly1::from_terms([
        (BigInt::from(n), 2),
        (BigInt::from(1 - 2 * i128::from(n)), 1),
        (BigInt::from(n), 0),
    ])
    .unit_normalize()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// `|p|` for odd `p`, `|p|/2` for even.
    pub p_prime: u64,
    /// `gcd(Δ, t^{p′} - 1)` when it is not constant.
    pub witness: Option<IntPoly1>,
}

/// `Φ_d` for every `d` up to `limit`, by dividing `t^d - 1` by the
/// cyclotomic factors of the proper divisors.
fn cyclotomics(limit: u32) -> Vec<IntPoly1> {
    let mut out: Vec<IntPoly1> = vec![IntPoly1::zero()];
    for d in 1..=limit {
        let mut f = IntPoly1::from_terms([(BigInt::from(1), d), (BigInt::from(-1), 0)]);
        for e in (1..d).filter(|e| d % e == 0) {
            f = f.div_exact(&out[e as usize]).expect("cyclotomic factor divides");
        }
        out.push(f);
    }
    out
}

fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// Whether no `p′`-th root of unity is a root of `Δ`.
///
/// `t^{p′} - 1` is the square-free product of `Φ_d` over `d | p′`, and
/// `Φ_d` can only divide `Δ` when `φ(d) <= deg Δ`, which bounds `d` by
/// `2 (deg Δ)²`. So the gcd is assembled from a few small cyclotomic
/// polynomials and huge `p` costs nothing extra.
pub fn admissible_condition_ii(delta: &IntPoly1, p: i64) -> Result<Admissibility, InvError> {
    if p == 0 {
        return Err(InvError::ZeroP);
    }
    if delta.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let a = p.unsigned_abs();
    let p_prime = if a % 2 == 1 { a } else { a / 2 };
    let deg = delta.degree().unwrap_or(0) as u64;
    let bound = (2 * deg * deg + 2).min(p_prime);
    let cyc = cyclotomics(bound as u32);
    let mut g = IntPoly1::one();
    for d in (1..=bound).filter(|d| p_prime % d == 0 && euler_phi(*d) <= deg) {
        let phi = &cyc[d as usize];
        if IntPoly1::gcd(delta, phi) == *phi {
            g = &g * phi;
        }
    }
    let admissible = g.is_constant();
    Ok(Admissibility {
        admissible,
        p_prime,
        witness: (!admissible).then(|| g.unit_normalize()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_double_formula() {
        assert_eq!(alexander_twisted_double(1), IntPoly1::from_coeffs(&[1, -1, 1]));
        assert_eq!(alexander_twisted_double(0), IntPoly1::one());
        assert_eq!(alexander_twisted_double(-1), IntPoly1::from_coeffs(&[1, -3, 1]));
    }

    #[test]
    fn condition_ii_examples() {
        let d = IntPoly1::from_coeffs(&[1, -1, 1]);
        let bad = admissible_condition_ii(&d, 12).unwrap();
        assert_eq!(bad.p_prime, 6);
        assert!(!bad.admissible);
        assert_eq!(bad.witness, Some(d.clone()));
        assert!(admissible_condition_ii(&d, 5).unwrap().admissible);
        assert!(admissible_condition_ii(&IntPoly1::one(), 7).unwrap().admissible);
        assert_eq!(admissible_condition_ii(&d, 0), Err(InvError::ZeroP));
        assert!(!admissible_condition_ii(&d, 12 * 1_000_000_007).unwrap().admissible);
        assert!(admissible_condition_ii(&d, i64::MIN).unwrap().admissible);
    }

    #[test]
    fn matches_direct_gcd() {
        // Independent route: gcd with t^{p'} - 1 itself.
        let polys = [
            IntPoly1::from_coeffs(&[1, -1, 1]),
            IntPoly1::from_coeffs(&[1, -3, 1]),
            IntPoly1::from_coeffs(&[2, -3, 2]),
            IntPoly1::from_coeffs(&[1, 1, 1]),
            IntPoly1::from_coeffs(&[1, -1, 1, -1, 1]),
            IntPoly1::from_coeffs(&[1, 0, 1]),
            IntPoly1::from_coeffs(&[1, 1]),
        ];
        for d in &polys {
            for p in 1..=40i64 {
                let pp = if p % 2 == 1 { p } else { p / 2 } as u32;
                let direct = IntPoly1::gcd(d, &IntPoly1::from_terms([(BigInt::from(1), pp), (BigInt::from(-1), 0)]));
                let r = admissible_condition_ii(d, p).unwrap();
                assert_eq!(r.admissible, direct.is_constant(), "{d} {p}");
                if let Some(w) = r.witness {
                    assert_eq!(w, direct.unit_normalize(), "{d} {p}");
                }
            }
        }
    }
}
