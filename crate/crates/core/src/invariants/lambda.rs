use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::{InvError, KnotRecord};
use crate::poly::PolyError;
use crate::surgery::{linear_growth_params, total_intersection, LinearGrowth, Slope};

fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

/// `λ′(K) = ½ deg_m Â`, exact.
pub fn lambda_prime(k: &KnotRecord) -> Result<BigRational, InvError> {
    Ok(half(k.ahat.deg_m()?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Asymptotic {
    pub p: i64,
    /// `(q, ½·(Â · F_{p/q}) / q)` for every `q <= q_max` coprime to `p`.
    pub estimates: Vec<(i64, BigRational)>,
    /// The limit `½ n` read off the linear growth law.
    pub extrapolated: BigRational,
    pub growth: LinearGrowth,
}

/// Surgery-side estimates of `λ′`: half the intersection number of Â with
/// the surgery curve per unit `q`.
pub fn lambda_prime_asymptotic(k: &KnotRecord, p: i64, q_max: i64) -> Result<Asymptotic, InvError> {
    if p == 0 {
        return Err(InvError::ZeroP);
    }
    if q_max < 1 {
        return Err(InvError::QMaxTooSmall(q_max));
    }
    let growth = linear_growth_params(&k.ahat, p)?;
    let mut estimates = Vec::new();
    for q in (1..=q_max).filter(|q| q.gcd(&p) == 1) {
        let slope = Slope::new(p, q)?;
        let total = total_intersection(&k.ahat, slope)?;
        estimates.push((q, BigRational::new(BigInt::from(total), BigInt::from(2 * q))));
    }
    Ok(Asymptotic {
        p,
        estimates,
        extrapolated: half(growth.n),
        growth,
    })
}

/// `Â_{K1#K2} = Â_{K1} Â_{K2}`; Alexander polynomials multiply too.
pub fn connected_sum(k1: &KnotRecord, k2: &KnotRecord) -> Result<KnotRecord, InvError> {
    let ahat = (&k1.ahat * &k2.ahat).normalize()?;
    let alexander = (&k1.alexander * &k2.alexander).unit_normalize();
    if alexander.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    Ok(KnotRecord {
        name: format!("{} # {}", k1.name, k2.name),
        ahat,
        alexander,
        presentation: None,
        provenance: format!("connected sum of {} and {}", k1.name, k2.name),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{bundled_db, find};
    use crate::poly::BiLaurent;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trefoil_estimates() {
        let db = bundled_db();
        let t = find(&db, "trefoil").unwrap();
        assert_eq!(lambda_prime(t).unwrap(), r(3, 1));
        let a = lambda_prime_asymptotic(t, 1, 100).unwrap();
        assert_eq!(a.estimates.len(), 100);
        assert_eq!(a.estimates.last().unwrap(), &(100, r(599, 200)));
        assert_eq!(a.extrapolated, r(3, 1));
        let b = lambda_prime_asymptotic(t, 2, 101).unwrap();
        assert_eq!(b.extrapolated, r(3, 1));
        assert!(b.estimates.iter().all(|(q, _)| q % 2 == 1));
    }

    #[test]
    fn unknot_is_zero() {
        let db = bundled_db();
        let u = find(&db, "unknot").unwrap();
        let a = lambda_prime_asymptotic(u, 1, 10).unwrap();
        assert!(a.estimates.iter().all(|(_, e)| *e == r(0, 1)));
        assert_eq!(a.extrapolated, r(0, 1));
    }

    #[test]
    fn connected_sums() {
        let db = bundled_db();
        let t = find(&db, "trefoil").unwrap();
        let u = find(&db, "unknot").unwrap();
        let tt = connected_sum(t, t).unwrap();
        assert_eq!(tt.name, "trefoil # trefoil");
        assert_eq!(
            tt.ahat,
            BiLaurent::from_i64_terms(&[(1, 12, 2), (2, 6, 1), (1, 0, 0)])
        );
        assert_eq!(lambda_prime(&tt).unwrap(), r(6, 1));
        assert_eq!(connected_sum(t, u).unwrap().ahat, t.ahat);
    }

    #[test]
    fn rejects_bad_arguments() {
        let db = bundled_db();
        let t = find(&db, "trefoil").unwrap();
        assert_eq!(lambda_prime_asymptotic(t, 0, 5), Err(InvError::ZeroP));
        assert_eq!(lambda_prime_asymptotic(t, 1, 0), Err(InvError::QMaxTooSmall(0)));
    }
}
