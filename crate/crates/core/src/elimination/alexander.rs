use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ElimError, Presentation};
use crate::poly::IntPoly1;

/// Alexander polynomial of a two-generator one-relator knot group whose
/// generators are meridians: the Fox derivative of the relator with respect
/// to the non-meridian generator, abelianized by sending every generator to
/// `t`, up to units `±t^k`.
pub fn alexander_polynomial(p: &Presentation) -> Result<IntPoly1, ElimError> {
    if p.generators.len() != 2 {
        return Err(ElimError::NotTwoGenerator(p.generators.len()));
    }
    if p.relators.len() != 1 {
        return Err(ElimError::DegenerateRelators);
    }
    let mer = match p.meridian.letters() {
        [l] if !l.inverse => l.gen.clone(),
        _ => return Err(ElimError::MeridianNotGenerator(p.meridian.to_string())),
    };
    let x = p.generators.iter().find(|g| **g != mer).unwrap();
    // d(u g)/dg = u, d(u g^-1)/dg = -u g^-1.
    let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut prefix = 0i64;
    for l in p.relators[0].letters() {
        if l.inverse {
            prefix -= 1;
            if &l.gen == x {
                *terms.entry(prefix).or_default() -= 1;
            }
        } else {
            if &l.gen == x {
                *terms.entry(prefix).or_default() += 1;
            }
            prefix += 1;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    let Some((&lo, _)) = terms.iter().next() else {
        return Ok(IntPoly1::zero());
    };
    let poly = IntPoly1::from_terms(terms.into_iter().map(|(e, c)| (c, (e - lo) as u32)));
    Ok(poly.unit_normalize())
}
