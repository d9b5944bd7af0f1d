//! Dense-in-`y` bivariate integer polynomials `Z[x][y]`, used internally for
//! gcds, exact division and square-free parts of [`BiLaurent`] values.
//!
//! [`BiLaurent`]: super::BiLaurent

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntPoly1;

/// `Σ_j coeffs[j](x) * y^j`; trailing zero coefficients are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BiPoly {
    pub coeffs: Vec<IntPoly1>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly1>) -> Self {
        while coeffs.last().is_some_and(IntPoly1::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> &IntPoly1 {
        self.coeffs.last().expect("nonzero")
    }

    /// Gcd in `Z[x]` of all coefficients, with positive leading coefficient.
    pub fn content(&self) -> IntPoly1 {
        let mut g = IntPoly1::zero();
        for c in &self.coeffs {
            g = IntPoly1::gcd_z(&g, c);
            if g.is_constant() && g.content() == BigInt::from(1) {
                break;
            }
        }
        if g.leading_coeff().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn div_coeffs(&self, d: &IntPoly1) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| c.div_exact(d).expect("content divides every coefficient"))
                .collect(),
        )
    }

    pub fn scale(&self, k: &IntPoly1) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Primitive part with the leading coefficient's leading coefficient
    /// positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let p = self.div_coeffs(&c);
        if p.lc().leading_coeff().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn derivative_y(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&BigInt::from(j)))
                .collect(),
        )
    }

    #[cfg(test)]
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![IntPoly1::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    /// Pseudo-remainder with respect to `y`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("nonzero divisor");
        let lc = b.lc().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let top = r.lc().clone();
            let shift = dr - db;
            let mut next: Vec<IntPoly1> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (i, bc) in b.coeffs.iter().enumerate() {
                next[shift + i] = &next[shift + i] - &(&top * bc);
            }
            next.pop();
            r = Self::new(next);
        }
        r
    }

    /// Exact quotient in `Z[x][y]`, `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let lc = b.lc();
        let mut r = self.clone();
        let mut q = vec![IntPoly1::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let t = r.lc().div_exact(lc)?;
            let shift = dr - db;
            let mut next = r.coeffs.clone();
            for (i, bc) in b.coeffs.iter().enumerate() {
                next[shift + i] = &next[shift + i] - &(&t * bc);
            }
            if !next[dr].is_zero() {
                return None;
            }
            q[shift] = t;
            r = Self::new(next);
        }
        Some(Self::new(q))
    }

    /// Gcd in `Z[x][y]` via the primitive remainder sequence.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive_part_keep_content();
        }
        if b.is_zero() {
            return a.primitive_part_keep_content();
        }
        let c = IntPoly1::gcd_z(&a.content(), &b.content());
        let mut x = a.primitive_part();
        let mut y = b.primitive_part();
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        loop {
            if y.degree() == Some(0) {
                return Self::new(vec![c]);
            }
            let r = x.pseudo_rem(&y);
            if r.is_zero() {
                return y.primitive_part().scale(&c);
            }
            x = y;
            y = r.primitive_part();
        }
    }

    fn primitive_part_keep_content(&self) -> Self {
        let c = self.content();
        self.primitive_part().scale(&c)
    }

    /// Square-free part with respect to `y` of a primitive polynomial.
    pub fn square_free_y(&self) -> Self {
        let d = self.derivative_y();
        if d.is_zero() {
            return self.clone();
        }
        let g = Self::gcd(self, &d);
        self.div_exact(&g.primitive_part())
            .expect("gcd divides the polynomial")
            .primitive_part()
    }
}

/// Integer gcd helper shared with `BiLaurent`.
pub(crate) fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}
