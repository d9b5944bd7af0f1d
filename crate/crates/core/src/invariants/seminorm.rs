use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::InvError;
use crate::poly::{BiLaurent, PolyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seminorm {
    pub value: u64,
    /// Set when `ξ ≠ 0` but the trace function never separated any points,
    /// i.e. it is constant on every component of the curve.
    pub degenerate: bool,
}

const MAX_EXPONENT: u64 = 1 << 20;

/// Generic fibre size of `m^a ℓ^b + m^-a ℓ^-b` on the curve, counted in
/// `(C*)²` with multiplicity.
///
/// For each trial a random rational `c` is drawn and
/// `H = (m^a ℓ^b)² - c m^a ℓ^b + 1` is eliminated against the curve. `ξ` is
/// first replaced by `±ξ` so that the eliminated variable appears in `H`
/// with monomial leading and trailing coefficients; then no solution
/// escapes to `0` or `∞` and the count is the span of exponents of the
/// resultant. The largest count over the trials is returned.
pub fn eigenvalue_seminorm(curve: &BiLaurent, xi: (i64, i64), trials: usize, seed: u64) -> Result<Seminorm, InvError> {
    if curve.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if trials == 0 {
        return Err(InvError::NoTrials);
    }
    if xi == (0, 0) {
        return Ok(Seminorm { value: 0, degenerate: false });
    }
    let (mut a, mut b) = xi;
    if b < 0 || (b == 0 && a < 0) {
        (a, b) = (-a, -b);
    }
    // Eliminate ℓ when b > 0; otherwise swap roles so that `b` is the
    // exponent of the eliminated variable.
    let (curve, a, b) = if b > 0 { (curve.clone(), a, b) } else { (curve.swap_vars(), b, a) };
    let curve = curve.normalize()?;
    if a.unsigned_abs() > MAX_EXPONENT || b.unsigned_abs() > MAX_EXPONENT {
        let degree = a.unsigned_abs().max(b.unsigned_abs()) as usize;
        return Err(PolyError::DegreeTooLarge { degree, max: MAX_EXPONENT as usize }.into());
    }
    let b = b as usize;
    let lc = modp::Curve::new(&curve);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0u64;
    let mut any_nonzero = false;
    for _ in 0..trials {
        let c = loop {
            let num: i64 = rng.gen_range(-1000..=1000);
            let den: i64 = rng.gen_range(1..=97);
            let c = BigRational::new(BigInt::from(num), BigInt::from(den));
            let two = BigRational::from_integer(2.into());
            if c != two && c != -two {
                break c;
            }
        };
        let Some((lo, hi)) = lc.resultant_span(a, b, &c)? else {
            continue;
        };
        any_nonzero = true;
        best = best.max((hi - lo) as u64);
    }
    if !any_nonzero {
        // Every trial value was attained on a whole component.
        return Ok(Seminorm { value: 0, degenerate: true });
    }
    Ok(Seminorm {
        value: best,
        degenerate: best == 0,
    })
}

/// `Res_ℓ(C, H)` as a polynomial in `m`, computed by evaluation and
/// interpolation modulo a 61-bit prime. Only the support is needed, and a
/// coefficient that is nonzero over ℚ vanishes mod `P` only if `P` divides
/// it.
mod modp {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    use crate::poly::{BiLaurent, PolyError};

    const P: u64 = (1 << 61) - 1;
    /// Interpolation is quadratic in the number of points.
    const MAX_POINTS: usize = 20_000;

    fn mul(x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % P as u128) as u64
    }

    fn add(x: u64, y: u64) -> u64 {
        (x + y) % P
    }

    fn sub(x: u64, y: u64) -> u64 {
        (x + P - y) % P
    }

    fn pow(mut x: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, x);
            }
            x = mul(x, x);
            e >>= 1;
        }
        r
    }

    fn inv(x: u64) -> u64 {
        pow(x, P - 2)
    }

    fn reduce(n: &BigInt) -> u64 {
        let r = n % BigInt::from(P);
        let r = if r < BigInt::from(0) { r + BigInt::from(P) } else { r };
        r.to_u64().expect("reduced below P")
    }

    /// Resultant of two univariate polynomials, coefficients low to high,
    /// both with nonzero leading coefficient.
    fn resultant(mut f: Vec<u64>, mut g: Vec<u64>) -> u64 {
        let mut acc = 1u64;
        loop {
            let (df, dg) = (f.len() - 1, g.len() - 1);
            if df == 0 {
                return mul(acc, pow(f[0], dg as u64));
            }
            if dg == 0 {
                return mul(acc, pow(g[0], df as u64));
            }
            if df < dg {
                // Res(f, g) = (-1)^{df·dg} Res(g, f)
                if df * dg % 2 == 1 {
                    acc = sub(0, acc);
                }
                std::mem::swap(&mut f, &mut g);
                continue;
            }
            // f ← f mod g; Res(g, f) = lc(g)^{df - deg r} Res(g, r).
            let lg_inv = inv(g[dg]);
            for k in (dg..=df).rev() {
                let q = mul(f[k], lg_inv);
                if q != 0 {
                    for (i, gi) in g.iter().enumerate() {
                        f[k - dg + i] = sub(f[k - dg + i], mul(q, *gi));
                    }
                }
            }
            f.truncate(dg);
            while f.len() > 1 && *f.last().unwrap() == 0 {
                f.pop();
            }
            if f.len() == 1 && f[0] == 0 {
                return 0;
            }
            let dr = f.len() - 1;
            if df * dg % 2 == 1 {
                acc = sub(0, acc);
            }
            acc = mul(acc, pow(g[dg], (df - dr) as u64));
            std::mem::swap(&mut f, &mut g);
        }
    }

    pub struct Curve {
        /// `coeffs[j]` holds the `ℓ^j` coefficient as `(m-exponent, value)`.
        coeffs: Vec<Vec<(u64, u64)>>,
        deg_m: u64,
    }

    impl Curve {
        /// `curve` must be normalized, so all exponents are nonnegative.
        pub fn new(curve: &BiLaurent) -> Self {
            let mut coeffs: Vec<Vec<(u64, u64)>> = Vec::new();
            let mut deg_m = 0;
            for ((i, j), c) in curve.terms() {
                let (i, j) = (i as u64, j as usize);
                if coeffs.len() <= j {
                    coeffs.resize(j + 1, Vec::new());
                }
                coeffs[j].push((i, reduce(c)));
                deg_m = deg_m.max(i);
            }
            Self { coeffs, deg_m }
        }

        fn at(&self, x: u64) -> Vec<u64> {
            self.coeffs
                .iter()
                .map(|t| t.iter().fold(0, |s, &(e, c)| add(s, mul(c, pow(x, e)))))
                .collect()
        }

        /// Lowest and highest `m`-exponent of the resultant against
        /// `m^{2a} ℓ^{2b} - c m^a ℓ^b + 1` (shifted to nonnegative
        /// exponents), or `None` if it vanishes.
        pub fn resultant_span(&self, a: i64, b: usize, c: &BigRational) -> Result<Option<(usize, usize)>, PolyError> {
            let shift = if a < 0 { (-2 * a) as u64 } else { 0 };
            let e = |k: i64| (k * a + shift as i64) as u64;
            let cm = mul(reduce(c.numer()), inv(reduce(c.denom())));
            let da = (self.coeffs.len() - 1) as u64;
            let bound = (2 * b as u64)
                .checked_mul(self.deg_m)
                .and_then(|x| x.checked_add(da.checked_mul(2 * a.unsigned_abs())?))
                .filter(|&d| d < MAX_POINTS as u64)
                .ok_or(PolyError::DegreeTooLarge { degree: usize::MAX, max: MAX_POINTS - 1 })?;
            let n = bound as usize + 1;
            let mut xs = Vec::with_capacity(n);
            let mut ys = Vec::with_capacity(n);
            let mut x = 1u64;
            while xs.len() < n {
                x += 1;
                let f = self.at(x);
                if *f.last().unwrap() == 0 {
                    continue;
                }
                let mut h = vec![0; 2 * b + 1];
                h[0] = pow(x, e(0));
                h[b] = sub(h[b], mul(cm, pow(x, e(1))));
                h[2 * b] = add(h[2 * b], pow(x, e(2)));
                xs.push(x);
                ys.push(resultant(f, h));
            }
            let coeffs = interpolate(&xs, &ys);
            let lo = coeffs.iter().position(|&v| v != 0);
            let hi = coeffs.iter().rposition(|&v| v != 0);
            Ok(lo.zip(hi))
        }
    }

    /// Coefficients (low to high) of the polynomial through the points.
    fn interpolate(xs: &[u64], ys: &[u64]) -> Vec<u64> {
        let n = xs.len();
        // xs is increasing and small, so every difference has a tabulated
        // inverse.
        let span = (xs[n - 1] - xs[0]) as usize;
        let mut inverses = vec![0u64, 1];
        for i in 2..=span {
            let i = i as u64;
            inverses.push(sub(0, mul(P / i, inverses[(P % i) as usize])));
        }
        // Newton divided differences.
        let mut d = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                d[i] = mul(sub(d[i], d[i - 1]), inverses[(xs[i] - xs[i - k]) as usize]);
            }
        }
        let mut out = vec![0u64; n];
        for k in (0..n).rev() {
            // out ← out·(x - xs[k]) + d[k]
            for i in (1..n).rev() {
                out[i] = sub(out[i - 1], mul(out[i], xs[k]));
            }
            out[0] = sub(d[k], mul(out[0], xs[k]));
        }
        out
    }

}
