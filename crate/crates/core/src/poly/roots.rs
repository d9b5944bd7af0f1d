//! Numeric roots of polynomials.
//!
//! Integer polynomials are first split into square-free factors, so every
//! root handed to the floating-point iteration is simple and multiplicities
//! are exact. Each factor is then solved by Aberth–Ehrlich simultaneous
//! iteration seeded on circles read off the Newton polygon.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{IntPoly1, PolyError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootConfig {
    /// Relative step size below which an iterate counts as converged.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Accepted backward error `|p(z)| / Σ|c_i||z|^i`.
    pub residual_tolerance: f64,
    /// Largest degree the solver will attempt.
    pub max_degree: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iterations: 200,
            residual_tolerance: 1e-10,
            max_degree: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: u32,
}

/// All complex roots of `p` with multiplicities; the multiplicities sum to
/// `deg p`.
pub fn roots(p: &IntPoly1, cfg: &RootConfig) -> Result<Vec<Root>, PolyError> {
    let degree = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if degree == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    if degree as usize > cfg.max_degree {
        return Err(PolyError::DegreeTooLarge {
            degree: degree as usize,
            max: cfg.max_degree,
        });
    }
    let mut out = Vec::with_capacity(degree as usize);
    for (factor, mult) in p.square_free_decomposition() {
        match complex_roots(&factor.to_complex_coeffs(), cfg) {
            Ok(zs) => out.extend(zs.into_iter().map(|value| Root {
                value,
                multiplicity: mult,
            })),
            Err(PolyError::NoConvergence { iterations, partial }) => {
                out.extend(partial.into_iter().map(|r| Root {
                    value: r.value,
                    multiplicity: mult,
                }));
                return Err(PolyError::NoConvergence {
                    iterations,
                    partial: out,
                });
            }
            Err(e) => return Err(e),
        }
    }
    debug_assert_eq!(
        out.iter().map(|r| r.multiplicity).sum::<u32>(),
        degree,
        "multiplicities must sum to the degree"
    );
    Ok(out)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn abs_scale(coeffs: &[Complex64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Backward error of `z` as a root of the polynomial with ascending `coeffs`.
pub fn backward_error(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(coeffs, z);
    let s = abs_scale(coeffs, z.norm());
    if s == 0.0 {
        0.0
    } else {
        p.norm() / s
    }
}

/// Initial approximations on circles whose radii come from the upper convex
/// hull of `(i, ln|c_i|)`.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(i, c)| (i as f64, c.norm().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, j) = (w[0].0 as usize, w[1].0 as usize);
        let k = j - i;
        let r = ((w[0].1 - w[1].1) / k as f64).exp();
        for s in 0..k {
            let theta = 2.0 * PI * (s as f64) / (k as f64) + 2.0 * PI * (i as f64) / (n as f64) + 0.4;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    out
}

/// Simple roots of a polynomial with complex coefficients (ascending order).
/// Zero roots are split off exactly; multiplicities are not detected.
pub fn complex_roots(coeffs: &[Complex64], cfg: &RootConfig) -> Result<Vec<Complex64>, PolyError> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let zeros = c.iter().take_while(|z| z.norm() == 0.0).count();
    let c = c.split_off(zeros);
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let n = c.len() - 1;
    if n > cfg.max_degree {
        return Err(PolyError::DegreeTooLarge {
            degree: n,
            max: cfg.max_degree,
        });
    }
    match n {
        0 => return Ok(out),
        1 => {
            out.push(-c[0] / c[1]);
            return Ok(out);
        }
        _ => {}
    }
    let mut z = initial_guesses(&c);
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < cfg.max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&c, z[k]);
            if p.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Perturb and retry next sweep.
                let bump = Complex64::new(1e-3, 1e-3) * (1.0 + z[k].norm());
                z[k] += bump;
                continue;
            }
            z[k] -= step;
            if step.norm() <= cfg.tolerance * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
    }
    // Newton polish; harmless once converged.
    for zk in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner(&c, *zk);
            if dp.norm() > 0.0 {
                let s = p / dp;
                if s.re.is_finite() && s.im.is_finite() {
                    *zk -= s;
                }
            }
        }
    }
    let bad = z
        .iter()
        .any(|&zk| !(backward_error(&c, zk) <= cfg.residual_tolerance));
    if bad {
        out.extend(z);
        return Err(PolyError::NoConvergence {
            iterations,
            partial: out
                .into_iter()
                .map(|value| Root {
                    value,
                    multiplicity: 1,
                })
                .collect(),
        });
    }
    out.extend(z);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn quadratic() {
        let p = IntPoly1::from_coeffs(&[2, -2, 1]);
        let rs = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(rs.len(), 2);
        for target in [Complex64::new(1.0, 1.0), Complex64::new(1.0, -1.0)] {
            assert!(rs.iter().any(|r| close(r.value, target) && r.multiplicity == 1));
        }
    }

    #[test]
    fn multiplicities_sum_to_degree() {
        let a = IntPoly1::from_coeffs(&[1, 0, 1]);
        let b = IntPoly1::from_coeffs(&[-2, 1]);
        let p = &(&a * &a) * &(&(&b * &b) * &b);
        let rs = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(rs.iter().map(|r| r.multiplicity).sum::<u32>(), 7);
        assert!(rs.iter().any(|r| close(r.value, Complex64::new(2.0, 0.0)) && r.multiplicity == 3));
    }

    #[test]
    fn high_degree_roots_of_unity() {
        let p = IntPoly1::from_terms([(1.into(), 299), (1.into(), 0)]);
        let rs = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(rs.len(), 299);
        for r in &rs {
            assert!((r.value.norm() - 1.0).abs() < 1e-10);
            assert!(p.eval_complex(r.value).norm() < 1e-9);
        }
    }

    #[test]
    fn zero_roots_split_exactly() {
        let c = [0.0, 0.0, -1.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let zs = complex_roots(&c, &RootConfig::default()).unwrap();
        assert_eq!(zs.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(zs.iter().any(|&z| close(z, Complex64::new(1.0, 0.0))));
    }

    #[test]
    fn constant_is_rejected() {
        assert_eq!(
            roots(&IntPoly1::constant(3), &RootConfig::default()),
            Err(PolyError::ConstantPolynomial)
        );
    }

    #[test]
    fn iteration_cap_reports_partial_results() {
        let cfg = RootConfig {
            max_iterations: 1,
            ..Default::default()
        };
        let p = IntPoly1::from_terms([(1.into(), 40), (3.into(), 7), (1.into(), 0)]);
        match roots(&p, &cfg) {
            Err(PolyError::NoConvergence { partial, .. }) => assert!(!partial.is_empty()),
            other => panic!("expected nonconvergence, got {other:?}"),
        }
    }
}
