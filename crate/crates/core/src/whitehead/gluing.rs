use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{chart_rep, f_cubic_coefficients, whitehead_group, WhError, WhiteheadChart};
use crate::elimination::{eval_word, riley_chart, riley_polynomial, Assignment, ChartPoint, Presentation, Sl2, Word};
use crate::poly::{complex_roots, MPoly, RootConfig};

/// A representation of the companion complement glued to one of the
/// Whitehead link complement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GluingConfig {
    pub companion: Presentation,
    pub n: i64,
    /// `ρ1` on the companion's generators, already conjugated into place.
    pub rho1: Assignment<Complex64>,
    /// The chart point `(m, s)` that `ρ1` is conjugate to; `s` is absent
    /// when `ρ1` is abelian.
    pub riley: ChartPoint,
    pub abelian: bool,
    pub chart: WhiteheadChart<Complex64>,
    pub residual: f64,
    pub rho1_irreducible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub residual_target: f64,
    pub acceptance: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            residual_target: 1e-12,
            acceptance: 1e-9,
            seed: 0,
        }
    }
}

/// Images of `y λ_y^n` and `λ_y`.
fn whitehead_boundary(rep: &Assignment<Complex64>, n: i64) -> Result<(Sl2<Complex64>, Sl2<Complex64>), WhError> {
    let g = whitehead_group();
    let lam = eval_word(&g.lambda_y, rep)?;
    let yl = eval_word(&(&Word::gen("y") * &g.lambda_y.pow(n)), rep)?;
    Ok((lam, yl))
}

/// `‖ρ1(μ_J) - ρ2(λ_y)‖ + ‖ρ1(λ_J) - ρ2(y λ_y^n)‖`.
pub fn gluing_residual(g: &GluingConfig) -> Result<f64, WhError> {
    let rep2 = chart_rep(&g.chart)?;
    let (lam, yl) = whitehead_boundary(&rep2, g.n)?;
    let mu1 = eval_word(&g.companion.meridian, &g.rho1)?;
    let lon1 = eval_word(&g.companion.longitude, &g.rho1)?;
    Ok(mu1.sub(&lam).magnitude() + lon1.sub(&yl).magnitude())
}

fn abelian_rep(j: &Presentation, m: Complex64) -> Assignment<Complex64> {
    let d = Sl2::new_unchecked(m, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.0 / m);
    j.generators.iter().map(|g| (g.clone(), d.clone())).collect::<BTreeMap<_, _>>()
}

struct System<'a> {
    j: &'a Presentation,
    n: i64,
    /// `φ(m, s)`, absent in the abelian case.
    phi: Option<MPoly>,
}

impl System<'_> {
    fn offset(&self) -> usize {
        usize::from(self.phi.is_some())
    }

    /// Unknowns `[m, (s), t, u, v, g11, g12, g21, g22]`.
    fn unpack(&self, z: &[Complex64]) -> Result<(Assignment<Complex64>, WhiteheadChart<Complex64>, Sl2<Complex64>), WhError> {
        let o = self.offset();
        let rho1 = match self.phi {
            Some(_) => riley_chart(self.j, &z[0], &z[1])?,
            None => abelian_rep(self.j, z[0]),
        };
        let chart = WhiteheadChart::u1(z[o + 1], z[o + 2], z[o + 3])?;
        let g = Sl2::new_unchecked(z[o + 4], z[o + 5], z[o + 6], z[o + 7]);
        Ok((rho1, chart, g))
    }

    fn residuals(&self, z: &[Complex64]) -> Result<Vec<Complex64>, WhError> {
        let (rho1, chart, g) = self.unpack(z)?;
        let mut r = Vec::with_capacity(11);
        if let Some(phi) = &self.phi {
            r.push(phi.eval_complex(|v| match v {
                "m" => Some(z[0]),
                "s" => Some(z[1]),
                _ => None,
            })?);
        }
        let [c0, c1, c2, c3] = f_cubic_coefficients(&chart.u, &chart.v);
        let t = chart.t;
        r.push(((c3 * t + c2) * t + c1) * t + c0);
        r.push(g.det() - 1.0);
        let (lam, yl) = whitehead_boundary(&chart_rep(&chart)?, self.n)?;
        let mu1 = eval_word(&self.j.meridian, &rho1)?;
        let lon1 = eval_word(&self.j.longitude, &rho1)?;
        for (a, b) in [(mu1, lam), (lon1, yl)] {
            let d = a.mul(&g).sub(&g.mul(&b));
            r.extend([d.a, d.b, d.c, d.d]);
        }
        Ok(r)
    }
}

fn norm(r: &[Complex64]) -> f64 {
    r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting.
fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &k| a[i][col].norm().total_cmp(&a[k][col].norm()))?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Levenberg–Marquardt on the holomorphic residual map, with a
/// finite-difference Jacobian.
fn levenberg_marquardt(sys: &System, mut z: Vec<Complex64>, cfg: &SolverConfig) -> Option<Vec<Complex64>> {
    let mut r = sys.residuals(&z).ok()?;
    let mut lambda = 1e-3;
    for _ in 0..cfg.max_iterations {
        let nr = norm(&r);
        if !nr.is_finite() {
            return None;
        }
        if nr < cfg.residual_target {
            break;
        }
        let k = z.len();
        let mut jac = vec![vec![Complex64::new(0.0, 0.0); k]; r.len()];
        for j in 0..k {
            let h = 1e-7 * z[j].norm().max(1.0);
            let mut zh = z.clone();
            zh[j] += h;
            let rh = sys.residuals(&zh).ok()?;
            for i in 0..r.len() {
                jac[i][j] = (rh[i] - r[i]) / h;
            }
        }
        // Normal equations (JᴴJ + λ diag) δ = -Jᴴ r.
        let mut jtj = vec![vec![Complex64::new(0.0, 0.0); k]; k];
        let mut jtr = vec![Complex64::new(0.0, 0.0); k];
        for (row, ri) in jac.iter().zip(&r) {
            for a in 0..k {
                let ca = row[a].conj();
                jtr[a] -= ca * ri;
                for b in 0..k {
                    jtj[a][b] += ca * row[b];
                }
            }
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut m = jtj.clone();
            for (a, row) in m.iter_mut().enumerate() {
                row[a] += lambda * (1.0 + jtj[a][a].re);
            }
            let Some(delta) = solve_linear(m, jtr.clone()) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<Complex64> = z.iter().zip(&delta).map(|(a, d)| a + d).collect();
            if let Ok(rt) = sys.residuals(&trial) {
                if norm(&rt) < nr {
                    z = trial;
                    r = rt;
                    lambda = (lambda / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (norm(&r) < cfg.acceptance).then_some(z)
}

fn annulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn random_start(sys: &System, rng: &mut ChaCha8Rng) -> Option<Vec<Complex64>> {
    let cfg = RootConfig::default();
    let m = loop {
        let m = annulus(rng, 0.3, 3.0);
        if (m * m - 1.0).norm() > 0.1 {
            break m;
        }
    };
    let mut z = vec![m];
    if let Some(phi) = &sys.phi {
        let coeffs: Vec<Complex64> = phi
            .coefficients_in("s")
            .ok()?
            .iter()
            .map(|c| c.eval_complex(|_| Some(m)))
            .collect::<Result<_, _>>()
            .ok()?;
        let ss = complex_roots(&coeffs, &cfg).ok()?;
        z.push(*ss.get(rng.gen_range(0..ss.len().max(1)))?);
    }
    let (u, v) = (annulus(rng, 0.3, 3.0), annulus(rng, 0.3, 3.0));
    let ts = complex_roots(&f_cubic_coefficients(&u, &v), &cfg).ok()?;
    z.push(*ts.get(rng.gen_range(0..ts.len().max(1)))?);
    z.extend([u, v]);
    let (a, b, c) = (annulus(rng, 0.5, 2.0), annulus(rng, 0.3, 1.0), annulus(rng, 0.3, 1.0));
    z.extend([a, b, c, (1.0 + b * c) / a]);
    Some(z)
}

fn is_irreducible(rho: &Assignment<Complex64>) -> bool {
    let mats: Vec<&Sl2<Complex64>> = rho.values().collect();
    mats.iter().enumerate().any(|(i, a)| {
        mats[i + 1..]
            .iter()
            .any(|b| (a.commutator(b).trace() - 2.0).norm() > 1e-10)
    })
}

/// Numerical search for glued representations of the `n`-twisted double
/// of `J`, from `seeds` random starts.
///
/// `ρ1` is taken in the Riley chart (irreducible, on `φ = 0`) when `J` has
/// an irreducible locus and abelian otherwise; `ρ2` in the chart `s = 1`.
/// A conjugator `G` is solved for together with the chart parameters so
/// that `ρ1 G = G ρ2` on the boundary. Returned configurations are distinct
/// up to `1e-6` and sorted by residual, then parameters. An empty list says
/// nothing about existence.
pub fn solve_gluing(j: &Presentation, n: i64, seeds: usize, cfg: &SolverConfig) -> Result<Vec<GluingConfig>, WhError> {
    if seeds == 0 {
        return Err(WhError::NoSeeds);
    }
    let riley = riley_polynomial(j)?;
    let sys = System {
        j,
        n,
        phi: riley.has_irreducible_locus().then_some(riley.phi),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found: Vec<GluingConfig> = Vec::new();
    for _ in 0..seeds {
        let Some(start) = random_start(&sys, &mut rng) else {
            continue;
        };
        let Some(z) = levenberg_marquardt(&sys, start, cfg) else {
            continue;
        };
        let Ok((rho1, chart, g)) = sys.unpack(&z) else {
            continue;
        };
        let m = z[0];
        if (m * m - 1.0).norm() < 1e-6 {
            continue;
        }
        let ginv = g.inverse();
        let rho1: Assignment<Complex64> = rho1.iter().map(|(k, a)| (k.clone(), ginv.mul(a).mul(&g))).collect();
        let abelian = sys.phi.is_none();
        let mut config = GluingConfig {
            companion: j.clone(),
            n,
            rho1_irreducible: is_irreducible(&rho1),
            rho1,
            riley: ChartPoint {
                m,
                s: if abelian { Complex64::new(0.0, 0.0) } else { z[1] },
            },
            abelian,
            chart,
            residual: 0.0,
        };
        config.residual = gluing_residual(&config)?;
        if !(config.residual < cfg.acceptance) {
            continue;
        }
        let key = |c: &GluingConfig| [c.riley.m, c.chart.t, c.chart.u, c.chart.v];
        let dup = found
            .iter()
            .any(|c| key(c).iter().zip(key(&config)).all(|(a, b)| (a - b).norm() < 1e-6));
        if !dup {
            found.push(config);
        }
    }
    found.sort_by(|a, b| {
        a.residual.total_cmp(&b.residual).then_with(|| {
            let flat = |c: &GluingConfig| [c.riley.m, c.chart.t, c.chart.u, c.chart.v].map(|z| [z.re, z.im]);
            flat(a).as_flattened().iter().zip(flat(b).as_flattened()).fold(std::cmp::Ordering::Equal, |o, (x, y)| {
                o.then(x.total_cmp(y))
            })
        })
    });
    Ok(found)
}
