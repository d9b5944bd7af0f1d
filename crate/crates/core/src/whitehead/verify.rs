use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{f_cubic_coefficients, relator_residual, WhError, WhiteheadChart};
use crate::poly::{complex_roots, RootConfig};

pub const ON_CURVE_THRESHOLD: f64 = 1e-9;
pub const OFF_CURVE_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub sample: usize,
    pub on_curve: bool,
    pub u: Complex64,
    pub v: Complex64,
    /// `None` when the cubic could not be solved.
    pub t: Option<Complex64>,
    pub residual: Option<f64>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub samples: usize,
    pub seed: u64,
    pub on_curve_points: usize,
    pub off_curve_points: usize,
    pub on_curve_failures: usize,
    pub off_curve_failures: usize,
    pub max_on_curve_residual: f64,
    pub min_off_curve_residual: f64,
    pub failures: Vec<SampleFailure>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn annulus(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
        if (z * z - 1.0).norm() > 0.05 {
            return z;
        }
    }
}

/// Statistical check that the relation holds on `f(1, t, u, v) = 0` and
/// fails off it.
///
/// Each sample draws `(u, v)` from the annulus `0.5 <= |·| <= 2` away from
/// `±1`, solves the cubic in `t`, and requires relator residual below
/// `1e-9` at every root; it also draws as many random `t` with `|f|`
/// bounded away from zero and requires residual above `1e-6`.
pub fn f_equivalence_check(samples: usize, seed: u64) -> Result<EquivalenceReport, WhError> {
    if samples == 0 {
        return Err(WhError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = RootConfig::default();
    let mut report = EquivalenceReport {
        samples,
        seed,
        on_curve_points: 0,
        off_curve_points: 0,
        on_curve_failures: 0,
        off_curve_failures: 0,
        max_on_curve_residual: 0.0,
        min_off_curve_residual: f64::INFINITY,
        failures: Vec::new(),
    };
    for sample in 0..samples {
        let (u, v) = (annulus(&mut rng), annulus(&mut rng));
        let coeffs = f_cubic_coefficients(&u, &v);
        let fail = |t, residual, on_curve, message: String| SampleFailure {
            sample,
            on_curve,
            u,
            v,
            t,
            residual,
            message,
        };
        match complex_roots(&coeffs, &cfg) {
            Err(e) => {
                report.on_curve_failures += 1;
                report.failures.push(fail(None, None, true, e.to_string()));
            }
            Ok(ts) => {
                for t in ts {
                    report.on_curve_points += 1;
                    let r = relator_residual(&WhiteheadChart::u1(t, u, v)?)?;
                    report.max_on_curve_residual = report.max_on_curve_residual.max(r);
                    if !(r < ON_CURVE_THRESHOLD) {
                        report.on_curve_failures += 1;
                        report.failures.push(fail(Some(t), Some(r), true, "residual above threshold".into()));
                    }
                }
            }
        }
        let t = loop {
            let t = annulus(&mut rng) * 1.5;
            if WhiteheadChart::u1(t, u, v)?.f_value().norm() > 1e-2 {
                break t;
            }
        };
        report.off_curve_points += 1;
        let r = relator_residual(&WhiteheadChart::u1(t, u, v)?)?;
        report.min_off_curve_residual = report.min_off_curve_residual.min(r);
        if !(r > OFF_CURVE_THRESHOLD) {
            report.off_curve_failures += 1;
            report.failures.push(fail(Some(t), Some(r), false, "residual below threshold".into()));
        }
    }
    Ok(report)
}
