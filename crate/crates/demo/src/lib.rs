//! Browser bindings for the static page in `www/`. Every export returns a
//! JSON string; the plain `*_json` functions hold the logic so they can be
//! tested off the browser.

use casson_core::elimination::{riley_chart, riley_polynomial, Assignment};
use casson_core::invariants::{bundled_db, find, lambda_prime_asymptotic, KnotRecord};
use casson_core::poly::{complex_roots, RootConfig};
use casson_core::surgery::{intersection_points, total_intersection, PointConfig, Slope};
use casson_core::whitehead::{bend, diagonalizing_conjugator};
use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps root finding interactive.
pub const MAX_POINTS: u64 = 400;
pub const MAX_Q: i64 = 500;
pub const MAX_STEPS: usize = 2000;

fn knot(name: &str) -> Result<KnotRecord, String> {
    find(&bundled_db(), name).cloned().map_err(|e| e.to_string())
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Knot names with their λ′, for the page's selectors.
pub fn knots_json() -> String {
    let list: Vec<Value> = bundled_db()
        .iter()
        .map(|r| json!({"name": r.name, "ahat": r.ahat.to_string(), "presentation": r.presentation.is_some()}))
        .collect();
    Value::Array(list).to_string()
}

pub fn intersection_points_json(name: &str, p: i64, q: i64) -> Result<String, String> {
    let k = knot(name)?;
    let slope = Slope::new(p, q).map_err(|e| e.to_string())?;
    let total = total_intersection(&k.ahat, slope).map_err(|e| e.to_string())?;
    if total > MAX_POINTS {
        return Err(format!("{total} points; the demo locates at most {MAX_POINTS}"));
    }
    let rep = intersection_points(&k.ahat, slope, &k.alexander, &PointConfig::default()).map_err(|e| e.to_string())?;
    let points: Vec<Value> = rep
        .points
        .iter()
        .map(|pt| json!({"m": pair(pt.m), "l": pair(pt.l), "mult": pt.multiplicity, "kind": format!("{:?}", pt.kind)}))
        .collect();
    Ok(json!({"total": rep.total, "points": points}).to_string())
}

pub fn growth_sweep_json(name: &str, p: i64, q_max: i64) -> Result<String, String> {
    if !(2..=MAX_Q).contains(&q_max) {
        return Err(format!("q_max must be in 2..={MAX_Q}"));
    }
    let k = knot(name)?;
    let a = lambda_prime_asymptotic(&k, p, q_max).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (q, est) in &a.estimates {
        let slope = Slope::new(p, *q).map_err(|e| e.to_string())?;
        let total = total_intersection(&k.ahat, slope).map_err(|e| e.to_string())?;
        rows.push(json!({
            "q": q,
            "total": total,
            "predicted": a.growth.predicted(*q),
            "estimate": est.to_string(),
        }));
    }
    Ok(json!({
        "growth": {"n": a.growth.n, "c": a.growth.c, "q0": a.growth.q0},
        "limit": a.extrapolated.to_string(),
        "rows": rows,
    })
    .to_string())
}

/// Irreducible representation of `name` at meridian eigenvalue `m`, with
/// the meridian conjugated to diagonal form.
fn diagonal_rep(name: &str, m: Complex64) -> Result<(Assignment<Complex64>, String, String), String> {
    let k = knot(name)?;
    let pres = k.presentation.ok_or_else(|| format!("{name} has no presentation"))?;
    let phi = riley_polynomial(&pres).map_err(|e| e.to_string())?.phi;
    let coeffs = phi
        .coefficients_in("s")
        .map_err(|e| e.to_string())?
        .iter()
        // Coefficients still list `s`, at exponent zero.
        .map(|c| c.eval_complex(|v| Some(if v == "m" { m } else { Complex64::new(0.0, 0.0) })))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    if coeffs.len() < 2 {
        return Err(format!("{name} has no irreducible representations"));
    }
    let roots = complex_roots(&coeffs, &RootConfig::default()).map_err(|e| e.to_string())?;
    let s = roots
        .into_iter()
        .filter(|s| s.norm() > 1e-9)
        .max_by(|a, b| a.im.abs().total_cmp(&b.im.abs()))
        .ok_or("no root with s ≠ 0")?;
    let rep = riley_chart(&pres, &m, &s).map_err(|e| e.to_string())?;
    let mer = pres.meridian.letters()[0].gen.clone();
    let other = pres.generators.iter().find(|g| **g != mer).cloned().ok_or("one generator")?;
    let p = diagonalizing_conjugator(&rep[&mer]).ok_or("meridian is parabolic")?;
    let pinv = p.inverse();
    let rep = rep.iter().map(|(g, x)| (g.clone(), pinv.mul(x).mul(&p))).collect();
    Ok((rep, mer, other))
}

/// Trace of `g·g′` in `K # K` as the second summand is bent by
/// `diag(a, 1/a)` with `a = e^{iθ}`, `θ` sweeping a full turn. `m` is the
/// shared meridian eigenvalue; it must avoid `0` and `±1`.
pub fn bending_trace_curve_json(name: &str, m_re: f64, m_im: f64, steps: usize) -> Result<String, String> {
    if !(2..=MAX_STEPS).contains(&steps) {
        return Err(format!("steps must be in 2..={MAX_STEPS}"));
    }
    let m = Complex64::new(m_re, m_im);
    if !(m.is_finite() && m.norm() > 1e-3 && (m * m - 1.0).norm() > 1e-3) {
        return Err("m must be finite and away from 0 and ±1".into());
    }
    let (rep, mer, other) = diagonal_rep(name, m)?;
    let boundary = [rep[&mer].clone()];
    let mut curve = Vec::with_capacity(steps);
    for i in 0..steps {
        let theta = std::f64::consts::TAU * i as f64 / steps as f64;
        let a = Complex64::from_polar(1.0, theta);
        let bent = bend(&rep, &boundary, &a).map_err(|e| e.to_string())?;
        let tr = rep[&other].mul(&bent[&other]).trace();
        curve.push(json!({"theta": theta, "trace": pair(tr)}));
    }
    Ok(json!({"m": pair(m), "curve": curve}).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn knots() -> String {
    knots_json()
}

#[wasm_bindgen(js_name = intersectionPoints)]
pub fn intersection_points_js(knot: &str, p: i64, q: i64) -> Result<String, JsError> {
    js(intersection_points_json(knot, p, q))
}

#[wasm_bindgen(js_name = growthSweep)]
pub fn growth_sweep_js(knot: &str, p: i64, q_max: i64) -> Result<String, JsError> {
    js(growth_sweep_json(knot, p, q_max))
}

#[wasm_bindgen(js_name = bendingTraceCurve)]
pub fn bending_trace_curve_js(knot: &str, m_re: f64, m_im: f64, steps: usize) -> Result<String, JsError> {
    js(bending_trace_curve_json(knot, m_re, m_im, steps))
}
