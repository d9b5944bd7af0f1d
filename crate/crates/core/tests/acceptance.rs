//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use casson_core::elimination::{a_polynomial, eval_word, fixture, lift_points, riley_chart, Assignment, Sl2};
use casson_core::invariants::{
    admissible_condition_ii, alexander_twisted_double, bundled_db, connected_sum, find, lambda_prime,
};
use casson_core::poly::{BiLaurent, IntPoly1, MPoly};
use casson_core::surgery::{
    check_nonsingular, intersection_points, linear_growth_params, total_intersection, transversal, PointConfig,
    Slope, TransversalityConfig,
};
use casson_core::whitehead::{
    bend, chart_rep, f_equivalence_check, f_poly, reducible_nonabelian_family, whitehead_group, FamilySide,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn trefoil_ahat() -> BiLaurent {
    BiLaurent::from_i64_terms(&[(1, 6, 1), (1, 0, 0)])
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t < limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn elimination_oracle() -> Outcome {
    let start = Instant::now();
    let pres = fixture("trefoil").ok_or("no trefoil fixture")?;
    let a = a_polynomial(&pres).map_err(|e| e.to_string())?.apoly;
    let sf = a.square_free().map_err(|e| e.to_string())?;
    ensure(sf == a, || format!("{a} is not square-free"))?;
    let dm = a.deg_m().map_err(|e| e.to_string())?;
    ensure(dm == 6, || format!("deg_m {dm}"))?;
    let lifts = lift_points(&pres, &a, 20, 7).map_err(|e| e.to_string())?;
    ensure(lifts.len() == 20, || format!("{} lifts", lifts.len()))?;
    let worst = lifts.iter().map(|s| s.residual).fold(0.0, f64::max);
    ensure(worst < 1e-8, || format!("lift residual {worst:e}"))?;
    let l = lambda_prime(find(&bundled_db(), "trefoil").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(l == q(3, 1), || format!("lambda' {l}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("A = {a}, 20 lifts, max residual {worst:.1e}, lambda' = 3"))
}

fn squeeze_law() -> Outcome {
    let start = Instant::now();
    let a = trefoil_ahat();
    let mut checked = 0;
    for p in 1..=3i64 {
        let g = linear_growth_params(&a, p).map_err(|e| e.to_string())?;
        ensure(g.n == 6, || format!("p = {p}: slope {}", g.n))?;
        for qq in g.q0.max(1)..=200 {
            if qq.gcd(&p) != 1 {
                continue;
            }
            let total = total_intersection(&a, Slope::new(p, qq).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(total as i64 == 6 * qq + g.c, || format!("p/q = {p}/{qq}: {total} vs 6q + {}", g.c))?;
            checked += 1;
        }
        // q = 100 is not coprime to p = 2; the nearest coprime q is used.
        let qq = if 100i64.gcd(&p) == 1 { 100 } else { 101 };
        let total = total_intersection(&a, Slope::new(p, qq).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let est = total as f64 / (2.0 * qq as f64);
        ensure((est - 3.0).abs() < 0.05, || format!("p = {p}, q = {qq}: estimate {est}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} slopes on 6q + c(p), p = 1, 2, 3"))
}

fn product_formula() -> Outcome {
    let db = bundled_db();
    let t = find(&db, "trefoil").map_err(|e| e.to_string())?;
    let sum = connected_sum(t, t).map_err(|e| e.to_string())?;
    let want = trefoil_ahat().pow(2);
    ensure(sum.ahat == want, || format!("{} vs {want}", sum.ahat))?;
    let mut pairs = 0;
    for a in &db {
        for b in &db {
            let s = connected_sum(a, b).map_err(|e| e.to_string())?;
            let (la, lb, ls) = (lambda_prime(a), lambda_prime(b), lambda_prime(&s));
            let (la, lb, ls) = (la.map_err(|e| e.to_string())?, lb.map_err(|e| e.to_string())?, ls.map_err(|e| e.to_string())?);
            ensure(ls == &la + &lb, || format!("{} # {}: {ls} vs {la} + {lb}", a.name, b.name))?;
            pairs += 1;
        }
    }
    Ok(format!("A(3_1 # 3_1) = (lm^6 + 1)^2, additivity on {pairs} pairs"))
}

fn random_slope(rng: &mut ChaCha8Rng) -> Slope {
    loop {
        let (p, q): (i64, i64) = (rng.gen_range(-60..=60), rng.gen_range(-60..=60));
        if let Ok(s) = Slope::new(p, q) {
            return s;
        }
    }
}

fn transversality() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = TransversalityConfig::default();
    let mut pairs = 0;
    while pairs < 100 {
        let (a, b) = (random_slope(&mut rng), random_slope(&mut rng));
        let det = a.p() as i128 * b.q() as i128 - b.p() as i128 * a.q() as i128;
        if det == 0 {
            continue;
        }
        let cert = transversal(a, b, &cfg).map_err(|e| e.to_string())?;
        ensure(cert.determinant == det, || format!("{a:?} {b:?}: det {}", cert.determinant))?;
        ensure(cert.point_count == det.unsigned_abs(), || format!("{a:?} {b:?}: count"))?;
        for s in [a, b] {
            ensure(check_nonsingular(s).certified(), || format!("{s:?} not certified nonsingular"))?;
        }
        pairs += 1;
    }
    within(start, Duration::from_secs(1))?;
    Ok("100 random pairs transverse, 200 slopes nonsingular".into())
}

fn whitehead_f() -> Outcome {
    let start = Instant::now();
    let rep = f_equivalence_check(500, 1).map_err(|e| e.to_string())?;
    ensure(rep.passed(), || format!("{} failures", rep.failures.len()))?;
    ensure(rep.on_curve_points >= 500 && rep.off_curve_points == 500, || "sample counts".into())?;
    // f(1, w, 1, 1), with w in place of t.
    let one = q(1, 1);
    let f = f_poly().specialize("s", &one).specialize("u", &one).specialize("v", &one);
    let w = MPoly::var("t");
    let want = &(&w.pow(3) - &(&w.pow(2) * &MPoly::int(2))) + &(&w * &MPoly::int(2));
    ensure(f == want, || format!("f(1, w, 1, 1) = {f}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{} on-curve residual <= {:.1e}, 500 off-curve residual >= {:.1e}, f(1,w,1,1) = w^3 - 2w^2 + 2w",
        rep.on_curve_points, rep.max_on_curve_residual, rep.min_off_curve_residual
    ))
}

fn reducible_families() -> Outcome {
    let g = whitehead_group();
    let relator = &g.presentation.relators[0];
    for side in [FamilySide::XParabolic, FamilySide::YParabolic] {
        for sign in [1, -1] {
            let param = MPoly::var("w");
            let fam = reducible_nonabelian_family(side, sign, param.clone()).map_err(|e| e.to_string())?;
            let rep = chart_rep(&fam).map_err(|e| e.to_string())?;
            let r = eval_word(relator, &rep).map_err(|e| e.to_string())?;
            ensure(r == Sl2::identity_like(&param), || format!("{side:?} {sign}: relator {r:?}"))?;
            let lam = eval_word(&g.lambda_y, &rep).map_err(|e| e.to_string())?;
            ensure(lam.trace() == MPoly::int(2), || format!("{side:?} {sign}: tr lambda_y {}", lam.trace()))?;
            let (x, y) = (rep["x"].trace(), rep["y"].trace());
            let pm2 = |t: &MPoly| *t == MPoly::int(2) || *t == MPoly::int(-2);
            let parabolic = match side {
                FamilySide::XParabolic => &x,
                FamilySide::YParabolic => &y,
            };
            ensure(pm2(parabolic), || format!("{side:?} {sign}: parabolic trace {parabolic}"))?;
        }
    }
    Ok("relator holds identically on both families, tr lambda_y = 2, parabolic trace = +-2".into())
}

fn twisted_doubles() -> Outcome {
    for n in -5..=5i64 {
        let d = alexander_twisted_double(n);
        let raw = IntPoly1::from_coeffs(&[n, 1 - 2 * n, n]);
        let matches = d == raw || d == raw.scale(&BigInt::from(-1)) || (n == 0 && d == IntPoly1::one());
        ensure(matches, || format!("n = {n}: {d}"))?;
    }
    ensure(alexander_twisted_double(0) == IntPoly1::one(), || "n = 0 not 1".into())?;
    let tref = IntPoly1::from_coeffs(&[1, -1, 1]);
    let a12 = admissible_condition_ii(&tref, 12).map_err(|e| e.to_string())?;
    ensure(!a12.admissible && a12.witness.as_ref() == Some(&tref), || format!("p = 12: {a12:?}"))?;
    let a5 = admissible_condition_ii(&tref, 5).map_err(|e| e.to_string())?;
    ensure(a5.admissible && a5.witness.is_none(), || format!("p = 5: {a5:?}"))?;
    Ok("n t^2 + (1-2n)t + n for n in [-5, 5]; p = 12 blocked by t^2 - t + 1, p = 5 admissible".into())
}

/// Trefoil chart point at `m = 2`, conjugated so the meridian is diagonal.
fn diagonal_trefoil() -> Result<Assignment<BigRational>, String> {
    let m = q(2, 1);
    let s = q(1, 1) - &m * &m - q(1, 4);
    let rep = riley_chart(&fixture("trefoil").ok_or("fixture")?, &m, &s).map_err(|e| e.to_string())?;
    let x = &m / (q(1, 1) - &m * &m);
    let u = Sl2::new_unchecked(q(1, 1), x, q(0, 1), q(1, 1));
    Ok(rep.iter().map(|(k, g)| (k.clone(), u.inverse().mul(g).mul(&u))).collect())
}

fn bending_witness() -> Outcome {
    let pres = fixture("trefoil").ok_or("fixture")?;
    let r1 = diagonal_trefoil()?;
    let mer = eval_word(&pres.meridian, &r1).map_err(|e| e.to_string())?;
    let lon1 = eval_word(&pres.longitude, &r1).map_err(|e| e.to_string())?;
    ensure(mer.b == q(0, 1) && mer.c == q(0, 1), || "meridian not diagonal".into())?;
    let mut mixed = Vec::new();
    for k in 1..=20 {
        let a = q(k + 1, k);
        let r2 = bend(&r1, std::slice::from_ref(&mer), &a).map_err(|e| e.to_string())?;
        let lon2 = eval_word(&pres.longitude, &r2).map_err(|e| e.to_string())?;
        let mer2 = eval_word(&pres.meridian, &r2).map_err(|e| e.to_string())?;
        // Boundary of K # K: the shared meridian and λ1·λ2.
        let lon = lon1.mul(&lon2);
        ensure(mer2 == mer, || format!("a = {a}: meridian moved"))?;
        ensure(lon.trace() == lon1.mul(&lon1).trace(), || format!("a = {a}: longitude trace moved"))?;
        ensure(mer.mul(&lon).trace() == mer.mul(&lon1).mul(&lon1).trace(), || format!("a = {a}: boundary trace moved"))?;
        mixed.push(r1["g2"].mul(&r2["g2"]).trace());
    }
    let f: Vec<f64> = mixed.iter().map(|t| num_traits::ToPrimitive::to_f64(t).unwrap_or(f64::NAN)).collect();
    let spread = f.iter().cloned().fold(f64::MIN, f64::max) - f.iter().cloned().fold(f64::MAX, f64::min);
    ensure(spread > 1e-6, || format!("mixed trace spread {spread:e}"))?;
    Ok(format!("boundary traces exact over 20 parameters, mixed trace spread {spread:.3}"))
}

fn multiplicities() -> Outcome {
    let a = trefoil_ahat();
    let slope = Slope::new(1, 5).map_err(|e| e.to_string())?;
    let cfg = PointConfig::default();
    let one = IntPoly1::one();
    let single = intersection_points(&a, slope, &one, &cfg).map_err(|e| e.to_string())?;
    let double = intersection_points(&a.pow(2), slope, &one, &cfg).map_err(|e| e.to_string())?;
    ensure(single.total == 29 && double.total == 58, || format!("totals {} {}", single.total, double.total))?;
    ensure(single.points.len() == 29 && double.points.len() == 29, || {
        format!("supports {} {}", single.points.len(), double.points.len())
    })?;
    for p in &single.points {
        let close = |z: Complex64, w: Complex64| (z - w).norm() < 1e-8;
        let hit = double.points.iter().filter(|d| close(d.m, p.m) && close(d.l, p.l)).collect::<Vec<_>>();
        ensure(hit.len() == 1, || format!("m = {}: {} matches", p.m, hit.len()))?;
        ensure(hit[0].multiplicity == 2 * p.multiplicity, || format!("m = {}: multiplicity", p.m))?;
    }
    Ok("29 support points, each multiplicity doubled, total 58".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("elimination oracle", elimination_oracle),
        ("squeeze law", squeeze_law),
        ("product formula", product_formula),
        ("transversality", transversality),
        ("Whitehead f and relator", whitehead_f),
        ("reducible non-abelian families", reducible_families),
        ("twisted-double Alexander data", twisted_doubles),
        ("bending witness", bending_witness),
        ("multiplicity handling", multiplicities),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria {failed:?}");
        std::process::exit(1);
    }
}
