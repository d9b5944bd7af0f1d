use casson_core::elimination::{eval_word, fixture};
use casson_core::invariants::{bundled_db, find};
use casson_core::poly::BiLaurent;
use casson_core::whitehead::{bend_gluing, chart_rep, solve_gluing, whitehead_group, GluingConfig, SolverConfig};
use num_complex::Complex64;

fn glue(knot: &str, n: i64, seeds: usize) -> Vec<GluingConfig> {
    solve_gluing(&fixture(knot).unwrap(), n, seeds, &SolverConfig::default()).unwrap()
}

fn ahat(name: &str) -> BiLaurent {
    find(&bundled_db(), name).unwrap().ahat.clone()
}

/// The boundary data of the Whitehead side: meridian eigenvalue `u` and
/// the matching eigenvalue of `λ_x`, which sit on the companion's curve
/// when the companion is the unknot and the double is a twist knot.
fn boundary_point(g: &GluingConfig) -> (Complex64, Complex64) {
    let rep = chart_rep(&g.chart).unwrap();
    let lam = eval_word(&whitehead_group().lambda_x, &rep).unwrap();
    (g.chart.u, lam.a)
}

#[test]
fn trefoil_double_uses_irreducible_companion() {
    let sols = glue("trefoil", 0, 40);
    assert!(!sols.is_empty());
    for s in &sols {
        assert!(s.residual < 1e-9, "{}", s.residual);
        assert!(s.rho1_irreducible);
        assert!(!s.abelian);
    }
}

#[test]
fn unknot_doubles_are_twist_knots() {
    // n = 1 gives the trefoil, n = -1 the figure eight.
    for (n, name) in [(1, "trefoil"), (-1, "figure-8")] {
        let a = ahat(name);
        let sols = glue("unknot", n, 60);
        assert!(!sols.is_empty(), "n = {n}");
        for s in &sols {
            assert!(s.abelian);
            let (m, l) = boundary_point(s);
            let scale = a.eval_abs(m.norm(), l.norm()).max(1.0);
            let v = a.eval(m, l).norm() / scale;
            assert!(v < 1e-8, "n = {n}: A({m}, {l}) = {v:e}");
        }
    }
}

#[test]
fn solutions_are_deterministic_and_sorted() {
    let a = glue("trefoil", 1, 15);
    assert_eq!(a, glue("trefoil", 1, 15));
    assert!(a.windows(2).all(|w| w[0].residual <= w[1].residual || (w[0].residual - w[1].residual).abs() < 1e-15));
}

#[test]
fn bending_a_glued_representation_keeps_it_glued() {
    let sols = glue("trefoil", 0, 40);
    let s = sols.iter().find(|s| s.rho1_irreducible).expect("an irreducible solution");
    let bent = bend_gluing(s, Complex64::new(1.3, 0.4)).unwrap();
    assert!(bent.residual < 1e-8, "{}", bent.residual);
    assert_ne!(bent.rho1, s.rho1);
}
