//! Consistency checks on the flow integrator: dense-output residuals,
//! tolerance scaling, and the degenerate squeezing case.

use diskflow::*;

use std::f64::consts::PI;

fn extremal(a: f64) -> FunctionModel {
    FunctionModel::extremal(Alpha::new(a).unwrap())
}

fn circle_grid(r: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64))
        .collect()
}

/// Tightening the tolerances tenfold moves endpoints by far less than the
/// verification budgets rely on.
#[test]
fn step_halving_consistency() {
    let cfg = IntegratorConfig::default();
    let tight = cfg.tightened(0.1);
    for &a in &[0.0, 0.3] {
        let f = extremal(a);
        for z in circle_grid(0.9, 8) {
            let loose_end = flow(&f, z, 2.0, 0.0, &cfg).unwrap().endpoint();
            let tight_end = flow(&f, z, 2.0, 0.0, &tight).unwrap().endpoint();
            let diff = (loose_end - tight_end).norm();
            assert!(diff < 1e-8, "alpha={a} z={z}: endpoint moved {diff:e}");
        }
    }
}

/// The dense output satisfies the evolution equation: centered differences
/// reproduce -e^{i psi} f(w) to 1e-6 (1 + |f(w)|).
#[test]
fn evolution_equation_residual() {
    let cfg = IntegratorConfig::default();
    for &(a, psi) in &[(0.0, 0.0), (0.3, 0.4), (0.0, -0.3)] {
        let f = extremal(a);
        let traj = flow(&f, Complex64::new(0.7, 0.35), 3.0, psi, &cfg).unwrap();
        let phase = Complex64::from_polar(1.0, psi);
        let h = 1e-5;
        for j in 1..traj.times.len() - 1 {
            let s = traj.times[j];
            let w = traj.points[j];
            let wp = traj.sample(s + h).unwrap();
            let wm = traj.sample(s - h).unwrap();
            let fd = (wp - wm) / (2.0 * h);
            let fw = phase * f.eval(w).unwrap();
            let residual = (fd + fw).norm();
            let budget = 1e-6 * (1.0 + fw.norm());
            assert!(
                residual < budget,
                "alpha={a} psi={psi} s={s}: residual {residual:e} > {budget:e}"
            );
        }
    }
}

/// The law error shrinks as tolerances tighten, and sits below 1e-8 at the
/// defaults.
#[test]
fn law_error_decreases_with_tolerance() {
    let grid = circle_grid(0.8, 8);
    let f = extremal(0.0);
    let errs: Vec<f64> = [1e-5, 1e-7, 1e-10]
        .iter()
        .map(|&rel| {
            let cfg = IntegratorConfig {
                rel_tol: rel,
                abs_tol: rel * 1e-2,
                ..IntegratorConfig::default()
            };
            semigroup_law_check(&f, &grid, 0.3, 0.7, &cfg).unwrap()
        })
        .collect();
    assert!(
        errs[0] >= errs[1] && errs[1] >= errs[2],
        "law errors not monotone: {errs:?}"
    );
    assert!(errs[2] < 1e-8, "tight-tolerance law error {:e}", errs[2]);
    assert!(
        errs[2] < errs[0] / 10.0 || errs[0] < 1e-12,
        "tightening 1e5x barely helped: {errs:?}"
    );
}

/// Degenerate squeezing: k = 0 reduces to the Schwarz contraction and holds
/// for every verified generator fixing the origin.
#[test]
fn zero_rate_squeezing_for_generators() {
    let cfg = IntegratorConfig::default();
    let grid = circle_grid(0.85, 6);
    let times = [0.5, 1.0, 2.0];
    for model in [
        FunctionModel::Identity,
        extremal(0.0),
        extremal(alpha_star()),
        FunctionModel::synthesized(
            Alpha::new(0.3).unwrap(),
            CircleMeasure::random(11, 3).unwrap(),
        ),
    ] {
        let report = squeezing_check(&model, 0.0, &grid, &times, &cfg, 1e-8).unwrap();
        assert!(report.passed, "{model}: {:?}", report.claims);
    }
}

/// Escape scanning flags rays outside the admissible sector.
#[test]
fn steep_rays_escape() {
    let cfg = IntegratorConfig::default();
    let f = extremal(0.0);
    let starts = circle_grid(0.9, 16);
    let escapes = escape_scan(&f, PI / 2.0 + 0.1, &starts, 20.0, &cfg).unwrap();
    assert!(
        escapes.iter().any(|e| e.is_some()),
        "no escape found beyond the half-plane ray"
    );
}
