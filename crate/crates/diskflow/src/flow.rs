//! Semigroup dynamics: integrate the evolution equation
//!
//! ```text
//! dw/ds = -e^{i psi} f(w),   w(0) = z0,
//! ```
//!
//! which realizes the flow at complex time `t = s e^{i psi}` as a real-
//! parameter integration along the ray of angle `psi`. On top of the raw
//! flow sit the semigroup-law, exponential-squeezing and sector-extension
//! verifications.
//!
//! The stepper is an embedded Dormand-Prince 5(4) pair with PI-free step
//! control and cubic Hermite dense output between accepted steps. Reaching
//! the escape radius is a structured error carrying the crossing time: it is
//! a meaningful mathematical signal (non-generator field, or a ray outside
//! the admissible sector), not a numerical fault.

use num_complex::Complex64;

use crate::classes::{generator_test, GridConfig, MARGIN_TOL};
use crate::error::{Error, Result};
use crate::model::FunctionModel;
use crate::report::VerificationReport;

const PI: f64 = std::f64::consts::PI;

/// Widest ray angle accepted by the low-level integrator; rays this steep
/// exist purely for escape probing.
pub const PSI_PROBE_MAX: f64 = PI - 1e-9;

/// Tolerances and guards for the adaptive integrator.
#[derive(Debug, Clone)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    pub escape_radius: f64,
    /// Step cap; the cubic Hermite dense output is only fourth order in the
    /// step, so uncapped easy stretches would wreck interpolated samples.
    pub max_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
            escape_radius: 1.0 - 1e-12,
            max_step: 0.005,
        }
    }
}

impl IntegratorConfig {
    fn validate(&self) -> Result<()> {
        if self.rel_tol <= 0.0 || self.abs_tol <= 0.0 {
            return Err(Error::Domain("integrator tolerances must be > 0".into()));
        }
        if !(0.0 < self.escape_radius && self.escape_radius < 1.0) {
            return Err(Error::Domain("escape radius must lie in (0, 1)".into()));
        }
        if self.max_step <= 0.0 {
            return Err(Error::Domain("max_step must be > 0".into()));
        }
        Ok(())
    }

    /// Copy with both tolerances scaled by `factor` (used by consistency checks).
    pub fn tightened(&self, factor: f64) -> Self {
        IntegratorConfig {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..self.clone()
        }
    }
}

/// A sector `{zeta : |arg zeta| < half_angle}` in the complex time plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpec {
    half_angle: f64,
}

impl SectorSpec {
    pub fn new(half_angle: f64) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle <= PI / 2.0) {
            return Err(Error::Domain(format!(
                "sector half-angle must lie in (0, pi/2], got {half_angle}"
            )));
        }
        Ok(SectorSpec { half_angle })
    }

    /// The extension sector `pi/2 (1 - b)` guaranteed by a normalized
    /// argument bound `b < 1`.
    pub fn from_arg_bound(b: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&b) {
            return Err(Error::Domain(format!(
                "normalized argument bound must lie in [0, 1), got {b}"
            )));
        }
        SectorSpec::new(PI / 2.0 * (1.0 - b))
    }

    pub fn half_angle(self) -> f64 {
        self.half_angle
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    s: f64,
    w: Complex64,
    /// dw/ds at `s`.
    d: Complex64,
}

/// Sampled flow trajectory along one ray.
#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    /// Ray parameter values, strictly increasing from 0.
    pub times: Vec<f64>,
    pub points: Vec<Complex64>,
    /// Ray angle `psi`; 0 for real time.
    pub ray_angle: f64,
    pub steps_taken: usize,
    /// True when the whole run stayed inside the escape radius.
    pub accepted: bool,
    /// Crossing time when `accepted` is false.
    pub escape_time: Option<f64>,
    nodes: Vec<Node>,
}

impl FlowTrajectory {
    /// Final computed point (the escape crossing when `accepted` is false).
    pub fn endpoint(&self) -> Complex64 {
        *self.points.last().expect("trajectory holds >= 1 point")
    }

    /// Dense output by cubic Hermite interpolation between accepted steps.
    pub fn sample(&self, s: f64) -> Option<Complex64> {
        let last = self.nodes.last()?;
        if !(0.0..=last.s).contains(&s) {
            return None;
        }
        let idx = match self
            .nodes
            .binary_search_by(|node| node.s.total_cmp(&s))
        {
            Ok(exact) => return Some(self.nodes[exact].w),
            Err(idx) => idx,
        };
        let lo = &self.nodes[idx - 1];
        let hi = &self.nodes[idx];
        Some(hermite(lo, hi, s))
    }
}

fn hermite(lo: &Node, hi: &Node, s: f64) -> Complex64 {
    let h = hi.s - lo.s;
    let t = (s - lo.s) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    lo.w * h00 + lo.d * (h10 * h) + hi.w * h01 + hi.d * (h11 * h)
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = B1 - 5179.0 / 57600.0;
const E3: f64 = B3 - 7571.0 / 16695.0;
const E4: f64 = B4 - 393.0 / 640.0;
const E5: f64 = B5 + 92097.0 / 339200.0;
const E6: f64 = B6 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

struct StepOutcome {
    w_new: Complex64,
    /// Scaled error estimate; accept when <= 1.
    err: f64,
    /// FSAL derivative at the new point.
    d_new: Complex64,
}

fn dp45_step<F>(rhs: &F, w: Complex64, d: Complex64, h: f64) -> Result<StepOutcome>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let k1 = d;
    let k2 = rhs(w + h * (A21 * k1))?;
    let k3 = rhs(w + h * (A31 * k1 + A32 * k2))?;
    let k4 = rhs(w + h * (A41 * k1 + A42 * k2 + A43 * k3))?;
    let k5 = rhs(w + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))?;
    let k6 = rhs(w + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))?;
    let w_new = w + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    let k7 = rhs(w_new)?;
    let err_vec = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
    Ok(StepOutcome {
        w_new,
        err: err_vec.norm(),
        d_new: k7,
    })
}

struct Integration {
    nodes: Vec<Node>,
    steps_taken: usize,
    escape: Option<f64>,
}

fn integrate_ray(
    f: &FunctionModel,
    z0: Complex64,
    s_end: f64,
    psi: f64,
    cfg: &IntegratorConfig,
) -> Result<Integration> {
    cfg.validate()?;
    if z0.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "flow starts must be interior, got |z0| = {}",
            z0.norm()
        )));
    }
    if !(s_end > 0.0 && s_end.is_finite()) {
        return Err(Error::Domain(format!("flow horizon must be > 0, got {s_end}")));
    }
    if psi.abs() > PSI_PROBE_MAX {
        return Err(Error::Domain(format!(
            "ray angle must satisfy |psi| < pi, got {psi}"
        )));
    }
    let phase = Complex64::from_polar(1.0, psi);
    let rhs = move |w: Complex64| -> Result<Complex64> { Ok(-phase * f.eval_continued(w)?) };

    let mut nodes = Vec::new();
    let mut s = 0.0;
    let mut w = z0;
    let mut d = rhs(w)?;
    nodes.push(Node { s, w, d });
    if w.norm() >= cfg.escape_radius {
        return Ok(Integration {
            nodes,
            steps_taken: 0,
            escape: Some(0.0),
        });
    }

    let mut h = (1e-2 / (1.0 + d.norm())).min(s_end).min(cfg.max_step);
    let h_floor = s_end * 1e-14;
    let mut steps_taken = 0usize;
    let mut escape = None;

    while s < s_end {
        if steps_taken >= cfg.max_steps {
            return Err(Error::StepLimit {
                time: s,
                max_steps: cfg.max_steps,
            });
        }
        steps_taken += 1;
        h = h.min(s_end - s).min(cfg.max_step);
        let outcome = match dp45_step(&rhs, w, d, h) {
            Ok(out) => out,
            Err(e) => {
                // a stage strayed onto the branch cut; retry with a shorter step
                h *= 0.25;
                if h < h_floor {
                    return Err(e);
                }
                continue;
            }
        };
        let scale = cfg.abs_tol + cfg.rel_tol * w.norm().max(outcome.w_new.norm());
        let err = outcome.err / scale;
        if err <= 1.0 {
            s += h;
            w = outcome.w_new;
            d = outcome.d_new;
            nodes.push(Node { s, w, d });
            if w.norm() >= cfg.escape_radius {
                escape = Some(locate_escape(&nodes, cfg.escape_radius));
                break;
            }
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h < h_floor {
            return Err(Error::Evaluation(format!(
                "step size collapsed below {h_floor:e} at s = {s}"
            )));
        }
    }
    Ok(Integration {
        nodes,
        steps_taken,
        escape,
    })
}

/// Bisect the last Hermite segment for the crossing of the escape radius.
fn locate_escape(nodes: &[Node], radius: f64) -> f64 {
    let hi = &nodes[nodes.len() - 1];
    if nodes.len() < 2 {
        return hi.s;
    }
    let lo = &nodes[nodes.len() - 2];
    let (mut a, mut b) = (lo.s, hi.s);
    for _ in 0..80 {
        let mid = 0.5 * (a + b);
        if hermite(lo, hi, mid).norm() >= radius {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

fn build_trajectory(run: Integration, psi: f64, s_end: f64) -> FlowTrajectory {
    let (accepted, horizon, escape_time) = match run.escape {
        Some(t) => (false, t, Some(t)),
        None => (true, s_end, None),
    };
    let mut times = Vec::with_capacity(65);
    let mut points = Vec::with_capacity(65);
    if horizon <= 0.0 {
        times.push(0.0);
        points.push(run.nodes[0].w);
    } else {
        let samples = 64usize;
        for j in 0..=samples {
            let s = horizon * j as f64 / samples as f64;
            let w = sample_nodes(&run.nodes, s);
            times.push(s);
            points.push(w);
        }
    }
    FlowTrajectory {
        times,
        points,
        ray_angle: psi,
        steps_taken: run.steps_taken,
        accepted,
        escape_time,
        nodes: run.nodes,
    }
}

fn sample_nodes(nodes: &[Node], s: f64) -> Complex64 {
    match nodes.binary_search_by(|node| node.s.total_cmp(&s)) {
        Ok(exact) => nodes[exact].w,
        Err(idx) => {
            if idx == 0 {
                nodes[0].w
            } else if idx >= nodes.len() {
                nodes[nodes.len() - 1].w
            } else {
                hermite(&nodes[idx - 1], &nodes[idx], s)
            }
        }
    }
}

/// Integrate the flow of `f` from `z0` for ray parameter `t_end` along the
/// ray of angle `psi` (`|psi| < pi/2`). Escaping the disk is an error carrying
/// the crossing time; [`try_flow`] returns the truncated trajectory instead.
pub fn flow(
    f: &FunctionModel,
    z0: Complex64,
    t_end: f64,
    psi: f64,
    cfg: &IntegratorConfig,
) -> Result<FlowTrajectory> {
    if psi.abs() >= PI / 2.0 {
        return Err(Error::Domain(format!(
            "flow rays require |psi| < pi/2, got {psi}; use try_flow for escape probing"
        )));
    }
    let traj = try_flow(f, z0, t_end, psi, cfg)?;
    match traj.escape_time {
        Some(time) => Err(Error::Escape {
            time,
            radius: cfg.escape_radius,
        }),
        None => Ok(traj),
    }
}

/// Like [`flow`], but escapes come back as a truncated trajectory with
/// `accepted = false`, and rays of any angle `|psi| < pi` are allowed. This
/// is the probing entry point behind the sector checks.
pub fn try_flow(
    f: &FunctionModel,
    z0: Complex64,
    t_end: f64,
    psi: f64,
    cfg: &IntegratorConfig,
) -> Result<FlowTrajectory> {
    let run = integrate_ray(f, z0, t_end, psi, cfg)?;
    Ok(build_trajectory(run, psi, t_end))
}

/// Endpoint `phi_t(z)` of the real-time flow; `t = 0` is the identity.
pub fn flow_endpoint(
    f: &FunctionModel,
    z0: Complex64,
    t: f64,
    cfg: &IntegratorConfig,
) -> Result<Complex64> {
    if t == 0.0 {
        if z0.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "flow starts must be interior, got |z0| = {}",
                z0.norm()
            )));
        }
        return Ok(z0);
    }
    Ok(flow(f, z0, t, 0.0, cfg)?.endpoint())
}

/// Max over the grid of `|phi_{t+s}(z) - phi_t(phi_s(z))|`.
pub fn semigroup_law_check(
    f: &FunctionModel,
    z_grid: &[Complex64],
    t: f64,
    s: f64,
    cfg: &IntegratorConfig,
) -> Result<f64> {
    if t < 0.0 || s < 0.0 {
        return Err(Error::Domain("semigroup times must be >= 0".into()));
    }
    require_generator(f)?;
    let mut worst: f64 = 0.0;
    for &z in z_grid {
        let joint = flow_endpoint(f, z, t + s, cfg)?;
        let staged = flow_endpoint(f, flow_endpoint(f, z, s, cfg)?, t, cfg)?;
        worst = worst.max((joint - staged).norm());
    }
    Ok(worst)
}

fn require_generator(f: &FunctionModel) -> Result<()> {
    let verdict = generator_test(f, &GridConfig::default(), MARGIN_TOL)?;
    if !verdict.generator {
        return Err(Error::Domain(format!(
            "{f} is not a generator (inf Re f/z = {:.3e}); the flow need not stay in the disk",
            verdict.margin
        )));
    }
    Ok(())
}

/// Verify `|phi_t(z)| <= e^{-kt} |z| + tol` on the product grid, plus the
/// contraction slack at the fixed point. The minimal observed decay rate
/// `(-log |phi_t(z)|/|z|)/t` rides along as the sharpness probe: it
/// approaches `k` from above as `z` approaches the argmin of `Re f(z)/z`.
pub fn squeezing_check(
    f: &FunctionModel,
    k: f64,
    z_grid: &[Complex64],
    t_grid: &[f64],
    cfg: &IntegratorConfig,
    tol: f64,
) -> Result<VerificationReport> {
    if k < 0.0 {
        return Err(Error::Domain(format!("squeezing ratio must be >= 0, got {k}")));
    }
    if z_grid.is_empty() || t_grid.is_empty() {
        return Err(Error::Domain("squeezing needs nonempty grids".into()));
    }
    require_generator(f)?;
    let t_max = t_grid.iter().copied().fold(0.0f64, f64::max);
    let mut report = VerificationReport::new("squeezing");
    let mut worst_excess = f64::NEG_INFINITY;
    let mut min_rate = f64::INFINITY;
    let mut schwarz_excess = f64::NEG_INFINITY;
    for &z in z_grid {
        if z.norm() == 0.0 {
            return Err(Error::Domain("squeezing grid must avoid z = 0".into()));
        }
        let traj = flow(f, z, t_max, 0.0, cfg)?;
        for &t in t_grid {
            if t <= 0.0 {
                return Err(Error::Domain("squeezing times must be > 0".into()));
            }
            let w = traj
                .sample(t)
                .ok_or_else(|| Error::Evaluation(format!("no dense output at t = {t}")))?;
            worst_excess = worst_excess.max(w.norm() - (-k * t).exp() * z.norm());
            min_rate = min_rate.min(-(w.norm() / z.norm()).ln() / t);
        }
        for w in &traj.points {
            schwarz_excess = schwarz_excess.max(w.norm() - z.norm());
        }
    }
    report.push(
        "squeezing.bound",
        format!("k={k:.9}, starts={}, times={}", z_grid.len(), t_grid.len()),
        worst_excess,
        tol,
        worst_excess <= tol,
    );
    report.push(
        "squeezing.min_rate",
        format!("k={k:.9}"),
        min_rate,
        k,
        min_rate >= k - MARGIN_TOL,
    );
    report.push(
        "squeezing.schwarz",
        format!("starts={}", z_grid.len()),
        schwarz_excess,
        1e-10,
        schwarz_excess <= 1e-10,
    );
    Ok(report)
}

/// Integrate along both rays `psi = +-(pi/2 (1 - b) - delta)` from every
/// start and record any escape; escapes are report content here, not errors.
pub fn sector_extension_check(
    f: &FunctionModel,
    b: f64,
    delta: f64,
    z_grid: &[Complex64],
    s_end: f64,
    cfg: &IntegratorConfig,
) -> Result<VerificationReport> {
    let sector = SectorSpec::from_arg_bound(b)?;
    if !(delta > 0.0 && delta < sector.half_angle()) {
        return Err(Error::Domain(format!(
            "margin delta must lie in (0, {:.6}), got {delta}",
            sector.half_angle()
        )));
    }
    let mut report = VerificationReport::new("sector");
    for &sign in &[1.0, -1.0] {
        let psi = sign * (sector.half_angle() - delta);
        let mut escapes = 0usize;
        for &z in z_grid {
            let traj = try_flow(f, z, s_end, psi, cfg)?;
            if let Some(time) = traj.escape_time {
                escapes += 1;
                report.push(
                    "sector.escape",
                    format!("psi={psi:.9}, z={z}, s_end={s_end}"),
                    time,
                    0.0,
                    false,
                );
            }
        }
        report.push(
            if sign > 0.0 { "sector.ray_pos" } else { "sector.ray_neg" },
            format!("psi={psi:.9}, starts={}, s_end={s_end}", z_grid.len()),
            escapes as f64,
            0.0,
            escapes == 0,
        );
    }
    Ok(report)
}

/// Integrate along the ray of angle `psi` (any `|psi| < pi`) from each start
/// and report the escape time per start, if any.
pub fn escape_scan(
    f: &FunctionModel,
    psi: f64,
    starts: &[Complex64],
    s_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Vec<Option<f64>>> {
    starts
        .iter()
        .map(|&z| Ok(try_flow(f, z, s_end, psi, cfg)?.escape_time))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::alpha_star;
    use crate::kernel::Alpha;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn extremal(a: f64) -> FunctionModel {
        FunctionModel::extremal(Alpha::new(a).unwrap())
    }

    #[test]
    fn identity_flow_is_exponential_decay() {
        let cfg = IntegratorConfig::default();
        let traj = flow(&FunctionModel::Identity, c(0.5, 0.0), 1.0, 0.0, &cfg).unwrap();
        let expect = 0.5 * (-1.0f64).exp();
        assert!((traj.endpoint() - c(expect, 0.0)).norm() < 1e-11);
        assert!(traj.accepted);
        assert!(traj.times.len() >= 64);
        assert_eq!(traj.times[0], 0.0);
        assert_eq!(traj.points[0], c(0.5, 0.0));
        for pair in traj.times.windows(2) {
            assert!(pair[1] > pair[0]);
        }
    }

    #[test]
    fn identity_flow_along_a_ray() {
        let cfg = IntegratorConfig::default();
        let psi = PI / 4.0;
        let traj = flow(&FunctionModel::Identity, c(0.5, 0.0), 1.0, psi, &cfg).unwrap();
        let expect = 0.5 * (-Complex64::from_polar(1.0, psi)).exp();
        assert!((traj.endpoint() - expect).norm() < 1e-11);
        let modulus = 0.5 * (-(2.0f64).sqrt() / 2.0).exp();
        assert!((traj.endpoint().norm() - modulus).abs() < 1e-11);
    }

    #[test]
    fn dense_output_matches_identity_solution() {
        let cfg = IntegratorConfig::default();
        let traj = flow(&FunctionModel::Identity, c(0.3, 0.4), 2.0, 0.0, &cfg).unwrap();
        for j in 0..=40 {
            let s = 2.0 * j as f64 / 40.0;
            let w = traj.sample(s).unwrap();
            let exact = c(0.3, 0.4) * (-s).exp();
            assert!((w - exact).norm() < 2e-9, "s={s}: {w} vs {exact}");
        }
        assert!(traj.sample(2.0 + 1e-9).is_none());
    }

    #[test]
    fn beyond_alpha_star_some_start_escapes() {
        let cfg = IntegratorConfig::default();
        let f = extremal(alpha_star() + 0.05);
        let starts: Vec<Complex64> = (0..64)
            .map(|j| Complex64::from_polar(0.995, 2.0 * PI * j as f64 / 64.0))
            .collect();
        let escapes = escape_scan(&f, 0.0, &starts, 10.0, &cfg).unwrap();
        assert!(
            escapes.iter().any(|e| e.is_some()),
            "expected at least one escape"
        );
        // and the checked entry point reports it as an error
        let err = flow(&f, c(-0.995, 0.0), 10.0, 0.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Escape { .. }), "{err}");
    }

    #[test]
    fn semigroup_law_holds() {
        let cfg = IntegratorConfig::default();
        let grid: Vec<Complex64> = (0..8)
            .map(|j| Complex64::from_polar(0.7, 2.0 * PI * j as f64 / 8.0))
            .collect();
        let id_err =
            semigroup_law_check(&FunctionModel::Identity, &grid, 0.5, 0.5, &cfg).unwrap();
        assert!(id_err < 1e-12, "identity law error {id_err:e}");
        let zero_err = semigroup_law_check(&extremal(0.0), &grid, 0.0, 0.4, &cfg).unwrap();
        assert_eq!(zero_err, 0.0);
    }

    #[test]
    fn non_generators_are_rejected_by_law_check() {
        let cfg = IntegratorConfig::default();
        let err = semigroup_law_check(&extremal(1.0), &[c(0.1, 0.0)], 0.1, 0.1, &cfg).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn squeezing_identity_rate_is_one() {
        let cfg = IntegratorConfig::default();
        let grid = [c(0.5, 0.0), c(0.0, 0.7)];
        let report =
            squeezing_check(&FunctionModel::Identity, 1.0, &grid, &[0.5, 1.0], &cfg, 1e-8)
                .unwrap();
        assert!(report.passed, "{report:?}");
        let rate = report
            .claims
            .iter()
            .find(|c| c.claim == "squeezing.min_rate")
            .unwrap()
            .measured;
        assert!((rate - 1.0).abs() < 1e-9);
    }

    #[test]
    fn step_limit_is_reported() {
        let cfg = IntegratorConfig {
            max_steps: 3,
            ..IntegratorConfig::default()
        };
        let err = flow(&extremal(0.0), c(0.9, 0.0), 10.0, 0.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::StepLimit { .. }), "{err}");
    }

    #[test]
    fn flow_domain_checks() {
        let cfg = IntegratorConfig::default();
        let f = FunctionModel::Identity;
        assert!(flow(&f, c(1.0, 0.0), 1.0, 0.0, &cfg).is_err());
        assert!(flow(&f, c(0.5, 0.0), 0.0, 0.0, &cfg).is_err());
        assert!(flow(&f, c(0.5, 0.0), 1.0, 1.6, &cfg).is_err());
        // probing entry point tolerates steep rays
        assert!(try_flow(&f, c(0.5, 0.0), 1.0, 1.6, &cfg).is_ok());
    }

    #[test]
    fn endpoint_converges_at_fifth_order_in_fixed_steps() {
        // fixed-step DP45 propagates the 5th-order solution; halving the step
        // should shrink the endpoint error by about 2^5
        let f = extremal(0.0);
        let rhs = |w: Complex64| f.eval_continued(w).map(|v| -v);
        let reference = {
            let cfg = IntegratorConfig {
                rel_tol: 1e-13,
                abs_tol: 1e-15,
                ..IntegratorConfig::default()
            };
            flow(&f, c(0.5, 0.0), 1.0, 0.0, &cfg).unwrap().endpoint()
        };
        let run = |n: usize| -> Complex64 {
            let h = 1.0 / n as f64;
            let mut w = c(0.5, 0.0);
            let mut d = rhs(w).unwrap();
            for _ in 0..n {
                let out = dp45_step(&rhs, w, d, h).unwrap();
                w = out.w_new;
                d = out.d_new;
            }
            w
        };
        let e1 = (run(16) - reference).norm();
        let e2 = (run(32) - reference).norm();
        assert!(e1 / e2 > 16.0, "order ratio {}", e1 / e2);
    }

    #[test]
    fn sector_spec_validation() {
        assert!(SectorSpec::new(0.0).is_err());
        assert!(SectorSpec::new(2.0).is_err());
        assert!(SectorSpec::from_arg_bound(1.0).is_err());
        let s = SectorSpec::from_arg_bound(0.0).unwrap();
        assert!((s.half_angle() - PI / 2.0).abs() < 1e-15);
    }
}
