//! The log kernel `F(z) = -Log(1-z)/z` (equal to the hypergeometric value
//! ₂F₁(1,1;2;z)), the one-parameter family
//!
//! ```text
//! varphi_a(z) = -(1+2a) - 2(1+a) Log(1-z)/z,   a >= -1,
//! ```
//!
//! its first two derivatives, and its Taylor coefficients in closed form.
//!
//! Evaluation switches to the power series `sum z^n/(n+1)` for `|z| <= 0.25`,
//! which removes the `0/0` cancellation of the closed form near the origin;
//! at ratio 0.25 the series reaches machine precision in under 30 terms.
//! Boundary points (`|z| = 1`, `z != 1`) use the closed form directly; the
//! singular point `z = 1` is always an error, never a limit.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Crossover radius between series and closed-form evaluation.
const SERIES_RADIUS: f64 = 0.25;
/// Series terms below this magnitude are dropped.
const SERIES_EPS: f64 = 1e-17;
/// Slack on `|z| <= 1` domain checks.
const DISK_SLACK: f64 = 1e-12;

/// Class parameter `a >= -1`.
///
/// The value `-1` indexes the degenerate bottom of the family (the class
/// containing only the identity); validation happens once at construction so
/// downstream code can take the range for granted.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < -1.0 {
            return Err(Error::Domain(format!(
                "class parameter must satisfy alpha >= -1, got {alpha}"
            )));
        }
        Ok(Alpha(alpha))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `2(1+a)`, the factor carried by every nonconstant Taylor coefficient.
    pub(crate) fn lead(self) -> f64 {
        2.0 * (1.0 + self.0)
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn check_closed_disk(z: Complex64) -> Result<()> {
    if z.re == 1.0 && z.im == 0.0 {
        return Err(Error::Domain("kernel is singular at z = 1".into()));
    }
    if z.norm() > 1.0 + DISK_SLACK {
        return Err(Error::Domain(format!(
            "kernel arguments must satisfy |z| <= 1, got |z| = {}",
            z.norm()
        )));
    }
    Ok(())
}

/// True when `z` sits on the branch cut `[1, +inf)` of `Log(1-z)`.
fn on_branch_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re >= 1.0
}

/// ₂F₁(1,1;2;z) = `-Log(1-z)/z` with the removable singularity filled in at 0.
///
/// Accepts the closed unit disk minus the point `z = 1`.
pub fn hyper2f1_112(z: Complex64) -> Result<Complex64> {
    check_closed_disk(z)?;
    Ok(log_kernel(z))
}

/// Unchecked kernel evaluation; callers guarantee `z` is off the cut.
pub(crate) fn log_kernel(z: Complex64) -> Complex64 {
    if z.norm() <= SERIES_RADIUS {
        log_kernel_series(z)
    } else {
        -(Complex64::new(1.0, 0.0) - z).ln() / z
    }
}

/// `sum_{n>=0} z^n/(n+1)`, truncated once the term magnitude drops below 1e-17.
fn log_kernel_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut zp = Complex64::new(1.0, 0.0);
    for n in 1..80usize {
        zp *= z;
        let term = zp / (n as f64 + 1.0);
        sum += term;
        if term.norm() < SERIES_EPS {
            break;
        }
    }
    sum
}

/// The family member `varphi_a(z) = -(1+2a) + 2(1+a) * hyper2f1_112(z)`.
pub fn varphi(alpha: Alpha, z: Complex64) -> Result<Complex64> {
    check_closed_disk(z)?;
    Ok(varphi_raw(alpha, z))
}

pub(crate) fn varphi_raw(alpha: Alpha, z: Complex64) -> Complex64 {
    // written as 1 + 2(1+a)(F(z) - 1) so the normalization at z = 0 is exact
    Complex64::new(1.0, 0.0) + alpha.lead() * (log_kernel(z) - 1.0)
}

/// `varphi_a` on its analytic continuation domain (everything off the cut
/// `[1, inf)`).
///
/// The flow integrator needs this: Runge-Kutta stage points may overshoot the
/// closed disk slightly, and escape probing deliberately follows trajectories
/// up to the escape radius.
pub(crate) fn varphi_continued(alpha: Alpha, z: Complex64) -> Result<Complex64> {
    if on_branch_cut(z) {
        return Err(Error::Evaluation(format!(
            "kernel evaluated on the branch cut [1, inf) at z = {z}"
        )));
    }
    Ok(varphi_raw(alpha, z))
}

/// First or second derivative of `varphi_a`, interior points only.
///
/// Closed forms (with `F = hyper2f1_112`):
///
/// ```text
/// varphi'  = 2(1+a) (1/(1-z) - F(z)) / z
/// varphi'' = 2(1+a) (z/(1-z)^2 - 2/(1-z) + 2 F(z)) / z^2
/// ```
///
/// both of which cancel catastrophically near 0, so `|z| <= 0.25` falls back
/// to the differentiated series.
pub fn varphi_deriv(alpha: Alpha, z: Complex64, order: u32) -> Result<Complex64> {
    if order != 1 && order != 2 {
        return Err(Error::Domain(format!(
            "derivative order must be 1 or 2, got {order}"
        )));
    }
    if z.norm() > 1.0 - 1e-9 {
        return Err(Error::Domain(format!(
            "derivatives require |z| <= 1 - 1e-9, got |z| = {}",
            z.norm()
        )));
    }
    Ok(match order {
        1 => varphi_d1(alpha, z),
        _ => varphi_d2(alpha, z),
    })
}

pub(crate) fn varphi_d1(alpha: Alpha, z: Complex64) -> Complex64 {
    if z.norm() <= SERIES_RADIUS {
        // sum_{n>=1} n/(n+1) z^{n-1}
        let mut sum = Complex64::new(0.5, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for n in 2..90usize {
            zp *= z;
            let term = zp * (n as f64 / (n as f64 + 1.0));
            sum += term;
            if term.norm() < SERIES_EPS {
                break;
            }
        }
        alpha.lead() * sum
    } else {
        let inv = (Complex64::new(1.0, 0.0) - z).inv();
        alpha.lead() * (inv - log_kernel(z)) / z
    }
}

pub(crate) fn varphi_d2(alpha: Alpha, z: Complex64) -> Complex64 {
    if z.norm() <= SERIES_RADIUS {
        // sum_{n>=2} n(n-1)/(n+1) z^{n-2}
        let mut sum = Complex64::new(2.0 / 3.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for n in 3..90usize {
            zp *= z;
            let nf = n as f64;
            let term = zp * (nf * (nf - 1.0) / (nf + 1.0));
            sum += term;
            if term.norm() < SERIES_EPS {
                break;
            }
        }
        alpha.lead() * sum
    } else {
        let inv = (Complex64::new(1.0, 0.0) - z).inv();
        alpha.lead() * (z * inv * inv - 2.0 * inv + 2.0 * log_kernel(z)) / (z * z)
    }
}

/// Taylor coefficient of `varphi_a`: 1 for `n = 0`, else `2(1+a)/(n+1)`.
pub fn varphi_coeff(alpha: Alpha, n: usize) -> f64 {
    if n == 0 {
        1.0
    } else {
        alpha.lead() / (n as f64 + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_at_zero_is_one() {
        assert_eq!(hyper2f1_112(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn kernel_at_minus_one_is_ln2() {
        let v = hyper2f1_112(c(-1.0, 0.0)).unwrap();
        assert!((v.re - LN_2).abs() < 1e-15, "{v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn kernel_at_half_is_two_ln2() {
        let v = hyper2f1_112(c(0.5, 0.0)).unwrap();
        assert!((v.re - 2.0 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn kernel_rejects_singular_point_and_exterior() {
        assert!(hyper2f1_112(c(1.0, 0.0)).is_err());
        assert!(hyper2f1_112(c(1.1, 0.0)).is_err());
        assert!(hyper2f1_112(c(0.8, 0.8)).is_err());
        // boundary itself is fine
        assert!(hyper2f1_112(c(0.0, 1.0)).is_ok());
    }

    #[test]
    fn series_and_closed_form_agree_across_crossover() {
        for &r in &[0.2499, 0.2501] {
            for k in 0..16 {
                let th = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
                let z = Complex64::from_polar(r, th);
                let series = log_kernel_series(z);
                let closed = -(Complex64::new(1.0, 0.0) - z).ln() / z;
                assert!(
                    (series - closed).norm() < 1e-15,
                    "r={r} th={th}: {series} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn varphi_normalization_for_all_alpha() {
        for &a in &[-1.0, -0.5, 0.0, 0.3, 1.0, 5.0] {
            let v = varphi(Alpha::new(a).unwrap(), c(0.0, 0.0)).unwrap();
            assert_eq!(v, c(1.0, 0.0));
        }
    }

    #[test]
    fn varphi_at_minus_one() {
        let v = varphi(Alpha::new(0.0).unwrap(), c(-1.0, 0.0)).unwrap();
        assert!((v.re - (2.0 * LN_2 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn varphi_degenerate_alpha_is_constant_one() {
        let a = Alpha::new(-1.0).unwrap();
        let v = varphi(a, c(0.7, 0.1)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn first_derivative_at_zero_is_rho_one() {
        let v = varphi_deriv(Alpha::new(0.0).unwrap(), c(0.0, 0.0), 1).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_of_constant_member_vanishes() {
        let v = varphi_deriv(Alpha::new(-1.0).unwrap(), c(0.5, 0.0), 1).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn second_derivative_at_zero_is_twice_rho_two() {
        let a = Alpha::new(0.5).unwrap();
        let v = varphi_deriv(a, c(0.0, 0.0), 2).unwrap();
        let expect = 2.0 * varphi_coeff(a, 2);
        assert!((v - c(expect, 0.0)).norm() < 1e-15, "{v} vs {expect}");
    }

    #[test]
    fn deriv_rejects_bad_order_and_boundary() {
        let a = Alpha::new(0.0).unwrap();
        assert!(varphi_deriv(a, c(0.1, 0.0), 0).is_err());
        assert!(varphi_deriv(a, c(0.1, 0.0), 3).is_err());
        assert!(varphi_deriv(a, c(1.0 - 1e-10, 0.0), 1).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let a = Alpha::new(0.3).unwrap();
        let h = 1e-6;
        for k in 0..24 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 24.0;
            for &r in &[0.05, 0.2, 0.26, 0.5, 0.9] {
                let z = Complex64::from_polar(r, th);
                let fp = varphi(a, z + c(h, 0.0)).unwrap();
                let fm = varphi(a, z - c(h, 0.0)).unwrap();
                let fd = (fp - fm) / (2.0 * h);
                let d1 = varphi_d1(a, z);
                assert!((fd - d1).norm() < 1e-6, "z={z}: fd={fd} d1={d1}");
                let dp = varphi_d1(a, z + c(h, 0.0));
                let dm = varphi_d1(a, z - c(h, 0.0));
                let fd2 = (dp - dm) / (2.0 * h);
                let d2 = varphi_d2(a, z);
                assert!((fd2 - d2).norm() < 1e-5, "z={z}: fd2={fd2} d2={d2}");
            }
        }
    }

    #[test]
    fn coefficients() {
        let a0 = Alpha::new(0.0).unwrap();
        assert_eq!(varphi_coeff(a0, 0), 1.0);
        assert_eq!(varphi_coeff(a0, 1), 1.0);
        assert_eq!(varphi_coeff(Alpha::new(0.5).unwrap(), 3), 0.75);
    }

    #[test]
    fn alpha_rejects_below_minus_one() {
        assert!(Alpha::new(-1.0001).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
        assert!(Alpha::new(-1.0).is_ok());
    }

    #[test]
    fn principal_branch_is_unambiguous_inside_disk() {
        // Re(1-z) > 0 on the disk, so Im Log(1-z) stays in (-pi/2, pi/2).
        for i in 0..40 {
            for j in 0..40 {
                let z = c(-0.95 + 0.0487 * i as f64, -0.95 + 0.0487 * j as f64);
                if z.norm() < 0.999 {
                    let im = (Complex64::new(1.0, 0.0) - z).ln().im;
                    assert!(im.abs() < std::f64::consts::FRAC_PI_2);
                }
            }
        }
    }

    #[test]
    fn continued_evaluation_rejects_cut_only() {
        let a = Alpha::new(0.0).unwrap();
        assert!(varphi_continued(a, c(1.5, 0.0)).is_err());
        assert!(varphi_continued(a, c(1.0, 0.0)).is_err());
        assert!(varphi_continued(a, c(1.5, 0.01)).is_ok());
        assert!(varphi_continued(a, c(-3.0, 0.0)).is_ok());
    }
}
