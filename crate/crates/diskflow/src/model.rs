//! Symbolic members of the derivative-bounded classes and their evaluation.
//!
//! A `FunctionModel` describes a normalized holomorphic function `f` on the
//! disk (`f(0) = 0`, `f'(0) = 1`) in one of four shapes:
//!
//! * `Identity` — `f(z) = z`;
//! * `Extremal { alpha }` — `f(z) = z varphi_a(z)`, the boundary member;
//! * `Synthesized { alpha, measure }` — the Herglotz-type synthesis
//!   `f(z) = z * sum_j w_j varphi_a(z e^{-i theta_j})`;
//! * `Rotated { angle, inner }` — `z -> e^{-i angle} inner(e^{i angle} z)`,
//!   which preserves class membership.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{self, Alpha};
use crate::measure::CircleMeasure;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionModel {
    Identity,
    Extremal {
        alpha: Alpha,
    },
    Synthesized {
        alpha: Alpha,
        measure: CircleMeasure,
    },
    Rotated {
        angle: f64,
        inner: Box<FunctionModel>,
    },
}

impl FunctionModel {
    pub fn extremal(alpha: Alpha) -> Self {
        FunctionModel::Extremal { alpha }
    }

    pub fn synthesized(alpha: Alpha, measure: CircleMeasure) -> Self {
        FunctionModel::Synthesized { alpha, measure }
    }

    pub fn rotated(angle: f64, inner: FunctionModel) -> Self {
        FunctionModel::Rotated {
            angle,
            inner: Box::new(inner),
        }
    }

    /// The class parameter of the innermost kernel-backed model, if any.
    pub fn alpha(&self) -> Option<Alpha> {
        match self {
            FunctionModel::Identity => None,
            FunctionModel::Extremal { alpha } | FunctionModel::Synthesized { alpha, .. } => {
                Some(*alpha)
            }
            FunctionModel::Rotated { inner, .. } => inner.alpha(),
        }
    }

    /// `f(z)/z`, extended by continuity to `1` at `z = 0`.
    ///
    /// Rotation acts trivially here: `f(z)/z = inner(w)/w` at `w = e^{i a} z`.
    pub fn ratio(&self, z: Complex64) -> Result<Complex64> {
        match self {
            FunctionModel::Identity => Ok(Complex64::new(1.0, 0.0)),
            FunctionModel::Extremal { alpha } => kernel::varphi(*alpha, z),
            FunctionModel::Synthesized { alpha, measure } => {
                measure_ratio(*alpha, measure, z, false)
            }
            FunctionModel::Rotated { angle, inner } => {
                inner.ratio(Complex64::from_polar(1.0, *angle) * z)
            }
        }
    }

    /// `f(z)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(z * self.ratio(z)?)
    }

    /// `f'(z)`, interior points only.
    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 - 1e-9 {
            return Err(Error::Domain(format!(
                "derivatives require |z| <= 1 - 1e-9, got |z| = {}",
                z.norm()
            )));
        }
        Ok(self.deriv_unchecked(z))
    }

    fn deriv_unchecked(&self, z: Complex64) -> Complex64 {
        match self {
            FunctionModel::Identity => Complex64::new(1.0, 0.0),
            // (z varphi_a)' collapses to -(1+2a) + 2(1+a)/(1-z), exact on the disk.
            FunctionModel::Extremal { alpha } => {
                Complex64::new(-(1.0 + 2.0 * alpha.get()), 0.0)
                    + alpha.lead() * (Complex64::new(1.0, 0.0) - z).inv()
            }
            FunctionModel::Synthesized { alpha, measure } => measure
                .atoms()
                .iter()
                .map(|a| {
                    let rot = Complex64::from_polar(1.0, -a.theta);
                    let u = z * rot;
                    a.weight * (kernel::varphi_raw(*alpha, u) + u * kernel::varphi_d1(*alpha, u))
                })
                .sum(),
            FunctionModel::Rotated { angle, inner } => {
                inner.deriv_unchecked(Complex64::from_polar(1.0, *angle) * z)
            }
        }
    }

    /// `f(z)/z` on the analytic continuation domain; used by the flow
    /// integrator, whose stage points may leave the closed disk.
    pub(crate) fn ratio_continued(&self, z: Complex64) -> Result<Complex64> {
        match self {
            FunctionModel::Identity => Ok(Complex64::new(1.0, 0.0)),
            FunctionModel::Extremal { alpha } => kernel::varphi_continued(*alpha, z),
            FunctionModel::Synthesized { alpha, measure } => {
                measure_ratio(*alpha, measure, z, true)
            }
            FunctionModel::Rotated { angle, inner } => {
                inner.ratio_continued(Complex64::from_polar(1.0, *angle) * z)
            }
        }
    }

    pub(crate) fn eval_continued(&self, z: Complex64) -> Result<Complex64> {
        Ok(z * self.ratio_continued(z)?)
    }
}

impl std::fmt::Display for FunctionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctionModel::Identity => write!(f, "identity"),
            FunctionModel::Extremal { alpha } => write!(f, "extremal(alpha={alpha})"),
            FunctionModel::Synthesized { alpha, measure } => {
                write!(f, "synthesized(alpha={alpha}, atoms={})", measure.len())
            }
            FunctionModel::Rotated { angle, inner } => {
                write!(f, "rotated(theta={angle}, {inner})")
            }
        }
    }
}

fn measure_ratio(
    alpha: Alpha,
    measure: &CircleMeasure,
    z: Complex64,
    continued: bool,
) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for a in measure.atoms() {
        let u = z * Complex64::from_polar(1.0, -a.theta);
        let v = if continued {
            kernel::varphi_continued(alpha, u)?
        } else {
            kernel::varphi(alpha, u)?
        };
        sum += a.weight * v;
    }
    Ok(sum)
}

/// `f(z) = z * sum_j w_j varphi_a(z e^{-i theta_j})`, `|z| < 1`.
pub fn synth_eval(alpha: Alpha, measure: &CircleMeasure, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "synthesis evaluation requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    Ok(z * measure_ratio(alpha, measure, z, false)?)
}

/// `f'(z) = sum_j w_j [varphi_a(u) + u varphi_a'(u)]` at `u = z e^{-i theta_j}`.
pub fn synth_deriv(alpha: Alpha, measure: &CircleMeasure, z: Complex64) -> Result<Complex64> {
    FunctionModel::synthesized(alpha, measure.clone()).deriv(z)
}

/// Taylor coefficient `a_k` of `f(z) = z + sum_{k>=2} a_k z^k`:
/// `a_k = (2(1+alpha)/k) m_{k-1}`.
pub fn synth_coeff(alpha: Alpha, measure: &CircleMeasure, k: usize) -> Result<Complex64> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "synthesis coefficients start at k = 2, got {k}"
        )));
    }
    Ok(measure.moment((k - 1) as u32) * (alpha.lead() / k as f64))
}

/// The positive-real-part transform `sum_j w_j (1+z e^{-i theta_j})/(1-z e^{-i theta_j})`.
pub fn herglotz_p(measure: &CircleMeasure, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "the positive-real-part transform requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(measure
        .atoms()
        .iter()
        .map(|a| {
            let u = z * Complex64::from_polar(1.0, -a.theta);
            a.weight * (one + u) / (one - u)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Atom;
    use std::f64::consts::{LN_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    fn symmetric_pair() -> CircleMeasure {
        CircleMeasure::new(vec![
            Atom {
                theta: 0.0,
                weight: 0.5,
            },
            Atom {
                theta: PI,
                weight: 0.5,
            },
        ])
        .unwrap()
    }

    #[test]
    fn synth_eval_point_mass_matches_extremal_value() {
        let mu = CircleMeasure::point_mass(0.0);
        let v = synth_eval(alpha(0.0), &mu, c(0.5, 0.0)).unwrap();
        let expect = 0.5 * (-1.0 + 4.0 * LN_2);
        assert!((v - c(expect, 0.0)).norm() < 1e-14, "{v} vs {expect}");
    }

    #[test]
    fn synthesis_is_normalized() {
        let mu = CircleMeasure::random(3, 4).unwrap();
        let a = alpha(0.3);
        assert_eq!(synth_eval(a, &mu, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let d0 = synth_deriv(a, &mu, c(0.0, 0.0)).unwrap();
        assert!((d0 - c(1.0, 0.0)).norm() < 1e-12, "f'(0) = {d0}");
    }

    #[test]
    fn degenerate_alpha_synthesizes_the_identity() {
        let mu = CircleMeasure::random(5, 3).unwrap();
        let z = c(0.0, 0.3);
        let v = synth_eval(alpha(-1.0), &mu, z).unwrap();
        assert!((v - z).norm() < 1e-15);
        let d = synth_deriv(alpha(-1.0), &mu, c(0.4, -0.2)).unwrap();
        assert!((d - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn synth_deriv_near_boundary_matches_closed_form() {
        let mu = CircleMeasure::point_mass(0.0);
        let z = c(-0.99, 0.0);
        let d = synth_deriv(alpha(0.0), &mu, z).unwrap();
        let expect = -1.0 + 2.0 / 1.99;
        assert!(d.re > 0.0);
        assert!((d - c(expect, 0.0)).norm() < 1e-12, "{d} vs {expect}");
    }

    #[test]
    fn synth_coeff_examples() {
        let mu0 = CircleMeasure::point_mass(0.0);
        let a2 = synth_coeff(alpha(0.0), &mu0, 2).unwrap();
        assert!((a2 - c(1.0, 0.0)).norm() < 1e-15);
        let a2s = synth_coeff(alpha(0.0), &symmetric_pair(), 2).unwrap();
        assert!(a2s.norm() < 1e-15);
        let a2d = synth_coeff(alpha(-1.0), &mu0, 2).unwrap();
        assert_eq!(a2d, c(0.0, 0.0));
        assert!(synth_coeff(alpha(0.0), &mu0, 1).is_err());
    }

    #[test]
    fn herglotz_values() {
        let mu0 = CircleMeasure::point_mass(0.0);
        assert_eq!(herglotz_p(&mu0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let v = herglotz_p(&mu0, c(0.5, 0.0)).unwrap();
        assert!((v - c(3.0, 0.0)).norm() < 1e-14);
        let w = herglotz_p(&symmetric_pair(), c(0.5, 0.0)).unwrap();
        assert!((w - c(5.0 / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rotation_identities() {
        let f = FunctionModel::rotated(1.0, FunctionModel::extremal(alpha(0.4)));
        let z = c(0.3, 0.2);
        // f(z) = e^{-i} f_a(e^{i} z)
        let rot = Complex64::from_polar(1.0, 1.0);
        let direct = rot.inv() * FunctionModel::extremal(alpha(0.4)).eval(rot * z).unwrap();
        assert!((f.eval(z).unwrap() - direct).norm() < 1e-14);
        // f'(z) = f_a'(e^{i} z)
        let d = FunctionModel::extremal(alpha(0.4)).deriv(rot * z).unwrap();
        assert!((f.deriv(z).unwrap() - d).norm() < 1e-14);
    }

    #[test]
    fn rotating_the_identity_is_the_identity() {
        let f = FunctionModel::rotated(2.0, FunctionModel::Identity);
        let z = c(-0.4, 0.1);
        assert_eq!(f.eval(z).unwrap(), z);
    }

    #[test]
    fn extremal_deriv_matches_generic_synthesis_path() {
        let a = alpha(0.3);
        let f = FunctionModel::extremal(a);
        let g = FunctionModel::synthesized(a, CircleMeasure::point_mass(0.0));
        for &re in &[-0.9, -0.3, 0.0, 0.2, 0.7] {
            let z = c(re, 0.21);
            if z.norm() < 0.95 {
                let df = f.deriv(z).unwrap();
                let dg = g.deriv(z).unwrap();
                assert!((df - dg).norm() < 1e-12, "z={z}: {df} vs {dg}");
            }
        }
    }

    #[test]
    fn domain_checks() {
        let mu = CircleMeasure::point_mass(0.0);
        assert!(synth_eval(alpha(0.0), &mu, c(1.0, 0.0)).is_err());
        assert!(herglotz_p(&mu, c(0.0, 1.0)).is_err());
        let f = FunctionModel::extremal(alpha(0.0));
        assert!(f.deriv(c(0.9999999999, 0.0)).is_err());
    }
}
