//! Taylor data for `f(z)/z`, by closed form or by discrete Cauchy integrals.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{varphi_coeff, Alpha};
use crate::model::FunctionModel;

/// Default extraction radius; with `max(256, 8 n_max)` nodes this balances
/// the aliasing error `r^N` against the `r^{-n}` rounding amplification.
pub const CAUCHY_DEFAULT_RADIUS: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffMethod {
    ClosedForm,
    CauchyIntegral,
}

/// Coefficients of the expanded function; index `n` multiplies `z^n`.
#[derive(Debug, Clone, Serialize)]
pub struct TaylorSeries {
    pub coefficients: Vec<Complex64>,
    pub radius_used: f64,
    pub method: CoeffMethod,
}

/// Node count used for the discrete Cauchy integral.
pub fn cauchy_node_count(n_max: usize) -> usize {
     256.max(8 * n_max)
}

/// Coefficients `c_0..c_n_max` of `g(z) = f(z)/z` via the discrete Cauchy
/// integral
///
/// ```text
/// c_n = (1/N) sum_{j<N} g(r e^{i theta_j}) r^{-n} e^{-i n theta_j}
/// ```
///
/// on `N = max(256, 8 n_max)` equispaced nodes. For index `n` the rounding
/// noise of the node sum is amplified by `r^{-n}`, so high orders need radii
/// near the upper end of the allowed range to stay meaningful.
pub fn cauchy_coeffs(f: &FunctionModel, n_max: usize, radius: f64) -> Result<TaylorSeries> {
    if !(radius > 0.0 && radius <= 0.9) {
        return Err(Error::Domain(format!(
            "extraction radius must lie in (0, 0.9], got {radius}"
        )));
    }
    if n_max > 64 {
        return Err(Error::Domain(format!(
            "coefficient extraction supports n_max <= 64, got {n_max}"
        )));
    }
    let n_nodes = cauchy_node_count(n_max);
    let mut samples = Vec::with_capacity(n_nodes);
    for j in 0..n_nodes {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n_nodes as f64;
        let z = Complex64::from_polar(radius, theta);
        let g = f
            .ratio(z)
            .map_err(|e| Error::Evaluation(format!("model evaluation failed at node {j}: {e}")))?;
        samples.push((theta, g));
    }
    let mut coefficients = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut sum = Complex64::new(0.0, 0.0);
        for &(theta, g) in &samples {
            sum += g * Complex64::from_polar(1.0, -(n as f64) * theta);
        }
        coefficients.push(sum / n_nodes as f64 * radius.powi(-(n as i32)));
    }
    Ok(TaylorSeries {
        coefficients,
        radius_used: radius,
        method: CoeffMethod::CauchyIntegral,
    })
}

/// Closed-form coefficients of `varphi_a` (that is, of `f_a(z)/z`).
pub fn extremal_series(alpha: Alpha, n_max: usize) -> TaylorSeries {
    TaylorSeries {
        coefficients: (0..=n_max)
            .map(|n| Complex64::new(varphi_coeff(alpha, n), 0.0))
            .collect(),
        radius_used: 0.0,
        method: CoeffMethod::ClosedForm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::CircleMeasure;

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    #[test]
    fn identity_extraction_is_a_delta() {
        let ts = cauchy_coeffs(&FunctionModel::Identity, 3, 0.5).unwrap();
        assert!((ts.coefficients[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for n in 1..=3 {
            assert!(ts.coefficients[n].norm() < 1e-15, "c_{n} != 0");
        }
    }

    #[test]
    fn extremal_extraction_matches_closed_form_low_order() {
        let a = alpha(0.0);
        let ts = cauchy_coeffs(&FunctionModel::extremal(a), 3, 0.5).unwrap();
        for n in 0..=3 {
            let err = (ts.coefficients[n] - Complex64::new(varphi_coeff(a, n), 0.0)).norm();
            assert!(err < 1e-10, "n={n}: err={err:e}");
        }
        assert_eq!(ts.method, CoeffMethod::CauchyIntegral);
        assert_eq!(ts.radius_used, 0.5);
    }

    #[test]
    fn point_mass_synthesis_collapses_to_extremal() {
        let a = alpha(0.0);
        let synth = FunctionModel::synthesized(a, CircleMeasure::point_mass(0.0));
        let ts = cauchy_coeffs(&synth, 2, 0.5).unwrap();
        let reference = cauchy_coeffs(&FunctionModel::extremal(a), 2, 0.5).unwrap();
        for n in 0..=2 {
            assert!((ts.coefficients[n] - reference.coefficients[n]).norm() < 1e-13);
        }
    }

    #[test]
    fn domain_checks() {
        let f = FunctionModel::Identity;
        assert!(cauchy_coeffs(&f, 3, 0.0).is_err());
        assert!(cauchy_coeffs(&f, 3, 0.91).is_err());
        assert!(cauchy_coeffs(&f, 65, 0.5).is_err());
    }

    #[test]
    fn node_count_floor() {
        assert_eq!(cauchy_node_count(3), 256);
        assert_eq!(cauchy_node_count(64), 512);
    }
}
