//! Numerics for the one-parameter family of function classes on the unit
//! disk cut out by the derivative bound `Re f'(z) >= -alpha`.
//!
//! Everything is built on the log kernel `-log(1-z)/z` (the hypergeometric
//! value ₂F₁(1,1;2;z)):
//!
//! * [`kernel`] — stable evaluation of the kernel family `varphi_alpha`, its
//!   derivatives, and closed-form Taylor coefficients;
//! * [`measure`] / [`model`] — atomic probability measures on the circle and
//!   the synthesis `f(z) = z ∫ varphi_alpha(z conj(zeta)) dmu(zeta)` of class
//!   members, with moments and coefficients in closed form;
//! * [`taylor`] — coefficient extraction by discrete Cauchy integrals, the
//!   independent cross-check of every closed form;
//! * [`classes`] — membership and infimum functionals, the sharp constants
//!   `K` and `B`, generator/convexity/subordination verdicts, Fekete-Szego
//!   functionals with a brute-force oracle, and filtration checks;
//! * [`flow`] — semigroup trajectories of the evolution equation
//!   `dphi_t/dt + f(phi_t) = 0`, exponential squeezing, and analytic
//!   extension along complex-time rays;
//! * [`report`] — structured pass/fail records shared by the verification
//!   front ends.
//!
//! All operations are pure and deterministic; values are freely shareable
//! between threads.

pub mod classes;
pub mod error;
pub mod flow;
pub mod kernel;
pub mod measure;
pub mod model;
pub mod report;
pub mod search;
pub mod taylor;
pub mod winding;

pub use classes::{
    alpha_star, b_numeric, b_numeric_with_grid, convexity_check, fs_class_oracle, fs_varphi,
    generator_test, inf_re_deriv, k_closed, k_numeric, lstar_representation_check, membership,
    strictness_check, subordination_check, totally_extremal_check, ClassConstants,
    ExtremalityReport, FeketeSzegoBounds, FeketeSzegoKernel, GeneratorVerdict, GridConfig,
    MembershipVerdict, MARGIN_TOL,
};
pub use error::{Error, Result};
pub use flow::{
    escape_scan, flow, flow_endpoint, sector_extension_check, semigroup_law_check,
    squeezing_check, try_flow, FlowTrajectory, IntegratorConfig, SectorSpec,
};
pub use kernel::{hyper2f1_112, varphi, varphi_coeff, varphi_deriv, Alpha};
pub use measure::{Atom, CircleMeasure};
pub use model::{herglotz_p, synth_coeff, synth_deriv, synth_eval, FunctionModel};
pub use report::{ClaimCheck, VerificationReport};
pub use taylor::{cauchy_coeffs, extremal_series, CoeffMethod, TaylorSeries};

/// Re-exported scalar type: points of the plane are `num_complex::Complex64`.
pub use num_complex::Complex64;
