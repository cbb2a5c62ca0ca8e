//! Finitely supported probability measures on the unit circle.
//!
//! Atoms are weak-star dense in the probability measures on the circle, and
//! every closed-form check in this crate is linear (or low-degree) in the
//! moments, so the atomic representation is all we carry.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Weight-sum slack enforced by the type invariant.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Weight-sum slack accepted from external files before renormalization.
pub const LOADER_SUM_TOL: f64 = 1e-9;
/// Minimal angular separation between stored atoms.
pub const THETA_DISTINCT_TOL: f64 = 1e-12;

/// One atom: position `e^{i theta}` on the circle and its mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub theta: f64,
    pub weight: f64,
}

/// A probability measure `sum_j w_j delta(e^{i theta_j})`.
///
/// Invariants (enforced at construction): weights are nonnegative and sum to
/// 1 within [`WEIGHT_SUM_TOL`]; angles are reduced to `[0, 2pi)`, stored
/// sorted ascending, and pairwise distinct within [`THETA_DISTINCT_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleMeasure {
    atoms: Vec<Atom>,
}

impl CircleMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Validation("measure needs at least one atom".into()));
        }
        let mut normed = Vec::with_capacity(atoms.len());
        let mut sum = 0.0;
        for atom in &atoms {
            if !atom.weight.is_finite() || atom.weight < 0.0 {
                return Err(Error::Validation(format!(
                    "atom weight must be a nonnegative real, got {}",
                    atom.weight
                )));
            }
            if !atom.theta.is_finite() {
                return Err(Error::Validation("atom angle must be finite".into()));
            }
            sum += atom.weight;
            let mut theta = atom.theta.rem_euclid(TAU);
            if theta >= TAU {
                theta = 0.0;
            }
            normed.push(Atom {
                theta,
                weight: atom.weight,
            });
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Validation(format!(
                "weights must sum to 1 within {WEIGHT_SUM_TOL:e}, got {sum}"
            )));
        }
        normed.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        for pair in normed.windows(2) {
            if pair[1].theta - pair[0].theta < THETA_DISTINCT_TOL {
                return Err(Error::Validation(format!(
                    "atom angles must be pairwise distinct, {} and {} collide",
                    pair[0].theta, pair[1].theta
                )));
            }
        }
        if normed.len() > 1 {
            let first = normed.first().unwrap().theta;
            let last = normed.last().unwrap().theta;
            if first + TAU - last < THETA_DISTINCT_TOL {
                return Err(Error::Validation(format!(
                    "atom angles must be pairwise distinct, {last} wraps onto {first}"
                )));
            }
        }
        Ok(CircleMeasure { atoms: normed })
    }

    /// Accepts raw atoms whose weights sum to 1 within `sum_tol` and rescales
    /// them to the exact invariant. This is the entry point for file loaders.
    pub fn renormalized(atoms: Vec<Atom>, sum_tol: f64) -> Result<Self> {
        let sum: f64 = atoms.iter().map(|a| a.weight).sum();
        for atom in &atoms {
            if !atom.weight.is_finite() || atom.weight < 0.0 {
                return Err(Error::Validation(format!(
                    "atom weight must be a nonnegative real, got {}",
                    atom.weight
                )));
            }
        }
        if (sum - 1.0).abs() > sum_tol {
            return Err(Error::Validation(format!(
                "weights must sum to 1 within {sum_tol:e}, got {sum}"
            )));
        }
        Self::new(
            atoms
                .into_iter()
                .map(|a| Atom {
                    theta: a.theta,
                    weight: a.weight / sum,
                })
                .collect(),
        )
    }

    /// The unit mass at `e^{i theta}`.
    pub fn point_mass(theta: f64) -> Self {
        CircleMeasure {
            atoms: vec![Atom {
                theta: theta.rem_euclid(TAU),
                weight: 1.0,
            }],
        }
    }

    /// Deterministic pseudo-random measure: `atom_count` angles uniform on
    /// `[0, 2pi)`, weights normalized uniform draws. The same seed always
    /// reproduces the same measure.
    pub fn random(seed: u64, atom_count: usize) -> Result<Self> {
        if atom_count == 0 {
            return Err(Error::Domain("atom_count must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let atoms = loop {
            let mut thetas: Vec<f64> = (0..atom_count).map(|_| rng.gen::<f64>() * TAU).collect();
            thetas.sort_by(f64::total_cmp);
            let separated = thetas.windows(2).all(|p| p[1] - p[0] > 1e-9)
                && (atom_count == 1 || thetas[0] + TAU - thetas[atom_count - 1] > 1e-9);
            if !separated {
                continue;
            }
            let mut weights: Vec<f64> = (0..atom_count)
                .map(|_| loop {
                    let u = rng.gen::<f64>();
                    if u > 1e-12 {
                        break u;
                    }
                })
                .collect();
            let sum: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= sum);
            break thetas
                .into_iter()
                .zip(weights)
                .map(|(theta, weight)| Atom { theta, weight })
                .collect::<Vec<_>>();
        };
        Self::new(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Moment `m_n = integral of conj(zeta)^n = sum_j w_j e^{-i n theta_j}`.
    pub fn moment(&self, n: u32) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| Complex64::from_polar(a.weight, -(n as f64) * a.theta))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_atom_half() -> CircleMeasure {
        CircleMeasure::new(vec![
            Atom {
                theta: 0.0,
                weight: 0.5,
            },
            Atom {
                theta: std::f64::consts::PI,
                weight: 0.5,
            },
        ])
        .unwrap()
    }

    #[test]
    fn point_mass_moments_are_unimodular() {
        let mu = CircleMeasure::point_mass(0.0);
        assert_eq!(mu.moment(5), Complex64::new(1.0, 0.0));
        assert_eq!(mu.moment(0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn symmetric_pair_moments() {
        let mu = two_atom_half();
        assert!(mu.moment(1).norm() < 1e-15);
        assert!((mu.moment(2) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn random_measure_is_deterministic_and_normalized() {
        let a = CircleMeasure::random(7, 3).unwrap();
        let b = CircleMeasure::random(7, 3).unwrap();
        assert_eq!(a, b);
        let sum: f64 = a.atoms().iter().map(|x| x.weight).sum();
        assert!((sum - 1.0).abs() < 1e-15);
        let single = CircleMeasure::random(1, 1).unwrap();
        assert_eq!(single.atoms()[0].weight, 1.0);
    }

    #[test]
    fn different_seed_different_measure() {
        assert_ne!(
            CircleMeasure::random(1, 3).unwrap(),
            CircleMeasure::random(2, 3).unwrap()
        );
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(CircleMeasure::new(vec![
            Atom {
                theta: 0.0,
                weight: 0.5
            },
            Atom {
                theta: 1.0,
                weight: 0.6
            },
        ])
        .is_err());
        assert!(CircleMeasure::new(vec![Atom {
            theta: 0.0,
            weight: -1.0
        }])
        .is_err());
        assert!(CircleMeasure::new(vec![]).is_err());
    }

    #[test]
    fn rejects_colliding_angles_including_wraparound() {
        assert!(CircleMeasure::new(vec![
            Atom {
                theta: 1.0,
                weight: 0.5
            },
            Atom {
                theta: 1.0 + 1e-13,
                weight: 0.5
            },
        ])
        .is_err());
        assert!(CircleMeasure::new(vec![
            Atom {
                theta: 1e-14,
                weight: 0.5
            },
            Atom {
                theta: TAU - 1e-14,
                weight: 0.5
            },
        ])
        .is_err());
    }

    #[test]
    fn angles_are_reduced_and_sorted() {
        let mu = CircleMeasure::new(vec![
            Atom {
                theta: -1.0,
                weight: 0.25,
            },
            Atom {
                theta: 1.0,
                weight: 0.75,
            },
        ])
        .unwrap();
        assert!((mu.atoms()[0].theta - 1.0).abs() < 1e-15);
        assert!((mu.atoms()[1].theta - (TAU - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn renormalized_accepts_loader_slack() {
        let atoms = vec![
            Atom {
                theta: 0.0,
                weight: 0.5 + 4e-10,
            },
            Atom {
                theta: 1.0,
                weight: 0.5,
            },
        ];
        let mu = CircleMeasure::renormalized(atoms.clone(), LOADER_SUM_TOL).unwrap();
        let sum: f64 = mu.atoms().iter().map(|a| a.weight).sum();
        assert!((sum - 1.0).abs() <= WEIGHT_SUM_TOL);
        assert!(CircleMeasure::renormalized(atoms, 1e-11).is_err());
    }
}
