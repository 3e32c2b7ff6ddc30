//! Concrete Hamiltonian systems and benchmark problem generators.

mod bregman;
mod conformal;
mod potential;
mod quadratic;
mod relativistic;

pub use bregman::{BregmanSystem, ConvexGenerator, QuadraticGenerator, make_bregman_system};
pub use conformal::{ConformalLift, conformal_lift};
pub use potential::{Potential, QuadraticPotential, make_random_quadratic};
pub use quadratic::{QuadraticKineticSystem, harmonic_oscillator, make_quadratic_system};
pub use relativistic::{RelativisticSystem, make_relativistic_system};

use alloc::vec::Vec;

use crate::rng;

/// Deterministic sample points used by constructor-time checks.
pub(crate) fn probe_points(dim: usize, count: usize, scale: f64) -> Vec<Vec<f64>> {
    let mut rng = rng::seeded(0x5eed, 7);
    (0..count)
        .map(|_| rng::standard_normals(&mut rng, dim).into_iter().map(|x| x * scale).collect())
        .collect()
}
