//! Presymplectic integration of explicitly time-dependent Hamiltonian
//! systems, with the damped and rate-matching problem families used to study
//! accelerated optimization.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod hamiltonian;
pub mod integrators;
pub mod optimize;
pub mod oracles;
pub mod problems;
pub mod rng;
pub mod scaling;
pub mod schedule;
pub mod state;
pub mod trajectory;

pub use error::{Error, Result};
pub use hamiltonian::{HamiltonianSystem, eval_energy, grad_check, physical_energy};
pub use integrators::{Integrator, integrate};
pub use scaling::{Scaling, ScalingTriple, validate_scaling};
pub use schedule::{Damping, DampingSchedule};
pub use state::State;
pub use trajectory::Trajectory;
