//! One-step methods for time-dependent Hamiltonian systems.
//!
//! The presymplectic methods update time with the same rule as the
//! positions, which is what makes them structure preserving for explicitly
//! time-dependent Hamiltonians.

mod baselines;
mod composition;
mod implicit;
mod presymplectic;
mod rescaled;
mod tao;

pub use baselines::{ExplicitEuler, MomentumRule, nesterov_trajectory, step_gradient_descent, step_nesterov};
pub use composition::{SuzukiYoshida, compose_suzuki_yoshida, suzuki_yoshida_coefficients};
pub use implicit::{FixedPoint, ImplicitSolver, solve_implicit};
pub use presymplectic::{PresymplecticEulerA, PresymplecticEulerB, PresymplecticLeapfrogA, PresymplecticLeapfrogB};
pub use rescaled::{RescaledLeapfrog, RescaledState};
pub use tao::{AugmentedState, TaoSplitting, phi_a, phi_b, phi_c};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianSystem, eval_energy};
use crate::problems::Potential;
use crate::state::{State, vecops};
use crate::trajectory::Trajectory;

/// A one-step map `(t, q, p) ↦ (t + h, q', p')`.
pub trait Integrator: Send + Sync {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State>;
    /// Declared order `r`: global error `O(h^r)`.
    fn order(&self) -> u32;
    fn name(&self) -> &str;
}

impl<I: Integrator + ?Sized> Integrator for &I {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        (**self).step(ham, s, h)
    }
    fn order(&self) -> u32 {
        (**self).order()
    }
    fn name(&self) -> &str {
        (**self).name()
    }
}

impl<I: Integrator + ?Sized> Integrator for alloc::boxed::Box<I> {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        (**self).step(ham, s, h)
    }
    fn order(&self) -> u32 {
        (**self).order()
    }
    fn name(&self) -> &str {
        (**self).name()
    }
}

/// Applies `integ` `n_steps` times from `s0`, recording `H` at every state and
/// `‖∇f(q)‖` when a potential is supplied.
pub fn integrate<I: Integrator + ?Sized>(
    integ: &I,
    ham: &dyn HamiltonianSystem,
    s0: &State,
    h: f64,
    n_steps: usize,
    diagnostics: Option<&dyn Potential>,
) -> Result<Trajectory> {
    integrate_with(ham, s0, h, n_steps, diagnostics, |s| integ.step(ham, s, h))
}

/// Shared driver: `advance` maps the current state to the next one.
pub(crate) fn integrate_with(
    ham: &dyn HamiltonianSystem,
    s0: &State,
    h: f64,
    n_steps: usize,
    diagnostics: Option<&dyn Potential>,
    mut advance: impl FnMut(&State) -> Result<State>,
) -> Result<Trajectory> {
    s0.check_dim(ham.dim())?;
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut ham_values = Vec::with_capacity(n_steps + 1);
    let mut grad_norms = diagnostics.map(|_| Vec::with_capacity(n_steps + 1));
    let mut record = |s: State, step: usize, states: &mut Vec<State>| -> Result<()> {
        let value = eval_energy(ham, &s).map_err(|e| Error::Integration {
            step,
            reason: format!("{e}"),
            last: states.last().cloned().unwrap_or_else(|| s.clone()),
        })?;
        ham_values.push(value);
        if let (Some(f), Some(norms)) = (diagnostics, grad_norms.as_mut()) {
            norms.push(vecops::norm(&f.grad(&s.q)));
        }
        states.push(s);
        Ok(())
    };
    record(s0.clone(), 0, &mut states)?;
    let mut current = s0.clone();
    for k in 1..=n_steps {
        let next = advance(&current).map_err(|e| match e {
            Error::Integration { .. } => e,
            other => Error::Integration { step: k, reason: format!("{other}"), last: current.clone() },
        })?;
        if !next.is_finite() {
            return Err(Error::Integration { step: k, reason: "non-finite state".into(), last: current });
        }
        record(next.clone(), k, &mut states)?;
        current = next;
    }
    Ok(Trajectory { states, ham_values, grad_norms, step_size: h })
}
