//! Non-structure-preserving reference methods.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::Integrator;
use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianSystem, eval_energy};
use crate::problems::Potential;
use crate::schedule::Damping;
use crate::state::{State, vecops};
use crate::trajectory::Trajectory;

/// Forward Euler: both updates use the old state. Not symplectic.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExplicitEuler;

impl Integrator for ExplicitEuler {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        s.check_dim(ham.dim())?;
        let q = vecops::axpy(h, &ham.grad_p(s.t, &s.q, &s.p), &s.q);
        let p = vecops::axpy(-h, &ham.grad_q(s.t, &s.q, &s.p), &s.p);
        Ok(State { t: s.t + h, q, p })
    }
    fn order(&self) -> u32 {
        1
    }
    fn name(&self) -> &str {
        "explicit_euler"
    }
}

/// Momentum coefficient schedule for Nesterov's method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentumRule {
    /// `μ = (1 − γh/2)/(1 + γh/2)`, the discretization of `q̈ + γq̇ + ∇f = 0`.
    ConstantDamping { gamma: f64 },
    /// `μ_ℓ = ℓ/(ℓ + 3)`.
    Polynomial,
}

impl MomentumRule {
    /// Coefficient used when producing iterate `ℓ + 1` from iterate `ℓ`.
    pub fn mu(&self, iteration: usize, h: f64) -> f64 {
        match *self {
            MomentumRule::ConstantDamping { gamma } => (1.0 - 0.5 * gamma * h) / (1.0 + 0.5 * gamma * h),
            MomentumRule::Polynomial => iteration as f64 / (iteration as f64 + 3.0),
        }
    }
}

/// `y = q_curr + μ(q_curr − q_prev)`, `q_next = y − h²∇f(y)`.
pub fn step_nesterov<P: Potential + ?Sized>(potential: &P, q_prev: &[f64], q_curr: &[f64], h: f64, mu: f64) -> Vec<f64> {
    let y: Vec<f64> = q_curr.iter().zip(q_prev).map(|(c, p)| c + mu * (c - p)).collect();
    let grad = potential.grad(&y);
    vecops::axpy(-h * h, &grad, &y)
}

/// `q − h∇f(q)`.
pub fn step_gradient_descent<P: Potential + ?Sized>(potential: &P, q: &[f64], h: f64) -> Vec<f64> {
    vecops::axpy(-h, &potential.grad(q), q)
}

/// Runs Nesterov's method from `q_prev = q_curr = s0.q` and records a phase
/// point per iterate so its Hamiltonian error can be compared with the
/// presymplectic methods.
///
/// The diagnostic momentum is the canonical momentum of the unit-mass
/// quadratic-kinetic system evaluated on the backward-difference velocity:
/// `p_ℓ = e^{η₁(t_ℓ)} (q_ℓ − q_{ℓ−1}) / h`, with `p_0 = s0.p`.
pub fn nesterov_trajectory<P, D>(
    ham: &dyn HamiltonianSystem,
    potential: &P,
    kinetic_damping: &D,
    s0: &State,
    h: f64,
    n_steps: usize,
    rule: MomentumRule,
) -> Result<Trajectory>
where
    P: Potential + ?Sized,
    D: Damping + ?Sized,
{
    s0.check_dim(ham.dim())?;
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut ham_values = Vec::with_capacity(n_steps + 1);
    let mut grad_norms = Vec::with_capacity(n_steps + 1);
    let mut record = |s: State, states: &mut Vec<State>| -> Result<()> {
        ham_values.push(eval_energy(ham, &s)?);
        grad_norms.push(vecops::norm(&potential.grad(&s.q)));
        states.push(s);
        Ok(())
    };
    record(s0.clone(), &mut states)?;
    let mut q_prev = s0.q.clone();
    let mut q_curr = s0.q.clone();
    for k in 1..=n_steps {
        let q_next = step_nesterov(potential, &q_prev, &q_curr, h, rule.mu(k - 1, h));
        let t = s0.t + k as f64 * h;
        let scale = kinetic_damping.eta(t).exp() / h;
        let p = q_next.iter().zip(&q_curr).map(|(a, b)| scale * (a - b)).collect();
        let state = State { t, q: q_next.clone(), p };
        if !state.is_finite() {
            let last = states.last().cloned().unwrap_or_else(|| s0.clone());
            return Err(Error::Integration { step: k, reason: "non-finite Nesterov iterate".into(), last });
        }
        record(state, &mut states)?;
        q_prev = core::mem::replace(&mut q_curr, q_next);
    }
    Ok(Trajectory { states, ham_values, grad_norms: Some(grad_norms), step_size: h })
}
