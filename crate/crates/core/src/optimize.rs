//! Minimization runs on a [`Potential`] with the damped leapfrog and the
//! baselines it is compared against.

use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::integrators::{MomentumRule, RescaledLeapfrog, RescaledState, step_gradient_descent, step_nesterov};
use crate::problems::Potential;
use crate::schedule::DampingSchedule;
use crate::state::vecops;

/// Gradient norm above `DIVERGENCE_FACTOR · max(1, ‖∇f(q₀)‖)` counts as divergence.
pub const DIVERGENCE_FACTOR: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Presymplectic leapfrog on `½e^{−γt}‖p‖² + e^{γt}f(q)` started at rest.
    Leapfrog { gamma: f64 },
    Nesterov { rule: MomentumRule },
    GradientDescent,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Leapfrog { .. } => "leapfrog",
            Method::Nesterov { .. } => "nesterov",
            Method::GradientDescent => "gradient_descent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub h: f64,
    pub max_iter: usize,
    /// Convergence threshold on `‖∇f‖`.
    pub tol: f64,
    /// Stop at the first iterate below `tol`.
    pub stop_on_convergence: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationRun {
    /// `‖∇f(q_ℓ)‖` for `ℓ = 0, 1, …`; shorter than `max_iter + 1` after an
    /// early stop or divergence.
    pub grad_norms: Vec<f64>,
    /// First `ℓ` with `‖∇f(q_ℓ)‖ < tol`.
    pub converged_at: Option<usize>,
    pub diverged: bool,
    pub final_q: Vec<f64>,
}

impl OptimizationRun {
    /// Iterations performed.
    pub fn iterations(&self) -> usize {
        self.grad_norms.len().saturating_sub(1)
    }

    pub fn final_grad_norm(&self) -> f64 {
        if self.diverged { f64::INFINITY } else { self.grad_norms.last().copied().unwrap_or(f64::NAN) }
    }
}

/// Runs `method` from `q0` (zero initial velocity).
pub fn minimize<P: Potential + ?Sized>(method: Method, potential: &P, q0: &[f64], opts: RunOptions) -> Result<OptimizationRun> {
    if q0.len() != potential.dim() {
        return Err(Error::DimensionMismatch { expected: potential.dim(), found: q0.len() });
    }
    if !(opts.h > 0.0 && opts.h.is_finite()) {
        return Err(Error::invalid("step size must be positive"));
    }
    if let Method::Leapfrog { gamma } | Method::Nesterov { rule: MomentumRule::ConstantDamping { gamma } } = method
        && !(gamma >= 0.0 && gamma.is_finite())
    {
        return Err(Error::invalid("damping must be nonnegative"));
    }
    let grad0 = potential.grad(q0);
    let limit = DIVERGENCE_FACTOR * vecops::norm(&grad0).max(1.0);
    let mut tracker = Tracker { norms: Vec::with_capacity(opts.max_iter + 1), converged_at: None, limit, opts };
    let mut q = q0.to_vec();
    if tracker.push(vecops::norm(&grad0)) {
        return Ok(tracker.finish(q));
    }
    match method {
        Method::Leapfrog { gamma } => {
            let schedule = DampingSchedule::linear(gamma);
            let lf = RescaledLeapfrog::new(schedule, schedule);
            let mut rs = RescaledState { t: 0.0, q, p_tilde: alloc::vec![0.0; q0.len()] };
            let mut grad = grad0;
            for _ in 0..opts.max_iter {
                let (next, g) = lf.step_with_gradient(potential, &rs, &grad, opts.h)?;
                rs = next;
                grad = g;
                if tracker.push(vecops::norm(&grad)) {
                    break;
                }
            }
            q = rs.q;
        }
        Method::Nesterov { rule } => {
            let mut prev = q.clone();
            for k in 0..opts.max_iter {
                let next = step_nesterov(potential, &prev, &q, opts.h, rule.mu(k, opts.h));
                prev = core::mem::replace(&mut q, next);
                if tracker.push(vecops::norm(&potential.grad(&q))) {
                    break;
                }
            }
        }
        Method::GradientDescent => {
            for _ in 0..opts.max_iter {
                q = step_gradient_descent(potential, &q, opts.h);
                if tracker.push(vecops::norm(&potential.grad(&q))) {
                    break;
                }
            }
        }
    }
    Ok(tracker.finish(q))
}

struct Tracker {
    norms: Vec<f64>,
    converged_at: Option<usize>,
    limit: f64,
    opts: RunOptions,
}

impl Tracker {
    /// Records a norm; `true` means stop.
    fn push(&mut self, norm: f64) -> bool {
        if !(norm.is_finite() && norm <= self.limit) {
            return true;
        }
        let idx = self.norms.len();
        self.norms.push(norm);
        if norm < self.opts.tol && self.converged_at.is_none() {
            self.converged_at = Some(idx);
            return self.opts.stop_on_convergence;
        }
        false
    }

    fn finish(self, final_q: Vec<f64>) -> OptimizationRun {
        let diverged = self.norms.len() < self.opts.max_iter + 1 && !(self.opts.stop_on_convergence && self.converged_at.is_some());
        OptimizationRun { grad_norms: self.norms, converged_at: self.converged_at, diverged, final_q }
    }
}
