use alloc::vec::Vec;

use super::{ImplicitSolver, Integrator};
use crate::error::Result;
use crate::hamiltonian::HamiltonianSystem;
use crate::state::{State, vecops};

fn checked(ham: &dyn HamiltonianSystem, s: &State) -> Result<()> {
    s.check_dim(ham.dim())
}

/// `x + a·(u + v)` componentwise.
fn add_mean(x: &[f64], a: f64, u: &[f64], v: &[f64]) -> Vec<f64> {
    x.iter().zip(u.iter().zip(v)).map(|(xi, (ui, vi))| xi + a * (ui + vi)).collect()
}

/// Presymplectic Euler, order 1:
///
/// ```text
/// p⁺ = p − h ∇_q H(t, q, p⁺)
/// t⁺ = t + h
/// q⁺ = q + h ∇_p H(t, q, p⁺)
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct PresymplecticEulerA {
    pub solver: ImplicitSolver,
}

impl Integrator for PresymplecticEulerA {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        checked(ham, s)?;
        let (t, q, p) = (s.t, &s.q, &s.p);
        let p_new = if ham.separable() {
            vecops::axpy(-h, &ham.grad_q(t, q, p), p)
        } else {
            self.solver.solve(|x| vecops::axpy(-h, &ham.grad_q(t, q, x), p), p.clone())?
        };
        let q_new = vecops::axpy(h, &ham.grad_p(t, q, &p_new), q);
        Ok(State { t: t + h, q: q_new, p: p_new })
    }
    fn order(&self) -> u32 {
        1
    }
    fn name(&self) -> &str {
        "euler_a"
    }
}

/// Adjoint presymplectic Euler, order 1:
///
/// ```text
/// t⁺ = t + h
/// q⁺ = q + h ∇_p H(t⁺, q⁺, p)
/// p⁺ = p − h ∇_q H(t⁺, q⁺, p)
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct PresymplecticEulerB {
    pub solver: ImplicitSolver,
}

impl Integrator for PresymplecticEulerB {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        checked(ham, s)?;
        let (q, p) = (&s.q, &s.p);
        let t_new = s.t + h;
        let q_new = if ham.separable() {
            vecops::axpy(h, &ham.grad_p(t_new, q, p), q)
        } else {
            self.solver.solve(|x| vecops::axpy(h, &ham.grad_p(t_new, x, p), q), q.clone())?
        };
        let p_new = vecops::axpy(-h, &ham.grad_q(t_new, &q_new, p), p);
        Ok(State { t: t_new, q: q_new, p: p_new })
    }
    fn order(&self) -> u32 {
        1
    }
    fn name(&self) -> &str {
        "euler_b"
    }
}

/// Presymplectic leapfrog, order 2 (Euler A then Euler B, half steps each):
///
/// ```text
/// p½ = p − (h/2) ∇_q H(t, q, p½)
/// t⁺ = t + h
/// q⁺ = q + (h/2) [∇_p H(t, q, p½) + ∇_p H(t⁺, q⁺, p½)]
/// p⁺ = p½ − (h/2) ∇_q H(t⁺, q⁺, p½)
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct PresymplecticLeapfrogA {
    pub solver: ImplicitSolver,
}

impl Integrator for PresymplecticLeapfrogA {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        checked(ham, s)?;
        let (t, q, p) = (s.t, &s.q, &s.p);
        let half = 0.5 * h;
        let t_new = t + h;
        let p_half = if ham.separable() {
            vecops::axpy(-half, &ham.grad_q(t, q, p), p)
        } else {
            self.solver.solve(|x| vecops::axpy(-half, &ham.grad_q(t, q, x), p), p.clone())?
        };
        let v_old = ham.grad_p(t, q, &p_half);
        let q_new = if ham.separable() {
            add_mean(q, half, &v_old, &ham.grad_p(t_new, q, &p_half))
        } else {
            let guess = vecops::axpy(h, &v_old, q);
            self.solver.solve(|x| add_mean(q, half, &v_old, &ham.grad_p(t_new, x, &p_half)), guess)?
        };
        let p_new = vecops::axpy(-half, &ham.grad_q(t_new, &q_new, &p_half), &p_half);
        Ok(State { t: t_new, q: q_new, p: p_new })
    }
    fn order(&self) -> u32 {
        2
    }
    fn name(&self) -> &str {
        "leapfrog_a"
    }
}

/// Adjoint presymplectic leapfrog, order 2 (Euler B then Euler A, half steps each):
///
/// ```text
/// t½ = t + h/2
/// q½ = q + (h/2) ∇_p H(t½, q½, p)
/// p⁺ = p − (h/2) [∇_q H(t½, q½, p) + ∇_q H(t½, q½, p⁺)]
/// t⁺ = t½ + h/2
/// q⁺ = q½ + (h/2) ∇_p H(t½, q½, p⁺)
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct PresymplecticLeapfrogB {
    pub solver: ImplicitSolver,
}

impl Integrator for PresymplecticLeapfrogB {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        checked(ham, s)?;
        let (t, q, p) = (s.t, &s.q, &s.p);
        let half = 0.5 * h;
        let t_half = t + half;
        let q_half = if ham.separable() {
            vecops::axpy(half, &ham.grad_p(t_half, q, p), q)
        } else {
            self.solver.solve(|x| vecops::axpy(half, &ham.grad_p(t_half, x, p), q), q.clone())?
        };
        let f_old = ham.grad_q(t_half, &q_half, p);
        let p_new = if ham.separable() {
            vecops::axpy(-h, &f_old, p)
        } else {
            let guess = vecops::axpy(-h, &f_old, p);
            self.solver.solve(|x| add_mean(p, -half, &f_old, &ham.grad_q(t_half, &q_half, x)), guess)?
        };
        let q_new = vecops::axpy(half, &ham.grad_p(t_half, &q_half, &p_new), &q_half);
        // t½ + h/2 equals t + h in exact arithmetic; the direct sum keeps it bit-exact.
        Ok(State { t: t + h, q: q_new, p: p_new })
    }
    fn order(&self) -> u32 {
        2
    }
    fn name(&self) -> &str {
        "leapfrog_b"
    }
}
