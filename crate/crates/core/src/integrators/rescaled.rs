use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::problems::Potential;
use crate::schedule::Damping;
use crate::state::State;

/// Phase point with rescaled momentum `p̃ = e^{-η₂(t)} p`.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaledState {
    pub t: f64,
    pub q: Vec<f64>,
    pub p_tilde: Vec<f64>,
}

impl RescaledState {
    pub fn from_state<D: Damping + ?Sized>(s: &State, eta2: &D) -> Result<Self> {
        let factor = (-eta2.eta(s.t)).exp();
        if !factor.is_finite() {
            return Err(Error::Overflow { context: "momentum rescaling" });
        }
        Ok(RescaledState { t: s.t, q: s.q.clone(), p_tilde: s.p.iter().map(|p| factor * p).collect() })
    }

    /// Back to canonical momentum `p = e^{η₂(t)} p̃`; fails when the factor overflows.
    pub fn to_state<D: Damping + ?Sized>(&self, eta2: &D) -> Result<State> {
        let factor = eta2.eta(self.t).exp();
        let p: Vec<f64> = self.p_tilde.iter().map(|v| factor * v).collect();
        if !factor.is_finite() || p.iter().any(|v| !v.is_finite()) {
            return Err(Error::Overflow { context: "momentum rescaling" });
        }
        Ok(State { t: self.t, q: self.q.clone(), p })
    }
}

/// Presymplectic leapfrog for `½e^{-η₁}p·M⁻¹p + e^{η₂}f(q)` written in `p̃`,
/// so only differences `Δ^{(a,b)}_{h}(t) = η_a(t+h) − η_b(t)` are exponentiated:
///
/// ```text
/// p̃½ = e^{-Δ^{(2,2)}_{h/2}(t)} (p̃ − (h/2)∇f(q))
/// q⁺ = q + (h/2)(e^{Δ^{(2,1)}_{h/2}(t)} + e^{-Δ^{(1,2)}_{h/2}(t+h/2)}) M⁻¹p̃½
/// p̃⁺ = e^{-Δ^{(2,2)}_{h/2}(t+h/2)} p̃½ − (h/2)∇f(q⁺)
/// ```
#[derive(Debug, Clone)]
pub struct RescaledLeapfrog<D1, D2> {
    pub eta1: D1,
    pub eta2: D2,
    /// `None` means unit mass.
    pub mass_inv: Option<DMatrix<f64>>,
}

impl<D1: Damping, D2: Damping> RescaledLeapfrog<D1, D2> {
    pub fn new(eta1: D1, eta2: D2) -> Self {
        RescaledLeapfrog { eta1, eta2, mass_inv: None }
    }

    pub fn with_mass_inverse(mut self, mass_inv: DMatrix<f64>) -> Self {
        self.mass_inv = Some(mass_inv);
        self
    }

    pub fn step<P: Potential + ?Sized>(&self, potential: &P, rs: &RescaledState, h: f64) -> Result<RescaledState> {
        let grad = potential.grad(&rs.q);
        self.step_with_gradient(potential, rs, &grad, h).map(|(next, _)| next)
    }

    /// Same as [`step`](Self::step) but reuses `grad = ∇f(rs.q)` and returns
    /// `∇f(q⁺)` for the next call, so each step costs one gradient.
    pub fn step_with_gradient<P: Potential + ?Sized>(
        &self,
        potential: &P,
        rs: &RescaledState,
        grad: &[f64],
        h: f64,
    ) -> Result<(RescaledState, Vec<f64>)> {
        let n = potential.dim();
        if rs.q.len() != n || rs.p_tilde.len() != n || grad.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rs.q.len() });
        }
        let half = 0.5 * h;
        let t = rs.t;
        let t_half = t + half;
        let t_new = t + h;
        let (e1, e2) = (&self.eta1, &self.eta2);
        let shrink_first = (-(e2.eta(t_half) - e2.eta(t))).exp();
        let drift = (e2.eta(t_half) - e1.eta(t)).exp() + (-(e1.eta(t_new) - e2.eta(t_half))).exp();
        let shrink_second = (-(e2.eta(t_new) - e2.eta(t_half))).exp();

        let p_half: Vec<f64> =
            rs.p_tilde.iter().zip(grad).map(|(p, g)| shrink_first * (p - half * g)).collect();
        let velocity = match &self.mass_inv {
            None => p_half.clone(),
            Some(m) => (m * DVector::from_column_slice(&p_half)).as_slice().to_vec(),
        };
        let q_new: Vec<f64> = rs.q.iter().zip(&velocity).map(|(q, v)| q + half * drift * v).collect();
        let grad_new = potential.grad(&q_new);
        let p_new = p_half.iter().zip(&grad_new).map(|(p, g)| shrink_second * p - half * g).collect();
        Ok((RescaledState { t: t_new, q: q_new, p_tilde: p_new }, grad_new))
    }
}
