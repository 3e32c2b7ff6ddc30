//! The Hamiltonian abstraction consumed by every integrator.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::schedule::Damping;
use crate::state::State;

/// An explicitly time-dependent Hamiltonian `H(t, q, p)` with analytic partials.
pub trait HamiltonianSystem: Send + Sync {
    fn dim(&self) -> usize;
    fn eval(&self, t: f64, q: &[f64], p: &[f64]) -> f64;
    fn grad_q(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64>;
    fn grad_p(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64>;
    /// Explicit time partial `∂H/∂t`.
    fn dh_dt(&self, t: f64, q: &[f64], p: &[f64]) -> f64;
    /// `true` when `H = T(t, p) + V(t, q)`, which makes the presymplectic
    /// methods fully explicit.
    fn separable(&self) -> bool;
}

impl<H: HamiltonianSystem + ?Sized> HamiltonianSystem for &H {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        (**self).eval(t, q, p)
    }
    fn grad_q(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64> {
        (**self).grad_q(t, q, p)
    }
    fn grad_p(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64> {
        (**self).grad_p(t, q, p)
    }
    fn dh_dt(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        (**self).dh_dt(t, q, p)
    }
    fn separable(&self) -> bool {
        (**self).separable()
    }
}

impl<H: HamiltonianSystem + ?Sized> HamiltonianSystem for alloc::boxed::Box<H> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        (**self).eval(t, q, p)
    }
    fn grad_q(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64> {
        (**self).grad_q(t, q, p)
    }
    fn grad_p(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64> {
        (**self).grad_p(t, q, p)
    }
    fn dh_dt(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        (**self).dh_dt(t, q, p)
    }
    fn separable(&self) -> bool {
        (**self).separable()
    }
}

/// Evaluates `H(s.t, s.q, s.p)`.
pub fn eval_energy<H: HamiltonianSystem + ?Sized>(ham: &H, s: &State) -> Result<f64> {
    s.check_dim(ham.dim())?;
    let value = ham.eval(s.t, &s.q, &s.p);
    if !value.is_finite() {
        return Err(Error::NonFinite { context: "Hamiltonian evaluation", t: s.t, state: Some(s.clone()) });
    }
    Ok(value)
}

/// The physical energy `e^{-η(t)} H(t, q, p)`.
///
/// `eta` must be the schedule the Hamiltonian was built with.
pub fn physical_energy<H, D>(ham: &H, eta: &D, s: &State) -> Result<f64>
where
    H: HamiltonianSystem + ?Sized,
    D: Damping + ?Sized,
{
    let factor = (-eta.eta(s.t)).exp();
    if !factor.is_finite() {
        return Err(Error::Overflow { context: "physical energy" });
    }
    let value = factor * eval_energy(ham, s)?;
    if !value.is_finite() {
        return Err(Error::Overflow { context: "physical energy" });
    }
    Ok(value)
}

/// Maximum over all partials (`∂/∂q`, `∂/∂p`, `∂/∂t`) of
/// `|analytic − central difference| / (1 + |analytic|)`.
pub fn grad_check<H: HamiltonianSystem + ?Sized>(ham: &H, s: &State, eps: f64) -> Result<f64> {
    s.check_dim(ham.dim())?;
    if !(eps > 0.0 && eps <= 1e-2) {
        return Err(Error::invalid("grad_check step must lie in (0, 1e-2]"));
    }
    let rel = |analytic: f64, numeric: f64| (analytic - numeric).abs() / (1.0 + analytic.abs());
    let (t, q, p) = (s.t, &s.q, &s.p);
    let gq = ham.grad_q(t, q, p);
    let gp = ham.grad_p(t, q, p);
    let mut worst = 0.0f64;

    let mut shifted = q.clone();
    for i in 0..q.len() {
        shifted[i] = q[i] + eps;
        let plus = ham.eval(t, &shifted, p);
        shifted[i] = q[i] - eps;
        let minus = ham.eval(t, &shifted, p);
        shifted[i] = q[i];
        worst = worst.max(rel(gq[i], (plus - minus) / (2.0 * eps)));
    }
    let mut shifted = p.clone();
    for i in 0..p.len() {
        shifted[i] = p[i] + eps;
        let plus = ham.eval(t, q, &shifted);
        shifted[i] = p[i] - eps;
        let minus = ham.eval(t, q, &shifted);
        shifted[i] = p[i];
        worst = worst.max(rel(gp[i], (plus - minus) / (2.0 * eps)));
    }
    let fd_t = (ham.eval(t + eps, q, p) - ham.eval(t - eps, q, p)) / (2.0 * eps);
    worst = worst.max(rel(ham.dh_dt(t, q, p), fd_t));
    if !worst.is_finite() {
        return Err(Error::NonFinite { context: "gradient check", t, state: Some(s.clone()) });
    }
    Ok(worst)
}
