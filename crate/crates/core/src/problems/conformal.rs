use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSystem;
use crate::schedule::Damping;
use crate::state::vecops;

/// `K(t, Q, P) = e^{η(t)} H₀(Q, e^{-η(t)} P)`.
///
/// With `p = e^{-η(t)} P`, trajectories of `K` solve the conformal equations
/// `q̇ = ∂H₀/∂p`, `ṗ = −∂H₀/∂q − η̇(t) p`.
#[derive(Debug, Clone)]
pub struct ConformalLift<H, D> {
    base: H,
    eta: D,
}

/// Lifts a time-independent `H₀`; fails if `∂H₀/∂t` is nonzero on sampled states.
pub fn conformal_lift<H: HamiltonianSystem, D: Damping>(base: H, eta: D) -> Result<ConformalLift<H, D>> {
    let n = base.dim();
    let points = super::probe_points(n, 16, 1.5);
    for (k, pair) in points.chunks(2).enumerate() {
        let (q, p) = (&pair[0], &pair[1]);
        let t = 0.37 * k as f64;
        let rate = base.dh_dt(t, q, p);
        if rate.abs() > 1e-12 * (1.0 + base.eval(t, q, p).abs()) {
            return Err(Error::invalid("conformal lift requires a time-independent Hamiltonian"));
        }
    }
    Ok(ConformalLift { base, eta })
}

impl<H: HamiltonianSystem, D: Damping> ConformalLift<H, D> {
    pub fn base(&self) -> &H {
        &self.base
    }

    pub fn eta(&self) -> &D {
        &self.eta
    }

    /// Conformal momentum `p = e^{-η(t)} P`.
    pub fn conformal_momentum(&self, t: f64, big_p: &[f64]) -> Vec<f64> {
        vecops::scale((-self.eta.eta(t)).exp(), big_p)
    }
}

impl<H: HamiltonianSystem, D: Damping> HamiltonianSystem for ConformalLift<H, D> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, t: f64, q: &[f64], big_p: &[f64]) -> f64 {
        self.eta.eta(t).exp() * self.base.eval(t, q, &self.conformal_momentum(t, big_p))
    }

    fn grad_q(&self, t: f64, q: &[f64], big_p: &[f64]) -> Vec<f64> {
        let p = self.conformal_momentum(t, big_p);
        vecops::scale(self.eta.eta(t).exp(), &self.base.grad_q(t, q, &p))
    }

    fn grad_p(&self, t: f64, q: &[f64], big_p: &[f64]) -> Vec<f64> {
        self.base.grad_p(t, q, &self.conformal_momentum(t, big_p))
    }

    fn dh_dt(&self, t: f64, q: &[f64], big_p: &[f64]) -> f64 {
        let p = self.conformal_momentum(t, big_p);
        let velocity = self.base.grad_p(t, q, &p);
        self.eta.eta_dot(t) * (self.eval(t, q, big_p) - vecops::dot(&velocity, big_p))
    }

    fn separable(&self) -> bool {
        self.base.separable()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::grad_check;
    use crate::problems::harmonic_oscillator;
    use crate::schedule::DampingSchedule;
    use crate::state::State;

    #[test]
    fn zero_damping_is_identity() {
        let base = harmonic_oscillator(DampingSchedule::Zero);
        let lifted = conformal_lift(base.clone(), DampingSchedule::Zero).unwrap();
        for (t, q, p) in [(0.0, 1.0, 0.0), (2.0, -0.3, 0.8)] {
            assert_eq!(lifted.eval(t, &[q], &[p]), base.eval(t, &[q], &[p]));
        }
    }

    #[test]
    fn linear_lift_matches_damped_oscillator() {
        let eta = DampingSchedule::linear(0.2);
        let lifted = conformal_lift(harmonic_oscillator(DampingSchedule::Zero), eta).unwrap();
        let direct = harmonic_oscillator(eta);
        for (t, q, p) in [(0.0, 1.0, 0.5), (3.0, -0.3, 0.8), (10.0, 2.0, -4.0)] {
            let (a, b) = (lifted.eval(t, &[q], &[p]), direct.eval(t, &[q], &[p]));
            assert!((a - b).abs() <= 1e-13 * (1.0 + b.abs()));
        }
        let s = State::scalar(1.3, 0.7, -0.4).unwrap();
        assert!(grad_check(&lifted, &s, 1e-5).unwrap() <= 1e-6);
    }

    #[test]
    fn rejects_time_dependent_base() {
        let damped = harmonic_oscillator(DampingSchedule::linear(0.5));
        assert!(conformal_lift(damped, DampingSchedule::linear(0.2)).is_err());
    }
}
