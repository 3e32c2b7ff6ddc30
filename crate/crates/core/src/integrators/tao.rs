use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSystem;
use crate::problems::Potential;
use crate::state::{State, vecops};
use crate::trajectory::Trajectory;

/// Two copies of the phase point, `(t, q, p)` and `(t̄, q̄, p̄)`, coupled with
/// strength `xi` in the augmented Hamiltonian
/// `H(t, q, p̄) + H(t̄, q̄, p) + (ξ/2)(‖q − q̄‖² + ‖p − p̄‖²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedState {
    pub t: f64,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub t_bar: f64,
    pub q_bar: Vec<f64>,
    pub p_bar: Vec<f64>,
    pub xi: f64,
}

impl AugmentedState {
    pub const DEFAULT_XI: f64 = 20.0;

    /// Duplicates `s` into both copies.
    pub fn from_state(s: &State, xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::invalid("coupling constant xi must be positive"));
        }
        Ok(AugmentedState { t: s.t, q: s.q.clone(), p: s.p.clone(), t_bar: s.t, q_bar: s.q.clone(), p_bar: s.p.clone(), xi })
    }

    /// The first copy `(t, q, p)`.
    pub fn primary(&self) -> State {
        State { t: self.t, q: self.q.clone(), p: self.p.clone() }
    }

    /// Componentwise average of the two copies.
    pub fn mean(&self) -> State {
        let avg = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
        State { t: 0.5 * (self.t + self.t_bar), q: avg(&self.q, &self.q_bar), p: avg(&self.p, &self.p_bar) }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    fn check(&self, dim: usize) -> Result<()> {
        for block in [&self.q, &self.p, &self.q_bar, &self.p_bar] {
            if block.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: block.len() });
            }
        }
        Ok(())
    }
}

/// `p ← p − h∇_q H(t, q, p̄)`, `t̄ ← t̄ + h`, `q̄ ← q̄ + h∇_p H(t, q, p̄)`.
pub fn phi_a(ham: &dyn HamiltonianSystem, s: &AugmentedState, h: f64) -> AugmentedState {
    let force = ham.grad_q(s.t, &s.q, &s.p_bar);
    let velocity = ham.grad_p(s.t, &s.q, &s.p_bar);
    AugmentedState {
        p: vecops::axpy(-h, &force, &s.p),
        t_bar: s.t_bar + h,
        q_bar: vecops::axpy(h, &velocity, &s.q_bar),
        ..s.clone()
    }
}

/// `t ← t + h`, `q ← q + h∇_p H(t̄, q̄, p)`, `p̄ ← p̄ − h∇_q H(t̄, q̄, p)`.
pub fn phi_b(ham: &dyn HamiltonianSystem, s: &AugmentedState, h: f64) -> AugmentedState {
    let velocity = ham.grad_p(s.t_bar, &s.q_bar, &s.p);
    let force = ham.grad_q(s.t_bar, &s.q_bar, &s.p);
    AugmentedState {
        t: s.t + h,
        q: vecops::axpy(h, &velocity, &s.q),
        p_bar: vecops::axpy(-h, &force, &s.p_bar),
        ..s.clone()
    }
}

/// Exact flow of the coupling term: rotates `(q − q̄, p − p̄)` by angle
/// `2ξh` and leaves the means and both times unchanged.
pub fn phi_c(s: &AugmentedState, h: f64) -> AugmentedState {
    let (sin, cos) = (2.0 * s.xi * h).sin_cos();
    let n = s.q.len();
    let mut out = s.clone();
    for i in 0..n {
        let (sq, dq) = (s.q[i] + s.q_bar[i], s.q[i] - s.q_bar[i]);
        let (sp, dp) = (s.p[i] + s.p_bar[i], s.p[i] - s.p_bar[i]);
        let dq_new = cos * dq + sin * dp;
        let dp_new = -sin * dq + cos * dp;
        out.q[i] = 0.5 * (sq + dq_new);
        out.q_bar[i] = 0.5 * (sq - dq_new);
        out.p[i] = 0.5 * (sp + dp_new);
        out.p_bar[i] = 0.5 * (sp - dp_new);
    }
    out
}

/// Explicit second-order scheme for arbitrary (nonseparable) time-dependent
/// Hamiltonians: the Strang composition
/// `φ^A_{h/2} ∘ φ^B_{h/2} ∘ φ^C_h ∘ φ^B_{h/2} ∘ φ^A_{h/2}` on the augmented state.
#[derive(Debug, Clone, Copy, Default)]
pub struct TaoSplitting;

impl TaoSplitting {
    pub const ORDER: u32 = 2;

    pub fn step(&self, ham: &dyn HamiltonianSystem, s: &AugmentedState, h: f64) -> Result<AugmentedState> {
        s.check(ham.dim())?;
        let half = 0.5 * h;
        let s = phi_a(ham, s, half);
        let s = phi_b(ham, &s, half);
        let s = phi_c(&s, h);
        let s = phi_b(ham, &s, half);
        Ok(phi_a(ham, &s, half))
    }

    /// Integrates from `s0` duplicated into both copies and records the first copy.
    pub fn integrate(
        &self,
        ham: &dyn HamiltonianSystem,
        s0: &State,
        xi: f64,
        h: f64,
        n_steps: usize,
        diagnostics: Option<&dyn Potential>,
    ) -> Result<Trajectory> {
        let mut aug = AugmentedState::from_state(s0, xi)?;
        super::integrate_with(ham, s0, h, n_steps, diagnostics, |_| {
            aug = self.step(ham, &aug, h)?;
            Ok(aug.primary())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrators::{Integrator, PresymplecticLeapfrogA};
    use crate::problems::harmonic_oscillator;
    use crate::rng;
    use crate::schedule::DampingSchedule;
    use alloc::vec;
    use core::f64::consts::PI;

    fn random_augmented(seed: u64, n: usize) -> AugmentedState {
        let mut r = rng::seeded(seed, 3);
        let mut draw = || rng::standard_normals(&mut r, n);
        AugmentedState { t: 0.3, q: draw(), p: draw(), t_bar: 0.3, q_bar: draw(), p_bar: draw(), xi: 20.0 }
    }

    #[test]
    fn full_rotation_is_identity_on_differences() {
        let s = random_augmented(1, 3);
        let h = 2.0 * PI / (2.0 * s.xi);
        let out = phi_c(&s, h);
        for i in 0..3 {
            assert!(((out.q[i] - out.q_bar[i]) - (s.q[i] - s.q_bar[i])).abs() < 1e-13);
            assert!(((out.p[i] - out.p_bar[i]) - (s.p[i] - s.p_bar[i])).abs() < 1e-13);
        }
    }

    #[test]
    fn quarter_rotation_swaps_differences() {
        let s = AugmentedState {
            t: 0.0, q: vec![2.0], p: vec![0.0], t_bar: 0.0, q_bar: vec![0.0], p_bar: vec![0.0], xi: 1.0,
        };
        let out = phi_c(&s, PI / 4.0);
        assert!((out.q[0] - out.q_bar[0]).abs() < 1e-15);
        assert!(((out.p[0] - out.p_bar[0]) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_preserves_means_and_difference_norm() {
        for seed in 0..100 {
            let s = random_augmented(seed, 4);
            let out = phi_c(&s, 0.0137 * (seed + 1) as f64);
            let norm = |a: &AugmentedState| {
                vecops::dist(&a.q, &a.q_bar).powi(2) + vecops::dist(&a.p, &a.p_bar).powi(2)
            };
            assert!((norm(&out) - norm(&s)).abs() <= 1e-13 * norm(&s));
            for i in 0..4 {
                let mq = s.q[i] + s.q_bar[i];
                let mp = s.p[i] + s.p_bar[i];
                assert!(((out.q[i] + out.q_bar[i]) - mq).abs() <= 1e-13 * (1.0 + mq.abs()));
                assert!(((out.p[i] + out.p_bar[i]) - mp).abs() <= 1e-13 * (1.0 + mp.abs()));
            }
            assert_eq!((out.t, out.t_bar), (s.t, s.t_bar));
        }
    }

    #[test]
    fn strang_step_tracks_leapfrog_on_separable_system() {
        let osc = harmonic_oscillator(DampingSchedule::Zero);
        let s = State::scalar(0.0, 1.0, 0.0).unwrap();
        let aug = AugmentedState::from_state(&s, 20.0).unwrap();
        let tao = TaoSplitting.step(&osc, &aug, 0.01).unwrap();
        let leap = PresymplecticLeapfrogA::default().step(&osc, &s, 0.01).unwrap();
        // The copies split by O(h²) per step; their mean follows leapfrog closely.
        assert!(tao.mean().max_abs_diff(&leap) <= 1e-6);
        assert!(tao.primary().max_abs_diff(&leap) <= 1e-5);
        assert_eq!(tao.t, tao.t_bar);
        assert!((tao.t - 0.01).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_coupling_and_dimensions() {
        let s = State::scalar(0.0, 1.0, 0.0).unwrap();
        assert!(AugmentedState::from_state(&s, 0.0).is_err());
        let osc = harmonic_oscillator(DampingSchedule::Zero);
        let aug = random_augmented(0, 2);
        assert!(TaoSplitting.step(&osc, &aug, 0.1).is_err());
    }
}
