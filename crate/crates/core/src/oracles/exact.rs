//! Closed-form solutions of the damped oscillator `q̈ + η̇(t) q̇ + q = 0`
//! written in canonical variables `p = e^{η(t)} q̇`.

use alloc::format;

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::bessel::{MAX_ARG, MAX_ORDER, bessel_jy};
use crate::error::{Error, Result};
use crate::state::State;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// `η = γt`.
    Constant { omega: f64 },
    /// `η = γ log(t + 1)`; orders `α± = (γ ± 1)/2` and Bessel values at 1.
    Decaying { alpha_plus: f64, alpha_minus: f64, j_plus_1: f64, y_plus_1: f64 },
}

/// A scalar closed-form trajectory `t ↦ (q(t), p(t))` starting at `(q₀, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSolution {
    gamma: f64,
    q0: f64,
    kind: Kind,
}

/// Underdamped (or, for `γ < 0`, excited) oscillator with constant damping
/// `γ`: `H = e^{−γt} p²/2 + e^{γt} q²/2`.
///
/// Requires `|γ| < 2` so that `ω = √(4 − γ²)` is real.
pub fn exact_const_damping(gamma: f64, q0: f64) -> Result<ExactSolution> {
    if !(gamma.is_finite() && gamma.abs() < 2.0) {
        return Err(Error::invalid(format!("constant damping closed form needs |gamma| < 2, got {gamma}")));
    }
    if !q0.is_finite() {
        return Err(Error::invalid("q0 must be finite"));
    }
    let omega = (4.0 - gamma * gamma).sqrt();
    Ok(ExactSolution { gamma, q0, kind: Kind::Constant { omega } })
}

/// Oscillator with damping `γ/(t + 1)`: `H = (t+1)^{−γ} p²/2 + (t+1)^γ q²/2`.
///
/// Requires `γ > 1`; valid for `t ∈ [0, 199]`.
pub fn exact_decaying_damping(gamma: f64, q0: f64) -> Result<ExactSolution> {
    if !(gamma.is_finite() && gamma > 1.0) {
        return Err(Error::invalid(format!("decaying damping closed form needs gamma > 1, got {gamma}")));
    }
    if !q0.is_finite() {
        return Err(Error::invalid("q0 must be finite"));
    }
    let alpha_plus = 0.5 * (gamma + 1.0);
    let alpha_minus = 0.5 * (gamma - 1.0);
    if alpha_plus > MAX_ORDER {
        return Err(Error::invalid(format!("gamma = {gamma} needs Bessel order above {MAX_ORDER}")));
    }
    let (j_plus_1, y_plus_1) = bessel_jy(alpha_plus, 1.0)?;
    Ok(ExactSolution { gamma, q0, kind: Kind::Decaying { alpha_plus, alpha_minus, j_plus_1, y_plus_1 } })
}

impl ExactSolution {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    /// Largest `t` at which the solution can be evaluated.
    pub fn t_max(&self) -> f64 {
        match self.kind {
            Kind::Constant { .. } => f64::INFINITY,
            Kind::Decaying { .. } => MAX_ARG - 1.0,
        }
    }

    /// `(q(t), p(t))`.
    pub fn at(&self, t: f64) -> Result<(f64, f64)> {
        if !(t >= 0.0 && t <= self.t_max()) {
            return Err(Error::Domain(format!("exact solution evaluated at t = {t}")));
        }
        let (q0, gamma) = (self.q0, self.gamma);
        let value = match self.kind {
            Kind::Constant { omega } => {
                let (s, c) = (0.5 * omega * t).sin_cos();
                let q = q0 * (-0.5 * gamma * t).exp() * (c + gamma / omega * s);
                let p = -2.0 * q0 / omega * (0.5 * gamma * t).exp() * s;
                (q, p)
            }
            Kind::Decaying { alpha_plus, alpha_minus, j_plus_1, y_plus_1 } => {
                let x = t + 1.0;
                let (j_minus, y_minus) = bessel_jy(alpha_minus, x)?;
                let (j_plus, y_plus) = bessel_jy(alpha_plus, x)?;
                let k = 0.5 * q0 * PI;
                let q = k * x.powf(-alpha_minus) * (j_plus_1 * y_minus - y_plus_1 * j_minus);
                let p = k * x.powf(alpha_plus) * (y_plus_1 * j_plus - j_plus_1 * y_plus);
                (q, p)
            }
        };
        if !(value.0.is_finite() && value.1.is_finite()) {
            return Err(Error::Overflow { context: "exact solution" });
        }
        Ok(value)
    }

    /// The solution at `t` as a one-dimensional phase point.
    pub fn state(&self, t: f64) -> Result<State> {
        let (q, p) = self.at(t)?;
        State::scalar(t, q, p)
    }

    /// Damping rate `η̇(t)` of the oscillator this solution solves.
    pub fn damping_rate(&self, t: f64) -> f64 {
        match self.kind {
            Kind::Constant { .. } => self.gamma,
            Kind::Decaying { .. } => self.gamma / (t + 1.0),
        }
    }
}
