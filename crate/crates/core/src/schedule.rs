//! Damping schedules `η(t)` for the dissipative kinetic and potential factors.

use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// A time-dependent damping function together with its analytic derivative.
pub trait Damping: Send + Sync {
    fn eta(&self, t: f64) -> f64;
    fn eta_dot(&self, t: f64) -> f64;
}

impl<D: Damping + ?Sized> Damping for &D {
    fn eta(&self, t: f64) -> f64 {
        (**self).eta(t)
    }
    fn eta_dot(&self, t: f64) -> f64 {
        (**self).eta_dot(t)
    }
}

/// The built-in damping families.
///
/// Logarithmic kinds are shifted by `t0 > 0` so that `η(0)` is finite:
/// `Logarithmic` is `γ log(t + t0)` and `PowerMix` is
/// `γ₁ log(t + t0) + γ₂ (t + t0)^δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DampingSchedule {
    Zero,
    Linear { gamma: f64 },
    Logarithmic { gamma: f64, t0: f64 },
    PowerMix { gamma1: f64, gamma2: f64, delta: f64, t0: f64 },
}

impl DampingSchedule {
    pub const DEFAULT_T0: f64 = 1.0;

    pub fn linear(gamma: f64) -> Self {
        DampingSchedule::Linear { gamma }
    }

    pub fn logarithmic(gamma: f64) -> Self {
        DampingSchedule::Logarithmic { gamma, t0: Self::DEFAULT_T0 }
    }

    /// Checks the parameter ranges under which `η` is finite and nondecreasing
    /// on `t ≥ 0`.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        let nonneg = match *self {
            DampingSchedule::Zero => true,
            DampingSchedule::Linear { gamma } | DampingSchedule::Logarithmic { gamma, .. } => {
                gamma >= 0.0
            }
            DampingSchedule::PowerMix { gamma1, gamma2, .. } => gamma1 >= 0.0 && gamma2 >= 0.0,
        };
        if !nonneg {
            return Err(Error::invalid(format!(
                "{self:?} is not nondecreasing; damping coefficients must be nonnegative"
            )));
        }
        Ok(())
    }

    /// Like [`validate`](Self::validate) but permits negative coefficients,
    /// i.e. schedules that inject energy.
    pub fn validate_allowing_excitation(&self) -> Result<()> {
        self.validate_shape()
    }

    fn validate_shape(&self) -> Result<()> {
        let finite = |x: f64| x.is_finite();
        match *self {
            DampingSchedule::Zero => Ok(()),
            DampingSchedule::Linear { gamma } if finite(gamma) => Ok(()),
            DampingSchedule::Logarithmic { gamma, t0 } if finite(gamma) && t0 > 0.0 && finite(t0) => {
                Ok(())
            }
            DampingSchedule::PowerMix { gamma1, gamma2, delta, t0 }
                if finite(gamma1) && finite(gamma2) && delta > 0.0 && delta <= 1.0 && t0 > 0.0 && finite(t0) =>
            {
                Ok(())
            }
            _ => Err(Error::invalid(format!("invalid damping schedule parameters {self:?}"))),
        }
    }
}

impl Damping for DampingSchedule {
    fn eta(&self, t: f64) -> f64 {
        match *self {
            DampingSchedule::Zero => 0.0,
            DampingSchedule::Linear { gamma } => gamma * t,
            DampingSchedule::Logarithmic { gamma, t0 } => gamma * (t + t0).ln(),
            DampingSchedule::PowerMix { gamma1, gamma2, delta, t0 } => {
                gamma1 * (t + t0).ln() + gamma2 * (t + t0).powf(delta)
            }
        }
    }

    fn eta_dot(&self, t: f64) -> f64 {
        match *self {
            DampingSchedule::Zero => 0.0,
            DampingSchedule::Linear { gamma } => gamma,
            DampingSchedule::Logarithmic { gamma, t0 } => gamma / (t + t0),
            DampingSchedule::PowerMix { gamma1, gamma2, delta, t0 } => {
                gamma1 / (t + t0) + gamma2 * delta * (t + t0).powf(delta - 1.0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn presets(g1: f64, g2: f64, delta: f64) -> [DampingSchedule; 4] {
        [
            DampingSchedule::Zero,
            DampingSchedule::linear(g1),
            DampingSchedule::Logarithmic { gamma: g2, t0: 1.0 },
            DampingSchedule::PowerMix { gamma1: g1, gamma2: g2, delta, t0: 0.5 },
        ]
    }

    #[test]
    fn zero_is_identically_zero() {
        for t in [0.0, 1.0, 1e3] {
            assert_eq!(DampingSchedule::Zero.eta(t), 0.0);
            assert_eq!(DampingSchedule::Zero.eta_dot(t), 0.0);
        }
    }

    #[test]
    fn monotone_on_grid() {
        for sched in presets(0.2, 3.0, 0.5) {
            sched.validate().unwrap();
            let mut prev = sched.eta(0.0);
            for k in 1..1000 {
                let cur = sched.eta(k as f64 * 0.1);
                assert!(cur >= prev, "{sched:?} decreased at step {k}");
                prev = cur;
            }
        }
    }

    #[test]
    fn excitation_requires_explicit_opt_in() {
        let s = DampingSchedule::linear(-1.0);
        assert!(s.validate().is_err());
        assert!(s.validate_allowing_excitation().is_ok());
        assert!(DampingSchedule::Logarithmic { gamma: 1.0, t0: 0.0 }.validate().is_err());
        let bad_delta = DampingSchedule::PowerMix { gamma1: 1.0, gamma2: 1.0, delta: 1.5, t0: 1.0 };
        assert!(bad_delta.validate().is_err());
    }

    proptest! {
        #[test]
        fn derivative_matches_central_difference(
            g1 in 0.0f64..3.0, g2 in 0.0f64..3.0, delta in 0.05f64..=1.0, t in 0.0f64..50.0,
        ) {
            let eps = 1e-5;
            for sched in presets(g1, g2, delta) {
                let fd = (sched.eta(t + eps) - sched.eta(t - eps)) / (2.0 * eps);
                let exact = sched.eta_dot(t);
                prop_assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "{:?}", sched);
            }
        }
    }
}
