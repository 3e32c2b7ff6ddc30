use std::sync::Arc;

use presympt_core::integrators::{
    ExplicitEuler, MomentumRule, PresymplecticEulerA, PresymplecticEulerB, PresymplecticLeapfrogA,
    PresymplecticLeapfrogB, TaoSplitting, compose_suzuki_yoshida, integrate, nesterov_trajectory,
};
use presympt_core::oracles::{ExactSolution, exact_const_damping, exact_decaying_damping};
use presympt_core::problems::{
    Potential, QuadraticGenerator, QuadraticPotential, harmonic_oscillator, make_bregman_system,
    make_random_quadratic, make_relativistic_system, QuadraticKineticSystem,
};
use presympt_core::{DampingSchedule, HamiltonianSystem, State, Trajectory, rng};

use crate::HarnessError;
use crate::config::{IntegratorName, SystemSpec};

/// A configured problem: Hamiltonian, objective, start point and, where one
/// exists, the closed-form solution.
pub struct BuiltSystem {
    pub ham: Box<dyn HamiltonianSystem>,
    /// Objective whose gradient norm is reported.
    pub potential: Arc<dyn Potential>,
    pub initial: State,
    pub exact: Option<ExactSolution>,
    /// Damping schedule and momentum rule for the Nesterov baseline, when
    /// the system is the unit-mass quadratic-kinetic form with linear damping.
    pub nesterov: Option<(DampingSchedule, MomentumRule)>,
}

fn core_config(err: presympt_core::Error) -> HarnessError {
    HarnessError::Config(err.to_string())
}

pub fn build_system(spec: &SystemSpec) -> Result<BuiltSystem, HarnessError> {
    spec.validate()?;
    Ok(match *spec {
        SystemSpec::DampedOscillator { gamma, q0, .. } => {
            let eta = DampingSchedule::linear(gamma);
            BuiltSystem {
                ham: Box::new(harmonic_oscillator(eta)),
                potential: Arc::new(QuadraticPotential::isotropic(1)),
                initial: State::scalar(0.0, q0, 0.0).map_err(core_config)?,
                exact: exact_const_damping(gamma, q0).ok(),
                nesterov: Some((eta, MomentumRule::ConstantDamping { gamma })),
            }
        }
        SystemSpec::DecayingOscillator { gamma, q0 } => BuiltSystem {
            ham: Box::new(harmonic_oscillator(DampingSchedule::logarithmic(gamma))),
            potential: Arc::new(QuadraticPotential::isotropic(1)),
            initial: State::scalar(0.0, q0, 0.0).map_err(core_config)?,
            exact: exact_decaying_damping(gamma, q0).ok(),
            nesterov: None,
        },
        SystemSpec::RandomQuadratic { n, y, seed, gamma } => {
            let f = Arc::new(make_random_quadratic(n, y, seed).map_err(core_config)?);
            let eta = DampingSchedule::linear(gamma);
            BuiltSystem {
                ham: Box::new(QuadraticKineticSystem::unit_mass(eta, eta, f.clone())),
                potential: f,
                initial: State::new(0.0, rng::initial_point(n, seed), vec![0.0; n]).map_err(core_config)?,
                exact: None,
                nesterov: Some((eta, MomentumRule::ConstantDamping { gamma })),
            }
        }
        SystemSpec::BregmanQuadratic { n, lambda_min, lambda_max, scaling, t_start } => {
            let f = Arc::new(QuadraticPotential::log_spectrum(n, lambda_min, lambda_max).map_err(core_config)?);
            let ham = make_bregman_system(QuadraticGenerator::identity(n), f.clone(), scaling.triple()).map_err(core_config)?;
            BuiltSystem {
                ham: Box::new(ham),
                potential: f,
                initial: State::new(t_start, vec![1.0; n], vec![0.0; n]).map_err(core_config)?,
                exact: None,
                nesterov: None,
            }
        }
        SystemSpec::Relativistic { n, y, seed, gamma, mass, speed } => {
            let f = Arc::new(make_random_quadratic(n, y, seed).map_err(core_config)?);
            BuiltSystem {
                ham: Box::new(make_relativistic_system(f.clone(), gamma, mass, speed).map_err(core_config)?),
                potential: f,
                initial: State::new(0.0, rng::initial_point(n, seed), vec![0.0; n]).map_err(core_config)?,
                exact: None,
                nesterov: None,
            }
        }
    })
}

impl BuiltSystem {
    /// Rejects integrators the system cannot run.
    pub fn check_integrator(&self, name: IntegratorName) -> Result<(), HarnessError> {
        if name == IntegratorName::Nesterov && self.nesterov.is_none() {
            return Err(HarnessError::Config(
                "nesterov needs a unit-mass system with constant damping (damped_oscillator or random_quadratic)".into(),
            ));
        }
        Ok(())
    }

    /// Closed form usable on `[t0, t0 + t_max]`.
    pub fn exact_on(&self, t_max: f64) -> Option<&ExactSolution> {
        self.exact.as_ref().filter(|sol| self.initial.t == 0.0 && t_max <= sol.t_max())
    }
}

/// Runs `name` for `n` steps of size `h` from the system's start point,
/// recording gradient norms of its objective.
pub fn run_integrator(sys: &BuiltSystem, name: IntegratorName, h: f64, n: usize, xi: f64) -> presympt_core::Result<Trajectory> {
    let ham = &*sys.ham;
    let s0 = &sys.initial;
    let diag: Option<&dyn Potential> = Some(&*sys.potential);
    match name {
        IntegratorName::EulerA => integrate(&PresymplecticEulerA::default(), ham, s0, h, n, diag),
        IntegratorName::EulerB => integrate(&PresymplecticEulerB::default(), ham, s0, h, n, diag),
        IntegratorName::LeapfrogA => integrate(&PresymplecticLeapfrogA::default(), ham, s0, h, n, diag),
        IntegratorName::LeapfrogB => integrate(&PresymplecticLeapfrogB::default(), ham, s0, h, n, diag),
        IntegratorName::Sy4 => integrate(&compose_suzuki_yoshida(PresymplecticLeapfrogA::default())?, ham, s0, h, n, diag),
        IntegratorName::Sy6 => {
            let sy6 = compose_suzuki_yoshida(compose_suzuki_yoshida(PresymplecticLeapfrogA::default())?)?;
            integrate(&sy6, ham, s0, h, n, diag)
        }
        IntegratorName::ExplicitEuler => integrate(&ExplicitEuler, ham, s0, h, n, diag),
        IntegratorName::Tao => TaoSplitting.integrate(ham, s0, xi, h, n, diag),
        IntegratorName::Nesterov => {
            let (eta, rule) = sys.nesterov.ok_or_else(|| presympt_core::Error::InvalidParameter("nesterov unavailable".into()))?;
            nesterov_trajectory(ham, &*sys.potential, &eta, s0, h, n, rule)
        }
    }
}
