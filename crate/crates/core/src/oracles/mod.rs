//! Closed-form solutions, special functions, reference trajectories and the
//! error statistics used to judge integrators.

mod bessel;
mod exact;

pub use bessel::bessel_jy;
pub use exact::{ExactSolution, exact_const_damping, exact_decaying_damping};

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSystem;
use crate::integrators::{Integrator, PresymplecticLeapfrogA, SuzukiYoshida, compose_suzuki_yoshida, integrate};
use crate::state::State;
use crate::trajectory::Trajectory;

/// Largest internal step used by [`reference_trajectory`].
pub const REFERENCE_STEP: f64 = 1e-4;

/// Largest time offset at which two grid points count as the same instant.
pub const GRID_TOLERANCE: f64 = 1e-9;

fn reference_integrator() -> SuzukiYoshida<PresymplecticLeapfrogA> {
    compose_suzuki_yoshida(PresymplecticLeapfrogA::default()).expect("leapfrog has even order")
}

/// High-accuracy numerical solution sampled at `samples` evenly spaced times
/// in `[s0.t, s0.t + t_max]`.
///
/// Integrates with the fourth-order Suzuki–Yoshida composition of leapfrog at
/// internal step `min(1e−4, t_max/(100·samples))`, rounded down so that every
/// sample lands on a step.
pub fn reference_trajectory(ham: &dyn HamiltonianSystem, s0: &State, t_max: f64, samples: usize) -> Result<Trajectory> {
    if samples < 2 {
        return Err(Error::invalid("reference trajectory needs at least 2 samples"));
    }
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::invalid(format!("t_max must be finite and nonnegative, got {t_max}")));
    }
    if t_max == 0.0 {
        let value = crate::hamiltonian::eval_energy(ham, s0)?;
        return Ok(Trajectory { states: alloc::vec![s0.clone()], ham_values: alloc::vec![value], grad_norms: None, step_size: 0.0 });
    }
    let h_ref = REFERENCE_STEP.min(t_max / (100.0 * samples as f64));
    let spacing = t_max / (samples - 1) as f64;
    reference_trajectory_with_step(ham, s0, spacing, samples - 1, h_ref)
}

/// Reference solution recorded every `spacing` for `intervals` intervals,
/// integrating internally with a step no larger than `h_max`.
pub fn reference_trajectory_with_step(
    ham: &dyn HamiltonianSystem,
    s0: &State,
    spacing: f64,
    intervals: usize,
    h_max: f64,
) -> Result<Trajectory> {
    if !(spacing > 0.0 && h_max > 0.0) {
        return Err(Error::invalid("reference spacing and step must be positive"));
    }
    let substeps = (spacing / h_max).ceil().max(1.0) as usize;
    let h = spacing / substeps as f64;
    let integ = reference_integrator();
    let mut states = Vec::with_capacity(intervals + 1);
    let mut ham_values = Vec::with_capacity(intervals + 1);
    states.push(s0.clone());
    ham_values.push(crate::hamiltonian::eval_energy(ham, s0)?);
    let mut current = s0.clone();
    for k in 1..=intervals {
        let run = integrate(&integ, ham, &current, h, substeps, None)?;
        let mut next = run.states.into_iter().last().expect("nonempty run");
        // Pin the sample time to the grid so later alignment is exact.
        next.t = s0.t + k as f64 * spacing;
        ham_values.push(crate::hamiltonian::eval_energy(ham, &next)?);
        states.push(next.clone());
        current = next;
    }
    Ok(Trajectory { states, ham_values, grad_norms: None, step_size: spacing })
}

/// What a numerical trajectory is measured against.
#[derive(Debug, Clone, Copy)]
pub enum Reference<'a> {
    /// Scalar closed form; requires a one-dimensional system.
    Exact(&'a ExactSolution),
    /// Sampled reference whose grid contains every numerical time.
    Trajectory(&'a Trajectory),
}

impl Reference<'_> {
    /// Reference phase point at time `t`.
    pub fn state_at(&self, t: f64) -> Result<State> {
        match self {
            Reference::Exact(sol) => sol.state(t),
            Reference::Trajectory(traj) => lookup(traj, t).cloned(),
        }
    }
}

fn lookup(traj: &Trajectory, t: f64) -> Result<&State> {
    let states = &traj.states;
    let idx = states.partition_point(|s| s.t < t - GRID_TOLERANCE);
    match states.get(idx) {
        Some(s) if (s.t - t).abs() <= GRID_TOLERANCE => Ok(s),
        other => Err(Error::GridMismatch { reference: other.map_or(f64::NAN, |s| s.t), numeric: t }),
    }
}

/// `|H(t_ℓ, exact) − H(t_ℓ, numeric)|` for every state of `traj`.
pub fn hamiltonian_error_series(ham: &dyn HamiltonianSystem, traj: &Trajectory, reference: Reference<'_>) -> Result<Vec<f64>> {
    if let Reference::Exact(_) = reference
        && ham.dim() != 1
    {
        return Err(Error::DimensionMismatch { expected: 1, found: ham.dim() });
    }
    traj.states
        .iter()
        .zip(&traj.ham_values)
        .map(|(s, &numeric)| {
            let r = reference.state_at(s.t)?;
            r.check_dim(ham.dim())?;
            let exact = ham.eval(s.t, &r.q, &r.p);
            let err = (exact - numeric).abs();
            if err.is_finite() {
                Ok(err)
            } else {
                Err(Error::NonFinite { context: "Hamiltonian error", t: s.t, state: Some(s.clone()) })
            }
        })
        .collect()
}

/// Maximum of [`hamiltonian_error_series`]; zero for an empty trajectory.
pub fn max_hamiltonian_error(ham: &dyn HamiltonianSystem, traj: &Trajectory, reference: Reference<'_>) -> Result<f64> {
    Ok(hamiltonian_error_series(ham, traj, reference)?.into_iter().fold(0.0, f64::max))
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch { expected: xs.len(), found: ys.len() });
    }
    if xs.len() < 2 {
        return Err(Error::invalid("slope fit needs at least two points"));
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::invalid("slope fit needs positive finite data"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("slope fit needs distinct abscissae"));
    }
    Ok(sxy / sxx)
}

fn check_h_list(h_list: &[f64]) -> Result<()> {
    if h_list.len() < 4 {
        return Err(Error::invalid(format!("order estimation needs at least 4 step sizes, got {}", h_list.len())));
    }
    if h_list.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
        return Err(Error::invalid("step sizes must be positive"));
    }
    let (lo, hi) = h_list.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &h| (lo.min(h), hi.max(h)));
    if hi < 10.0 * lo * (1.0 - 1e-12) {
        return Err(Error::invalid("step sizes must span at least one decade"));
    }
    Ok(())
}

/// Fitted order from a caller-supplied error measurement per step size.
///
/// `run(h)` returns the maximum Hamiltonian error of a run with step `h`;
/// failures are reported with the offending `h`. Returns the slope together
/// with the individual errors.
pub fn estimate_order_with(h_list: &[f64], mut run: impl FnMut(f64) -> Result<f64>) -> Result<(f64, Vec<f64>)> {
    check_h_list(h_list)?;
    let errors = h_list
        .iter()
        .map(|&h| match run(h) {
            Ok(e) if e.is_finite() => Ok(e),
            Ok(_) => Err(Error::StepSizeRun {
                h,
                cause: alloc::boxed::Box::new(Error::NonFinite { context: "maximum Hamiltonian error", t: f64::NAN, state: None }),
            }),
            Err(cause) => Err(Error::StepSizeRun { h, cause: alloc::boxed::Box::new(cause) }),
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((fit_log_slope(h_list, &errors)?, errors))
}

/// Number of steps of size `h` covering `t_max`.
pub fn steps_for(t_max: f64, h: f64) -> usize {
    (t_max / h).round() as usize
}

/// Least-squares slope of `log(max Hamiltonian error)` against `log h` for
/// runs of `integ` over `[s0.t, s0.t + t_max]`.
pub fn estimate_order<I: Integrator + ?Sized>(
    integ: &I,
    ham: &dyn HamiltonianSystem,
    s0: &State,
    t_max: f64,
    h_list: &[f64],
    reference: Reference<'_>,
) -> Result<f64> {
    estimate_order_with(h_list, |h| {
        let traj = integrate(integ, ham, s0, h, steps_for(t_max, h), None)?;
        max_hamiltonian_error(ham, &traj, reference)
    })
    .map(|(slope, _)| slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrators::{PresymplecticEulerA, PresymplecticLeapfrogA};
    use crate::problems::harmonic_oscillator;
    use crate::schedule::DampingSchedule;
    use alloc::vec;

    fn const_case() -> (impl HamiltonianSystem, ExactSolution, State) {
        (harmonic_oscillator(DampingSchedule::linear(0.2)), exact_const_damping(0.2, 1.0).unwrap(), State::scalar(0.0, 1.0, 0.0).unwrap())
    }

    #[test]
    fn reference_matches_constant_damping_closed_form() {
        let (ham, sol, s0) = const_case();
        let traj = reference_trajectory(&ham, &s0, 10.0, 101).unwrap();
        assert_eq!(traj.len(), 101);
        for s in &traj.states {
            let (q, p) = sol.at(s.t).unwrap();
            assert!((s.q[0] - q).abs() <= 1e-9, "t={}", s.t);
            assert!((s.p[0] - p).abs() <= 1e-9 * (1.0 + p.abs()));
        }
    }

    #[test]
    fn reference_matches_decaying_damping_closed_form() {
        let ham = harmonic_oscillator(DampingSchedule::logarithmic(3.0));
        let sol = exact_decaying_damping(3.0, 1.0).unwrap();
        let traj = reference_trajectory(&ham, &State::scalar(0.0, 1.0, 0.0).unwrap(), 10.0, 51).unwrap();
        for s in &traj.states {
            let (q, p) = sol.at(s.t).unwrap();
            assert!((s.q[0] - q).abs() <= 1e-9, "t={}", s.t);
            assert!((s.p[0] - p).abs() <= 1e-9 * (1.0 + p.abs()), "t={}", s.t);
        }
    }

    #[test]
    fn reference_with_zero_horizon_is_initial_state() {
        let (ham, _, s0) = const_case();
        let traj = reference_trajectory(&ham, &s0, 0.0, 10).unwrap();
        assert_eq!(traj.states, vec![s0]);
        assert!(reference_trajectory(&ham, &State::scalar(0.0, 1.0, 0.0).unwrap(), 1.0, 1).is_err());
    }

    #[test]
    fn reference_is_step_converged() {
        let (ham, _, s0) = const_case();
        let coarse = reference_trajectory_with_step(&ham, &s0, 5.0, 2, 1e-3).unwrap();
        let fine = reference_trajectory_with_step(&ham, &s0, 5.0, 2, 5e-4).unwrap();
        let (a, b) = (coarse.last().unwrap(), fine.last().unwrap());
        assert!((a.q[0] - b.q[0]).abs() <= 1e-11);
    }

    #[test]
    fn error_series_vanishes_on_exact_samples() {
        let (ham, sol, _) = const_case();
        let states: Vec<State> = (0..20).map(|k| sol.state(0.5 * k as f64).unwrap()).collect();
        let ham_values = states.iter().map(|s| ham.eval(s.t, &s.q, &s.p)).collect();
        let traj = Trajectory { states, ham_values, grad_norms: None, step_size: 0.5 };
        let series = hamiltonian_error_series(&ham, &traj, Reference::Exact(&sol)).unwrap();
        assert!(series.iter().all(|e| *e == 0.0));
        assert_eq!(max_hamiltonian_error(&ham, &traj, Reference::Exact(&sol)).unwrap(), 0.0);
        assert_eq!(hamiltonian_error_series(&ham, &traj, Reference::Trajectory(&traj)).unwrap(), series);
    }

    #[test]
    fn misaligned_grids_are_rejected() {
        let (ham, _, s0) = const_case();
        let reference = reference_trajectory_with_step(&ham, &s0, 0.1, 10, 1e-3).unwrap();
        let numeric = integrate(&PresymplecticLeapfrogA::default(), &ham, &s0, 0.03, 10, None).unwrap();
        assert!(matches!(
            hamiltonian_error_series(&ham, &numeric, Reference::Trajectory(&reference)),
            Err(Error::GridMismatch { .. })
        ));
        let aligned = integrate(&PresymplecticLeapfrogA::default(), &ham, &s0, 0.2, 5, None).unwrap();
        assert!(hamiltonian_error_series(&ham, &aligned, Reference::Trajectory(&reference)).is_ok());
    }

    fn max_error<I: Integrator>(integ: &I, h: f64) -> f64 {
        let (ham, _, _) = const_case();
        let s0 = State::scalar(0.0, 10.0, 0.0).unwrap();
        let sol10 = exact_const_damping(0.2, 10.0).unwrap();
        let traj = integrate(integ, &ham, &s0, h, steps_for(10.0, h), None).unwrap();
        max_hamiltonian_error(&ham, &traj, Reference::Exact(&sol10)).unwrap()
    }

    #[test]
    fn halving_step_quarters_leapfrog_error() {
        let lf = PresymplecticLeapfrogA::default();
        let ratio = max_error(&lf, 0.02) / max_error(&lf, 0.01);
        assert!((3.4..=4.6).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn halving_step_divides_sy4_error_by_sixteen() {
        let sy4 = compose_suzuki_yoshida(PresymplecticLeapfrogA::default()).unwrap();
        let ratio = max_error(&sy4, 0.04) / max_error(&sy4, 0.02);
        assert!((13.0..=19.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn euler_a_is_first_order() {
        let (ham, _, _) = const_case();
        let sol = exact_const_damping(0.2, 10.0).unwrap();
        let s0 = State::scalar(0.0, 10.0, 0.0).unwrap();
        let h_list = [0.02, 0.01, 0.005, 0.0025, 0.00125];
        let slope = estimate_order(&PresymplecticEulerA::default(), &ham, &s0, 10.0, &h_list, Reference::Exact(&sol)).unwrap();
        assert!((0.8..=1.2).contains(&slope), "slope {slope}");
    }

    #[test]
    fn slope_fit_recovers_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-2.5)).collect();
        assert!((fit_log_slope(&xs, &ys).unwrap() + 2.5).abs() < 1e-12);
        assert!(fit_log_slope(&[1.0], &[1.0]).is_err());
        assert!(fit_log_slope(&[1.0, 2.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn order_estimation_checks_its_inputs() {
        let ok = |_h: f64| Ok(1.0);
        assert!(estimate_order_with(&[0.1], ok).is_err());
        assert!(estimate_order_with(&[0.1, 0.05, 0.04, 0.03], ok).is_err());
        assert!(estimate_order_with(&[0.1, 0.05, 0.02, 0.01], ok).is_ok());
        let failing = |h: f64| if h < 0.03 { Err(Error::invalid("boom")) } else { Ok(h) };
        match estimate_order_with(&[0.1, 0.05, 0.02, 0.01], failing) {
            Err(Error::StepSizeRun { h, .. }) => assert_eq!(h, 0.02),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exact_reference_requires_scalar_system() {
        let ham = crate::problems::QuadraticKineticSystem::unit_mass(
            DampingSchedule::Zero,
            DampingSchedule::Zero,
            crate::problems::QuadraticPotential::isotropic(2),
        );
        let sol = exact_const_damping(0.2, 1.0).unwrap();
        let s0 = State::new(0.0, vec![1.0, 0.0], vec![0.0, 0.0]).unwrap();
        let traj = integrate(&PresymplecticLeapfrogA::default(), &ham, &s0, 0.1, 2, None).unwrap();
        assert!(hamiltonian_error_series(&ham, &traj, Reference::Exact(&sol)).is_err());
    }
}
