//! JSON experiment configuration.
//!
//! A config is a single JSON object whose `kind` field selects the
//! experiment. Unknown keys are rejected everywhere.

use std::path::Path;

use presympt_core::ScalingTriple;
use serde::Deserialize;

use crate::HarnessError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentConfig {
    Simulate(SimulateConfig),
    Order(OrderConfig),
    PhaseSweep(PhaseSweepConfig),
    RateReport(RateReportConfig),
    QuadBench(QuadBenchConfig),
}

impl ExperimentConfig {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            ExperimentConfig::Simulate(_) => ExperimentKind::Simulate,
            ExperimentConfig::Order(_) => ExperimentKind::Order,
            ExperimentConfig::PhaseSweep(_) => ExperimentKind::PhaseSweep,
            ExperimentConfig::RateReport(_) => ExperimentKind::RateReport,
            ExperimentConfig::QuadBench(_) => ExperimentKind::QuadBench,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            HarnessError::Config(msg) => HarnessError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        match self {
            ExperimentConfig::Simulate(c) => c.validate(),
            ExperimentConfig::Order(c) => c.validate(),
            ExperimentConfig::PhaseSweep(c) => c.validate(),
            ExperimentConfig::RateReport(c) => c.validate(),
            ExperimentConfig::QuadBench(c) => c.validate(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Simulate,
    Order,
    PhaseSweep,
    RateReport,
    QuadBench,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Order => "order",
            ExperimentKind::PhaseSweep => "phase_sweep",
            ExperimentKind::RateReport => "rate_report",
            ExperimentKind::QuadBench => "quad_bench",
        }
    }
}

fn config_error(msg: impl Into<String>) -> HarnessError {
    HarnessError::Config(msg.into())
}

fn positive(name: &str, v: f64) -> Result<(), HarnessError> {
    if v > 0.0 && v.is_finite() { Ok(()) } else { Err(config_error(format!("{name} must be positive, got {v}"))) }
}

/// Problem family integrated by `simulate` and `order`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    /// `q̈ + γq̇ + q = 0`. Negative `γ` injects energy and needs
    /// `allow_excitation`.
    DampedOscillator {
        gamma: f64,
        q0: f64,
        #[serde(default)]
        allow_excitation: bool,
    },
    /// `q̈ + γ/(t+1) q̇ + q = 0`.
    DecayingOscillator { gamma: f64, q0: f64 },
    /// `½e^{−γt}‖p‖² + e^{γt}·½q·Mq` with a random Marchenko–Pastur `M`.
    RandomQuadratic { n: usize, y: f64, seed: u64, gamma: f64 },
    /// Bregman Hamiltonian with the identity quadratic generator and a
    /// diagonal quadratic whose eigenvalues are log-spaced.
    BregmanQuadratic {
        n: usize,
        lambda_min: f64,
        lambda_max: f64,
        scaling: ScalingSpec,
        #[serde(default = "default_t_start")]
        t_start: f64,
    },
    /// Relativistic kinetic energy on a random quadratic.
    Relativistic { n: usize, y: f64, seed: u64, gamma: f64, mass: f64, speed: f64 },
}

fn default_t_start() -> f64 {
    1.0
}

impl SystemSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        match *self {
            SystemSpec::DampedOscillator { gamma, q0, allow_excitation } => {
                if !gamma.is_finite() || !q0.is_finite() {
                    return Err(config_error("oscillator parameters must be finite"));
                }
                if gamma < 0.0 && !allow_excitation {
                    return Err(config_error(format!(
                        "gamma = {gamma} injects energy; set \"allow_excitation\": true to run it"
                    )));
                }
                Ok(())
            }
            SystemSpec::DecayingOscillator { gamma, q0 } => {
                if !q0.is_finite() {
                    return Err(config_error("q0 must be finite"));
                }
                if !(gamma >= 0.0 && gamma.is_finite()) {
                    return Err(config_error(format!("gamma must be nonnegative, got {gamma}")));
                }
                Ok(())
            }
            SystemSpec::RandomQuadratic { n, y, gamma, .. } => {
                quadratic_shape(n, y)?;
                nonnegative("gamma", gamma)
            }
            SystemSpec::BregmanQuadratic { n, lambda_min, lambda_max, ref scaling, t_start } => {
                if n == 0 {
                    return Err(config_error("n must be at least 1"));
                }
                positive("lambda_min", lambda_min)?;
                if !(lambda_max >= lambda_min && lambda_max.is_finite()) {
                    return Err(config_error("lambda_max must be at least lambda_min"));
                }
                let triple = scaling.triple();
                triple.validate().map_err(|e| config_error(e.to_string()))?;
                if !t_start.is_finite() || !presympt_core::Scaling::in_domain(&triple, t_start) {
                    return Err(config_error(format!("t_start = {t_start} is outside the scaling domain")));
                }
                Ok(())
            }
            SystemSpec::Relativistic { n, y, gamma, mass, speed, .. } => {
                quadratic_shape(n, y)?;
                nonnegative("gamma", gamma)?;
                positive("mass", mass)?;
                positive("speed", speed)
            }
        }
    }
}

fn nonnegative(name: &str, v: f64) -> Result<(), HarnessError> {
    if v >= 0.0 && v.is_finite() { Ok(()) } else { Err(config_error(format!("{name} must be nonnegative, got {v}"))) }
}

fn quadratic_shape(n: usize, y: f64) -> Result<(), HarnessError> {
    if n < 2 {
        return Err(config_error("n must be at least 2"));
    }
    if !(y > 0.0 && y <= 1.0) {
        return Err(config_error(format!("y must lie in (0, 1], got {y}")));
    }
    if (y * n as f64).round() < 1.0 {
        return Err(config_error("round(y n) must be at least 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScalingSpec {
    /// `α = log(c/(t+t0))`, `β = c log(t+t0) + offset`, `γ = c log(t+t0)`.
    Polynomial {
        c: f64,
        #[serde(default = "default_t0")]
        t0: f64,
        #[serde(default)]
        offset: f64,
    },
    /// `α = log c`, `β = ct`, `γ = ct + offset`.
    Exponential {
        c: f64,
        #[serde(default)]
        offset: f64,
    },
}

fn default_t0() -> f64 {
    1.0
}

impl ScalingSpec {
    pub fn triple(&self) -> ScalingTriple {
        match *self {
            ScalingSpec::Polynomial { c, t0, offset } => ScalingTriple::Polynomial { c, t0, offset },
            ScalingSpec::Exponential { c, offset } => ScalingTriple::Exponential { c, offset },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegratorName {
    EulerA,
    EulerB,
    LeapfrogA,
    LeapfrogB,
    /// Fourth-order composition of leapfrog_a.
    Sy4,
    /// Sixth-order composition of sy4.
    Sy6,
    /// Augmented explicit splitting for nonseparable systems.
    Tao,
    ExplicitEuler,
    Nesterov,
}

impl IntegratorName {
    pub fn label(self) -> &'static str {
        match self {
            IntegratorName::EulerA => "euler_a",
            IntegratorName::EulerB => "euler_b",
            IntegratorName::LeapfrogA => "leapfrog_a",
            IntegratorName::LeapfrogB => "leapfrog_b",
            IntegratorName::Sy4 => "sy4",
            IntegratorName::Sy6 => "sy6",
            IntegratorName::Tao => "tao",
            IntegratorName::ExplicitEuler => "explicit_euler",
            IntegratorName::Nesterov => "nesterov",
        }
    }
}

fn default_xi() -> f64 {
    presympt_core::integrators::AugmentedState::DEFAULT_XI
}

fn default_decimation() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub system: SystemSpec,
    pub integrator: IntegratorName,
    pub h: f64,
    /// Exactly one of `n_steps` and `t_max`.
    #[serde(default)]
    pub n_steps: Option<usize>,
    #[serde(default)]
    pub t_max: Option<f64>,
    /// Keep every `decimation`-th step (the last step is always kept).
    #[serde(default = "default_decimation")]
    pub decimation: usize,
    /// Coupling constant for `tao`.
    #[serde(default = "default_xi")]
    pub xi: f64,
}

impl SimulateConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.system.validate()?;
        positive("h", self.h)?;
        positive("xi", self.xi)?;
        if self.decimation == 0 {
            return Err(config_error("decimation must be at least 1"));
        }
        match (self.n_steps, self.t_max) {
            (Some(_), None) => Ok(()),
            (None, Some(t)) if t >= 0.0 && t.is_finite() => Ok(()),
            (None, Some(t)) => Err(config_error(format!("t_max must be nonnegative, got {t}"))),
            _ => Err(config_error("give exactly one of n_steps and t_max")),
        }
    }

    pub fn steps(&self) -> usize {
        self.n_steps.unwrap_or_else(|| presympt_core::oracles::steps_for(self.t_max.unwrap_or(0.0), self.h))
    }
}

pub const DEFAULT_H_LIST: [f64; 5] = [0.02, 0.01, 0.005, 0.0025, 0.00125];

fn default_h_list() -> Vec<f64> {
    DEFAULT_H_LIST.to_vec()
}

fn default_order_t_max() -> f64 {
    10.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderConfig {
    pub system: SystemSpec,
    pub integrators: Vec<IntegratorName>,
    #[serde(default = "default_h_list")]
    pub h_list: Vec<f64>,
    #[serde(default = "default_order_t_max")]
    pub t_max: f64,
    #[serde(default = "default_xi")]
    pub xi: f64,
}

impl OrderConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.system.validate()?;
        positive("t_max", self.t_max)?;
        positive("xi", self.xi)?;
        if self.integrators.is_empty() {
            return Err(config_error("integrators must not be empty"));
        }
        if self.h_list.len() < 2 {
            return Err(config_error("h_list needs at least two step sizes to fit a slope"));
        }
        for &h in &self.h_list {
            positive("h", h)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    /// `steps` evenly spaced values from `min` to `max` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let d = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| if k + 1 == self.steps { self.max } else { self.min + d * k as f64 }).collect()
    }

    fn validate(&self, name: &str, strictly_positive: bool) -> Result<(), HarnessError> {
        if self.steps == 0 {
            return Err(config_error(format!("{name}.steps must be at least 1")));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min <= self.max) {
            return Err(config_error(format!("{name} needs finite min <= max")));
        }
        if strictly_positive && self.min <= 0.0 {
            return Err(config_error(format!("{name}.min must be positive")));
        }
        if !strictly_positive && self.min < 0.0 {
            return Err(config_error(format!("{name}.min must be nonnegative")));
        }
        Ok(())
    }
}

/// Optimization method used by the quadratic benchmarks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    Leapfrog,
    /// Momentum `(1 − γh/2)/(1 + γh/2)`.
    Nesterov,
    /// Momentum `ℓ/(ℓ + 3)`; ignores `γ`.
    NesterovPolynomial,
    GradientDescent,
}

impl MethodName {
    pub fn label(self) -> &'static str {
        match self {
            MethodName::Leapfrog => "leapfrog",
            MethodName::Nesterov => "nesterov",
            MethodName::NesterovPolynomial => "nesterov_polynomial",
            MethodName::GradientDescent => "gradient_descent",
        }
    }
}

fn default_y() -> f64 {
    0.8
}

fn default_n() -> usize {
    200
}

fn default_max_iter() -> usize {
    800
}

fn default_tol() -> f64 {
    1e-3
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseSweepConfig {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_y")]
    pub y: f64,
    pub seed: u64,
    pub methods: Vec<MethodName>,
    pub gamma: Axis,
    pub h: Axis,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

impl PhaseSweepConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        quadratic_shape(self.n, self.y)?;
        if self.methods.is_empty() {
            return Err(config_error("methods must not be empty"));
        }
        self.gamma.validate("gamma", false)?;
        self.h.validate("h", true)?;
        positive("tol", self.tol)
    }
}

fn default_rate_t_start() -> f64 {
    1.0
}

fn default_rate_t_max() -> f64 {
    100.0
}

fn default_rate_integrator() -> IntegratorName {
    IntegratorName::LeapfrogA
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateReportConfig {
    pub n: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub scaling: ScalingSpec,
    #[serde(default = "default_rate_integrator")]
    pub integrator: IntegratorName,
    pub h: f64,
    #[serde(default = "default_rate_t_start")]
    pub t_start: f64,
    #[serde(default = "default_rate_t_max")]
    pub t_max: f64,
    #[serde(default = "default_decimation")]
    pub decimation: usize,
    /// Start at the minimizer instead of the all-ones point.
    #[serde(default)]
    pub start_at_minimum: bool,
    #[serde(default = "default_xi")]
    pub xi: f64,
}

impl RateReportConfig {
    pub fn system(&self) -> SystemSpec {
        SystemSpec::BregmanQuadratic {
            n: self.n,
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
            scaling: self.scaling,
            t_start: self.t_start,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        self.system().validate()?;
        positive("h", self.h)?;
        positive("xi", self.xi)?;
        if !(self.t_max > self.t_start && self.t_max.is_finite()) {
            return Err(config_error("t_max must exceed t_start"));
        }
        if self.decimation == 0 {
            return Err(config_error("decimation must be at least 1"));
        }
        if self.integrator == IntegratorName::Nesterov {
            return Err(config_error("rate_report integrates the Bregman system; nesterov is not available"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchMethod {
    pub method: MethodName,
    #[serde(default)]
    pub gamma: f64,
    pub h: f64,
    /// Name used in the `method` column; defaults to `<method>_h<h>`.
    #[serde(default)]
    pub label: Option<String>,
}

impl BenchMethod {
    pub fn label(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("{}_h{}", self.method.label(), self.h))
    }
}

fn default_trials() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadBenchConfig {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_y")]
    pub y: f64,
    #[serde(default = "default_trials")]
    pub n_trials: usize,
    pub seed: u64,
    pub methods: Vec<BenchMethod>,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

impl QuadBenchConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        quadratic_shape(self.n, self.y)?;
        if self.n_trials == 0 {
            return Err(config_error("n_trials must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(config_error("methods must not be empty"));
        }
        let mut labels = std::collections::HashSet::new();
        for m in &self.methods {
            positive("h", m.h)?;
            nonnegative("gamma", m.gamma)?;
            if !labels.insert(m.label()) {
                return Err(config_error(format!("duplicate method label {}", m.label())));
            }
        }
        positive("tol", self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simulate_config() {
        let cfg = ExperimentConfig::from_json(
            r#"{"kind": "simulate", "system": {"family": "damped_oscillator", "gamma": 0.2, "q0": 10.0},
                "integrator": "leapfrog_a", "h": 0.1, "n_steps": 5}"#,
        )
        .unwrap();
        let ExperimentConfig::Simulate(sim) = cfg else { panic!("wrong kind") };
        assert_eq!(sim.decimation, 1);
        assert_eq!(sim.steps(), 5);
        assert_eq!(sim.xi, 20.0);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let top = r#"{"kind": "simulate", "system": {"family": "damped_oscillator", "gamma": 0.2, "q0": 1.0},
                      "integrator": "leapfrog_a", "h": 0.1, "n_steps": 5, "stepz": 3}"#;
        assert!(matches!(ExperimentConfig::from_json(top), Err(HarnessError::Config(m)) if m.contains("stepz")));
        let nested = r#"{"kind": "simulate", "system": {"family": "damped_oscillator", "gama": 0.2, "q0": 1.0},
                         "integrator": "leapfrog_a", "h": 0.1, "n_steps": 5}"#;
        assert!(ExperimentConfig::from_json(nested).is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = ExperimentConfig::from_json("{\n  \"kind\": \"order\",\n  \"t_max\": ,\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn excitation_requires_flag() {
        let base = |flag: &str| {
            format!(
                r#"{{"kind": "simulate", "system": {{"family": "damped_oscillator", "gamma": -1.0, "q0": 1.0{flag}}},
                    "integrator": "leapfrog_a", "h": 0.1, "t_max": 1.0}}"#
            )
        };
        assert!(ExperimentConfig::from_json(&base("")).is_err());
        assert!(ExperimentConfig::from_json(&base(r#", "allow_excitation": true"#)).is_ok());
    }

    #[test]
    fn order_needs_two_step_sizes() {
        let cfg = r#"{"kind": "order", "system": {"family": "damped_oscillator", "gamma": 0.2, "q0": 10.0},
                      "integrators": ["euler_a"], "h_list": [0.01]}"#;
        assert!(ExperimentConfig::from_json(cfg).is_err());
    }

    #[test]
    fn axis_values_are_inclusive() {
        let axis = Axis { min: 0.0, max: 2.0, steps: 5 };
        assert_eq!(axis.values(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(Axis { min: 0.3, max: 0.3, steps: 1 }.values(), vec![0.3]);
    }

    #[test]
    fn bench_labels_must_be_unique() {
        let cfg = r#"{"kind": "quad_bench", "seed": 1, "methods": [
            {"method": "nesterov", "gamma": 0.7, "h": 0.5}, {"method": "nesterov", "gamma": 0.1, "h": 0.5}]}"#;
        assert!(ExperimentConfig::from_json(cfg).is_err());
    }
}
