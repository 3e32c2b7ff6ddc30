//! Scaling functions `(α, β, γ)` of the Bregman Hamiltonian.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::schedule::Damping;

/// Time-dependent scaling functions with analytic derivatives.
pub trait Scaling: Send + Sync {
    fn alpha(&self, t: f64) -> f64;
    fn alpha_dot(&self, t: f64) -> f64;
    fn beta(&self, t: f64) -> f64;
    fn beta_dot(&self, t: f64) -> f64;
    fn gamma(&self, t: f64) -> f64;
    fn gamma_dot(&self, t: f64) -> f64;

    /// Whether `t` lies inside the domain where the functions are defined.
    fn in_domain(&self, _t: f64) -> bool {
        true
    }
}

/// Built-in scaling presets.
///
/// * `Polynomial { c, t0, offset }`: `α = log c − log(t+t0)`,
///   `β = c log(t+t0) + offset`, `γ = c log(t+t0)`; rate `O(t^{-c})`.
/// * `Exponential { c, offset }`: `α = log c`, `β = c t`, `γ = c t + offset`;
///   rate `O(e^{-c t})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalingTriple {
    Polynomial { c: f64, t0: f64, offset: f64 },
    Exponential { c: f64, offset: f64 },
}

impl ScalingTriple {
    pub fn polynomial(c: f64) -> Self {
        ScalingTriple::Polynomial { c, t0: 1.0, offset: 0.0 }
    }

    pub fn exponential(c: f64) -> Self {
        ScalingTriple::Exponential { c, offset: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ScalingTriple::Polynomial { c, t0, offset } => {
                c > 0.0 && c.is_finite() && t0 >= 0.0 && t0.is_finite() && offset.is_finite()
            }
            ScalingTriple::Exponential { c, offset } => c > 0.0 && c.is_finite() && offset.is_finite(),
        };
        if ok { Ok(()) } else { Err(Error::invalid(alloc::format!("invalid scaling {self:?}"))) }
    }

    /// `η₁ = γ − α`, the kinetic damping of the quadratic-generator reduction.
    pub fn kinetic_damping(self) -> KineticDamping<Self> {
        KineticDamping(self)
    }

    /// `η₂ = α + β + γ`, the potential damping of the quadratic-generator reduction.
    pub fn potential_damping(self) -> PotentialDamping<Self> {
        PotentialDamping(self)
    }
}

impl Scaling for ScalingTriple {
    fn alpha(&self, t: f64) -> f64 {
        match *self {
            ScalingTriple::Polynomial { c, t0, .. } => c.ln() - (t + t0).ln(),
            ScalingTriple::Exponential { c, .. } => c.ln(),
        }
    }
    fn alpha_dot(&self, t: f64) -> f64 {
        match *self {
            ScalingTriple::Polynomial { t0, .. } => -1.0 / (t + t0),
            ScalingTriple::Exponential { .. } => 0.0,
        }
    }
    fn beta(&self, t: f64) -> f64 {
        match *self {
            ScalingTriple::Polynomial { c, t0, offset } => c * (t + t0).ln() + offset,
            ScalingTriple::Exponential { c, .. } => c * t,
        }
    }
    fn beta_dot(&self, t: f64) -> f64 {
        match *self {
            ScalingTriple::Polynomial { c, t0, .. } => c / (t + t0),
            ScalingTriple::Exponential { c, .. } => c,
        }
    }
    fn gamma(&self, t: f64) -> f64 {
        match *self {
            ScalingTriple::Polynomial { c, t0, .. } => c * (t + t0).ln(),
            ScalingTriple::Exponential { c, offset } => c * t + offset,
        }
    }
    fn gamma_dot(&self, t: f64) -> f64 {
        self.beta_dot(t)
    }
    fn in_domain(&self, t: f64) -> bool {
        match *self {
            ScalingTriple::Polynomial { t0, .. } => t + t0 > 0.0,
            ScalingTriple::Exponential { .. } => t.is_finite(),
        }
    }
}

/// `η₁ = γ − α` viewed as a damping schedule.
#[derive(Debug, Clone, Copy)]
pub struct KineticDamping<S>(pub S);

/// `η₂ = α + β + γ` viewed as a damping schedule.
#[derive(Debug, Clone, Copy)]
pub struct PotentialDamping<S>(pub S);

impl<S: Scaling> Damping for KineticDamping<S> {
    fn eta(&self, t: f64) -> f64 {
        self.0.gamma(t) - self.0.alpha(t)
    }
    fn eta_dot(&self, t: f64) -> f64 {
        self.0.gamma_dot(t) - self.0.alpha_dot(t)
    }
}

impl<S: Scaling> Damping for PotentialDamping<S> {
    fn eta(&self, t: f64) -> f64 {
        self.0.alpha(t) + self.0.beta(t) + self.0.gamma(t)
    }
    fn eta_dot(&self, t: f64) -> f64 {
        self.0.alpha_dot(t) + self.0.beta_dot(t) + self.0.gamma_dot(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingReport {
    pub ok: bool,
    /// Largest amount by which either scaling condition is exceeded (0 when none is).
    pub worst_violation: f64,
}

/// Checks `β̇ ≤ e^α` and `γ̇ = e^α` on every point of `t_grid`.
pub fn validate_scaling<S: Scaling + ?Sized>(scaling: &S, t_grid: &[f64]) -> Result<ScalingReport> {
    if t_grid.is_empty() {
        return Err(Error::invalid("scaling validation grid is empty"));
    }
    let mut ok = true;
    let mut worst = 0.0f64;
    for &t in t_grid {
        if !scaling.in_domain(t) {
            return Err(Error::Domain(alloc::format!("t = {t}")));
        }
        let ea = scaling.alpha(t).exp();
        let beta_excess = scaling.beta_dot(t) - ea;
        let gamma_gap = (scaling.gamma_dot(t) - ea).abs();
        if beta_excess > 1e-9 || gamma_gap > 1e-9 * (1.0 + ea) {
            ok = false;
        }
        worst = worst.max(beta_excess).max(gamma_gap);
    }
    Ok(ScalingReport { ok, worst_violation: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A triple whose `β̇` is twice `e^α`.
    struct Violating;
    impl Scaling for Violating {
        fn alpha(&self, _: f64) -> f64 { 0.0 }
        fn alpha_dot(&self, _: f64) -> f64 { 0.0 }
        fn beta(&self, t: f64) -> f64 { 2.0 * t }
        fn beta_dot(&self, _: f64) -> f64 { 2.0 }
        fn gamma(&self, t: f64) -> f64 { t }
        fn gamma_dot(&self, _: f64) -> f64 { 1.0 }
    }

    #[test]
    fn presets_satisfy_scaling_conditions() {
        let poly = ScalingTriple::Polynomial { c: 2.0, t0: 0.0, offset: 0.0 };
        assert!(validate_scaling(&poly, &[1.0, 2.0, 5.0, 10.0]).unwrap().ok);
        assert!(validate_scaling(&ScalingTriple::polynomial(3.0), &[0.0, 1.0, 40.0]).unwrap().ok);
        assert!(validate_scaling(&ScalingTriple::exponential(1.0), &[0.0, 1.0, 5.0]).unwrap().ok);
    }

    #[test]
    fn detects_violation() {
        let report = validate_scaling(&Violating, &[0.0, 1.0]).unwrap();
        assert!(!report.ok);
        assert!(report.worst_violation > 0.0);
    }

    #[test]
    fn empty_grid_and_domain_errors() {
        assert!(validate_scaling(&ScalingTriple::exponential(1.0), &[]).is_err());
        let poly = ScalingTriple::Polynomial { c: 2.0, t0: 0.0, offset: 0.0 };
        assert!(matches!(validate_scaling(&poly, &[0.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn derivatives_match_central_differences() {
        let eps = 1e-5;
        let triples = [
            ScalingTriple::Polynomial { c: 2.0, t0: 1.0, offset: 0.3 },
            ScalingTriple::Exponential { c: 0.7, offset: -1.0 },
        ];
        for sc in triples {
            for t in [0.5, 1.0, 3.0, 17.0] {
                let fd = |f: &dyn Fn(f64) -> f64| (f(t + eps) - f(t - eps)) / (2.0 * eps);
                let pairs = [
                    (fd(&|s| sc.alpha(s)), sc.alpha_dot(t)),
                    (fd(&|s| sc.beta(s)), sc.beta_dot(t)),
                    (fd(&|s| sc.gamma(s)), sc.gamma_dot(t)),
                    (fd(&|s| sc.kinetic_damping().eta(s)), sc.kinetic_damping().eta_dot(t)),
                    (fd(&|s| sc.potential_damping().eta(s)), sc.potential_damping().eta_dot(t)),
                ];
                for (approx, exact) in pairs {
                    assert!((approx - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "{sc:?} at {t}");
                }
            }
        }
    }
}
