use alloc::format;
use alloc::string::String;

#[allow(unused_imports)]
use num_traits::Float;

use super::Integrator;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSystem;
use crate::state::State;

/// Suzuki–Yoshida triple-jump `φ_{τ₀h} ∘ φ_{τ₁h} ∘ φ_{τ₀h}` raising a
/// symmetric base method of even order `2r` to order `2r + 2`.
#[derive(Debug, Clone)]
pub struct SuzukiYoshida<I> {
    base: I,
    tau0: f64,
    tau1: f64,
    order: u32,
    name: String,
}

/// `(κ, τ₀, τ₁)` for a base method of order `base_order = 2r`:
/// `κ^{2r+1} = 2`, `τ₀ = 1/(2 − κ)`, `τ₁ = −κ/(2 − κ)`.
pub fn suzuki_yoshida_coefficients(base_order: u32) -> (f64, f64, f64) {
    let kappa = 2f64.powf(1.0 / f64::from(base_order + 1));
    (kappa, 1.0 / (2.0 - kappa), -kappa / (2.0 - kappa))
}

pub fn compose_suzuki_yoshida<I: Integrator>(base: I) -> Result<SuzukiYoshida<I>> {
    let order = base.order();
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "Suzuki-Yoshida composition needs a symmetric base of even order >= 2, got {} of order {order}",
            base.name()
        )));
    }
    let (_, tau0, tau1) = suzuki_yoshida_coefficients(order);
    let name = if order == 2 { format!("sy4({})", base.name()) } else { format!("sy{}({})", order + 2, base.name()) };
    Ok(SuzukiYoshida { base, tau0, tau1, order: order + 2, name })
}

impl<I> SuzukiYoshida<I> {
    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    pub fn tau1(&self) -> f64 {
        self.tau1
    }

    pub fn base(&self) -> &I {
        &self.base
    }
}

impl<I: Integrator> Integrator for SuzukiYoshida<I> {
    fn step(&self, ham: &dyn HamiltonianSystem, s: &State, h: f64) -> Result<State> {
        let s1 = self.base.step(ham, s, self.tau0 * h)?;
        let s2 = self.base.step(ham, &s1, self.tau1 * h)?;
        let mut out = self.base.step(ham, &s2, self.tau0 * h)?;
        out.t = s.t + h;
        Ok(out)
    }
    fn order(&self) -> u32 {
        self.order
    }
    fn name(&self) -> &str {
        &self.name
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrators::{PresymplecticEulerA, PresymplecticLeapfrogA};

    #[test]
    fn fourth_order_coefficients() {
        let (kappa, tau0, tau1) = suzuki_yoshida_coefficients(2);
        assert!((kappa - 1.2599210498948732).abs() < 1e-15);
        assert!((tau0 - 1.3512071919596578).abs() < 1e-14);
        assert!((tau1 + 1.7024143839193153).abs() < 1e-14);
        assert!((2.0 * tau0 + tau1 - 1.0).abs() <= 1e-15);
        assert!((kappa.powi(3) - 2.0).abs() <= 1e-13);
    }

    #[test]
    fn sixth_order_coefficients() {
        let (kappa, tau0, tau1) = suzuki_yoshida_coefficients(4);
        assert!((kappa.powi(5) - 2.0).abs() <= 1e-13);
        assert!((tau0 - 1.1746717580893634).abs() < 1e-14);
        assert!((2.0 * tau0 + tau1 - 1.0).abs() <= 1e-15);
        let sy6 = compose_suzuki_yoshida(compose_suzuki_yoshida(PresymplecticLeapfrogA::default()).unwrap()).unwrap();
        assert_eq!(sy6.order(), 6);
        assert_eq!(sy6.name(), "sy6(sy4(leapfrog_a))");
    }

    #[test]
    fn odd_order_base_is_rejected() {
        assert!(compose_suzuki_yoshida(PresymplecticEulerA::default()).is_err());
    }
}
