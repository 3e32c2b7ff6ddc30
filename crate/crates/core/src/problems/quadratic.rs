use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;

use super::potential::{Potential, QuadraticPotential};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSystem;
use crate::schedule::{Damping, DampingSchedule};
use crate::state::vecops;

/// `H = ½ e^{-η₁(t)} p·M⁻¹p + e^{η₂(t)} f(q)`.
///
/// Equations of motion: `q̇ = e^{-η₁} M⁻¹p`, `ṗ = −e^{η₂} ∇f(q)`.
#[derive(Debug, Clone)]
pub struct QuadraticKineticSystem<D1, D2, P> {
    eta1: D1,
    eta2: D2,
    potential: P,
    /// `None` means unit mass.
    mass_inv: Option<DMatrix<f64>>,
}

/// Builds the quadratic-kinetic system; `mass` must be symmetric positive definite.
pub fn make_quadratic_system<D1, D2, P>(
    mass: &DMatrix<f64>,
    eta1: D1,
    eta2: D2,
    potential: P,
) -> Result<QuadraticKineticSystem<D1, D2, P>>
where
    D1: Damping,
    D2: Damping,
    P: Potential,
{
    let n = potential.dim();
    if mass.nrows() != n || mass.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: mass.nrows() });
    }
    if (mass - mass.transpose()).amax() > 1e-12 * mass.amax().max(1.0) {
        return Err(Error::invalid("mass matrix is not symmetric"));
    }
    let mass_inv = if *mass == DMatrix::identity(n, n) {
        None
    } else {
        let chol = mass
            .clone()
            .cholesky()
            .ok_or_else(|| Error::invalid("mass matrix is not positive definite"))?;
        Some(chol.inverse())
    };
    Ok(QuadraticKineticSystem { eta1, eta2, potential, mass_inv })
}

impl<D1: Damping, D2: Damping, P: Potential> QuadraticKineticSystem<D1, D2, P> {
    pub fn unit_mass(eta1: D1, eta2: D2, potential: P) -> Self {
        QuadraticKineticSystem { eta1, eta2, potential, mass_inv: None }
    }

    pub fn eta1(&self) -> &D1 {
        &self.eta1
    }

    pub fn eta2(&self) -> &D2 {
        &self.eta2
    }

    pub fn potential(&self) -> &P {
        &self.potential
    }

    pub fn mass_inverse(&self) -> Option<&DMatrix<f64>> {
        self.mass_inv.as_ref()
    }

    fn apply_mass_inv(&self, p: &[f64]) -> Vec<f64> {
        match &self.mass_inv {
            None => p.to_vec(),
            Some(m) => (m * DVector::from_column_slice(p)).as_slice().to_vec(),
        }
    }

    fn kinetic(&self, p: &[f64]) -> f64 {
        0.5 * vecops::dot(p, &self.apply_mass_inv(p))
    }
}

impl<D1: Damping, D2: Damping, P: Potential> HamiltonianSystem for QuadraticKineticSystem<D1, D2, P> {
    fn dim(&self) -> usize {
        self.potential.dim()
    }

    fn eval(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        (-self.eta1.eta(t)).exp() * self.kinetic(p) + self.eta2.eta(t).exp() * self.potential.value(q)
    }

    fn grad_q(&self, t: f64, q: &[f64], _p: &[f64]) -> Vec<f64> {
        vecops::scale(self.eta2.eta(t).exp(), &self.potential.grad(q))
    }

    fn grad_p(&self, t: f64, _q: &[f64], p: &[f64]) -> Vec<f64> {
        vecops::scale((-self.eta1.eta(t)).exp(), &self.apply_mass_inv(p))
    }

    fn dh_dt(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        -self.eta1.eta_dot(t) * (-self.eta1.eta(t)).exp() * self.kinetic(p)
            + self.eta2.eta_dot(t) * self.eta2.eta(t).exp() * self.potential.value(q)
    }

    fn separable(&self) -> bool {
        true
    }
}

/// The 1-D oscillator `½e^{-η}p² + e^{η}½q²` with `η₁ = η₂ = η`.
///
/// `Linear(γ)` gives `q̈ + γq̇ + q = 0` and `Logarithmic(γ)` gives
/// `q̈ + γ/(t+1) q̇ + q = 0`.
pub fn harmonic_oscillator(
    eta: DampingSchedule,
) -> QuadraticKineticSystem<DampingSchedule, DampingSchedule, QuadraticPotential> {
    QuadraticKineticSystem::unit_mass(eta, eta, QuadraticPotential::isotropic(1))
}
