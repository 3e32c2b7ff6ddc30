use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::potential::Potential;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSystem;
use crate::state::vecops;

/// `H = e^{γt} √(e^{-2γt} c² p·p + m²c⁴) + e^{γt} f(q)`.
///
/// The velocity `∇_p H` is bounded in norm by `c`.
#[derive(Debug, Clone)]
pub struct RelativisticSystem<P> {
    potential: P,
    gamma: f64,
    mass: f64,
    speed: f64,
}

pub fn make_relativistic_system<P: Potential>(potential: P, gamma: f64, mass: f64, speed: f64) -> Result<RelativisticSystem<P>> {
    if !(mass > 0.0 && speed > 0.0 && mass.is_finite() && speed.is_finite() && gamma.is_finite()) {
        return Err(Error::invalid(format!(
            "relativistic system needs m > 0 and c > 0 (got m = {mass}, c = {speed})"
        )));
    }
    Ok(RelativisticSystem { potential, gamma, mass, speed })
}

impl<P: Potential> RelativisticSystem<P> {
    pub fn potential(&self) -> &P {
        &self.potential
    }

    /// `√(e^{-2γt} c² p·p + m²c⁴)`.
    fn root(&self, t: f64, p: &[f64]) -> f64 {
        let c2 = self.speed * self.speed;
        ((-2.0 * self.gamma * t).exp() * c2 * vecops::dot(p, p) + self.mass * self.mass * c2 * c2).sqrt()
    }
}

impl<P: Potential> HamiltonianSystem for RelativisticSystem<P> {
    fn dim(&self) -> usize {
        self.potential.dim()
    }

    fn eval(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        (self.gamma * t).exp() * (self.root(t, p) + self.potential.value(q))
    }

    fn grad_q(&self, t: f64, q: &[f64], _p: &[f64]) -> Vec<f64> {
        vecops::scale((self.gamma * t).exp(), &self.potential.grad(q))
    }

    fn grad_p(&self, t: f64, _q: &[f64], p: &[f64]) -> Vec<f64> {
        let c2 = self.speed * self.speed;
        vecops::scale((-self.gamma * t).exp() * c2 / self.root(t, p), p)
    }

    fn dh_dt(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        let c2 = self.speed * self.speed;
        let root = self.root(t, p);
        self.gamma * self.eval(t, q, p) - self.gamma * (-self.gamma * t).exp() * c2 * vecops::dot(p, p) / root
    }

    fn separable(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::grad_check;
    use crate::problems::QuadraticPotential;
    use crate::rng;
    use crate::state::State;
    use alloc::vec;

    #[test]
    fn rest_energy_at_zero_momentum() {
        let sys = make_relativistic_system(QuadraticPotential::isotropic(2), 0.3, 1.0, 5.0).unwrap();
        let (t, q) = (0.7, [1.0, -2.0]);
        let expected = (0.3f64 * t).exp() * (25.0 + 2.5);
        assert!((sys.eval(t, &q, &[0.0, 0.0]) - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn velocity_bounded_by_speed_of_light() {
        let sys = make_relativistic_system(QuadraticPotential::isotropic(3), 0.1, 1.0, 5.0).unwrap();
        let mut rng = rng::seeded(42, 0);
        for k in 0..1000 {
            let dir = rng::standard_normals(&mut rng, 3);
            let target = 10f64.powf(6.0 * k as f64 / 999.0);
            let p = vecops::scale(target / vecops::norm(&dir), &dir);
            let v = vecops::norm(&sys.grad_p(0.5 * k as f64 / 100.0, &[0.0; 3], &p));
            assert!(v < 5.0, "speed {v} at |p| = {target}");
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let sys = make_relativistic_system(QuadraticPotential::isotropic(2), 0.2, 1.0, 5.0).unwrap();
        let s = State::new(0.0, vec![1.0, 2.0], vec![0.3, -0.1]).unwrap();
        assert!(grad_check(&sys, &s, 1e-5).unwrap() <= 1e-6);
    }

    #[test]
    fn constructor_validation() {
        // m = 1, c = 5, and γ from μ = e^{-γh/2} = 0.99 at h = 2.8e-2.
        let gamma = -2.0 * 0.99f64.ln() / 2.8e-2;
        assert!(make_relativistic_system(QuadraticPotential::isotropic(1), gamma, 1.0, 5.0).is_ok());
        assert!(make_relativistic_system(QuadraticPotential::isotropic(1), 0.1, 0.0, 5.0).is_err());
        assert!(make_relativistic_system(QuadraticPotential::isotropic(1), 0.1, 1.0, -1.0).is_err());
    }
}
