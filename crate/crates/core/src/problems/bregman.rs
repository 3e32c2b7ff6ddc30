use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;

use super::potential::Potential;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSystem;
use crate::scaling::Scaling;
use crate::state::vecops;

/// A convex function `h` with its gradient, Hessian, and the gradient of its
/// Legendre dual `h*`.
///
/// The dual gradient must be supplied in closed form; no numerical
/// inversion is attempted.
pub trait ConvexGenerator: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;
    fn grad(&self, x: &[f64]) -> Vec<f64>;
    fn grad_star(&self, y: &[f64]) -> Vec<f64>;
    fn hess(&self, x: &[f64]) -> DMatrix<f64>;

    /// `h*(y) = ⟨y, ∇h*(y)⟩ − h(∇h*(y))`.
    fn value_star(&self, y: &[f64]) -> f64 {
        let x = self.grad_star(y);
        vecops::dot(y, &x) - self.value(&x)
    }
}

/// `h(x) = ½ x·Mx` with `M` symmetric positive definite, so `∇h*(y) = M⁻¹y`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticGenerator {
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

impl QuadraticGenerator {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::invalid("generator matrix must be nonempty and square"));
        }
        if (&matrix - matrix.transpose()).amax() > 1e-12 * matrix.amax().max(1.0) {
            return Err(Error::invalid("generator matrix is not symmetric"));
        }
        let inverse = matrix
            .clone()
            .cholesky()
            .ok_or_else(|| Error::invalid("generator matrix is not positive definite"))?
            .inverse();
        Ok(QuadraticGenerator { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        QuadraticGenerator { matrix: DMatrix::identity(n, n), inverse: DMatrix::identity(n, n) }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

fn mat_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(x)).as_slice().to_vec()
}

impl ConvexGenerator for QuadraticGenerator {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }
    fn value(&self, x: &[f64]) -> f64 {
        0.5 * vecops::dot(x, &mat_vec(&self.matrix, x))
    }
    fn grad(&self, x: &[f64]) -> Vec<f64> {
        mat_vec(&self.matrix, x)
    }
    fn grad_star(&self, y: &[f64]) -> Vec<f64> {
        mat_vec(&self.inverse, y)
    }
    fn hess(&self, _x: &[f64]) -> DMatrix<f64> {
        self.matrix.clone()
    }
    fn value_star(&self, y: &[f64]) -> f64 {
        0.5 * vecops::dot(y, &mat_vec(&self.inverse, y))
    }
}

/// The Bregman Hamiltonian
/// `H = e^{α+γ} { D_{h*}(∇h(q) + e^{-γ}p, ∇h(q)) + e^{β} f(q) }`.
///
/// Gradients implement the Bregman equations of motion directly:
/// `∇_p H = e^{α} (∇h*(y) − q)` and
/// `∇_q H = e^{α+γ} ∇²h(q)(∇h*(y) − q) − e^{α} p + e^{α+β+γ} ∇f(q)`,
/// with `y = ∇h(q) + e^{-γ}p`.
#[derive(Debug, Clone)]
pub struct BregmanSystem<G, P, S> {
    generator: G,
    potential: P,
    scaling: S,
}

pub fn make_bregman_system<G, P, S>(generator: G, potential: P, scaling: S) -> Result<BregmanSystem<G, P, S>>
where
    G: ConvexGenerator,
    P: Potential,
    S: Scaling,
{
    let n = potential.dim();
    if generator.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: generator.dim() });
    }
    for x in super::probe_points(n, 16, 2.0) {
        let back = generator.grad_star(&generator.grad(&x));
        if vecops::dist(&back, &x) > 1e-8 * (1.0 + vecops::norm(&x)) {
            return Err(Error::invalid("generator fails the Legendre duality round trip"));
        }
    }
    Ok(BregmanSystem { generator, potential, scaling })
}

impl<G: ConvexGenerator, P: Potential, S: Scaling> BregmanSystem<G, P, S> {
    pub fn potential(&self) -> &P {
        &self.potential
    }

    pub fn scaling(&self) -> &S {
        &self.scaling
    }

    pub fn generator(&self) -> &G {
        &self.generator
    }

    /// Returns `(y, ∇h*(y) − q)`.
    fn shifted(&self, t: f64, q: &[f64], p: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let y = vecops::axpy((-self.scaling.gamma(t)).exp(), p, &self.generator.grad(q));
        let mut v = self.generator.grad_star(&y);
        v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= qi);
        (y, v)
    }

    /// `D_{h*}(y, ∇h(q))` using `∇h*(∇h(q)) = q`.
    fn divergence(&self, q: &[f64], y: &[f64], x: &[f64]) -> f64 {
        let diff: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        self.generator.value_star(y) - self.generator.value_star(x) - vecops::dot(q, &diff)
    }
}

impl<G: ConvexGenerator, P: Potential, S: Scaling> HamiltonianSystem for BregmanSystem<G, P, S> {
    fn dim(&self) -> usize {
        self.potential.dim()
    }

    fn eval(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        let sc = &self.scaling;
        let x = self.generator.grad(q);
        let (y, _) = self.shifted(t, q, p);
        let kinetic = self.divergence(q, &y, &x);
        (sc.alpha(t) + sc.gamma(t)).exp() * (kinetic + sc.beta(t).exp() * self.potential.value(q))
    }

    fn grad_q(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64> {
        let sc = &self.scaling;
        let (a, b, g) = (sc.alpha(t), sc.beta(t), sc.gamma(t));
        let (_, v) = self.shifted(t, q, p);
        let hv = mat_vec(&self.generator.hess(q), &v);
        let grad_f = self.potential.grad(q);
        let (c_hess, c_p, c_f) = ((a + g).exp(), a.exp(), (a + b + g).exp());
        hv.iter()
            .zip(p)
            .zip(&grad_f)
            .map(|((hvi, pi), gi)| c_hess * hvi - c_p * pi + c_f * gi)
            .collect()
    }

    fn grad_p(&self, t: f64, q: &[f64], p: &[f64]) -> Vec<f64> {
        let (_, v) = self.shifted(t, q, p);
        vecops::scale(self.scaling.alpha(t).exp(), &v)
    }

    fn dh_dt(&self, t: f64, q: &[f64], p: &[f64]) -> f64 {
        let sc = &self.scaling;
        let (a, b, g) = (sc.alpha(t), sc.beta(t), sc.gamma(t));
        let x = self.generator.grad(q);
        let (y, v) = self.shifted(t, q, p);
        let kinetic = self.divergence(q, &y, &x);
        let f = self.potential.value(q);
        let prefactor = (a + g).exp();
        let d_kinetic = -sc.gamma_dot(t) * (-g).exp() * vecops::dot(&v, p);
        (sc.alpha_dot(t) + sc.gamma_dot(t)) * prefactor * (kinetic + b.exp() * f)
            + prefactor * (d_kinetic + sc.beta_dot(t) * b.exp() * f)
    }

    fn separable(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::grad_check;
    use crate::problems::{QuadraticPotential, make_quadratic_system};
    use crate::scaling::ScalingTriple;
    use crate::state::State;
    use alloc::vec;

    /// Strictly convex non-quadratic generator `h(x) = Σ cosh(x_i)`.
    struct CoshGenerator(usize);
    impl ConvexGenerator for CoshGenerator {
        fn dim(&self) -> usize { self.0 }
        fn value(&self, x: &[f64]) -> f64 { x.iter().map(|v| v.cosh()).sum() }
        fn grad(&self, x: &[f64]) -> Vec<f64> { x.iter().map(|v| v.sinh()).collect() }
        fn grad_star(&self, y: &[f64]) -> Vec<f64> { y.iter().map(|v| v.asinh()).collect() }
        fn hess(&self, x: &[f64]) -> DMatrix<f64> {
            DMatrix::from_diagonal(&DVector::from_iterator(x.len(), x.iter().map(|v| v.cosh())))
        }
    }

    /// A generator whose dual gradient is wrong.
    struct BrokenGenerator;
    impl ConvexGenerator for BrokenGenerator {
        fn dim(&self) -> usize { 2 }
        fn value(&self, x: &[f64]) -> f64 { vecops::dot(x, x) }
        fn grad(&self, x: &[f64]) -> Vec<f64> { vecops::scale(2.0, x) }
        fn grad_star(&self, y: &[f64]) -> Vec<f64> { y.to_vec() }
        fn hess(&self, _: &[f64]) -> DMatrix<f64> { DMatrix::identity(2, 2) * 2.0 }
    }

    #[test]
    fn zero_momentum_leaves_only_potential() {
        let sc = ScalingTriple::polynomial(2.0);
        let sys = make_bregman_system(QuadraticGenerator::identity(2), QuadraticPotential::isotropic(2), sc).unwrap();
        let (t, q) = (1.5, [0.7, -0.3]);
        let expected = (sc.alpha(t) + sc.beta(t) + sc.gamma(t)).exp() * 0.5 * (0.49 + 0.09);
        let got = sys.eval(t, &q, &[0.0, 0.0]);
        assert!((got - expected).abs() <= 1e-14 * expected.abs());
    }

    #[test]
    fn non_quadratic_generator_gradients() {
        let sys = make_bregman_system(CoshGenerator(2), QuadraticPotential::isotropic(2), ScalingTriple::polynomial(2.0))
            .unwrap();
        let s = State::new(0.8, vec![0.3, -0.6], vec![0.9, 0.2]).unwrap();
        assert!(grad_check(&sys, &s, 1e-5).unwrap() < 1e-6);
    }

    #[test]
    fn rejects_generator_without_valid_dual() {
        let err = make_bregman_system(BrokenGenerator, QuadraticPotential::isotropic(2), ScalingTriple::exponential(1.0));
        assert!(err.is_err());
    }

    #[test]
    fn quadratic_generator_reduces_to_mass_matrix_system() {
        let mass = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
        let sc = ScalingTriple::Polynomial { c: 2.0, t0: 1.0, offset: 0.4 };
        let f = QuadraticPotential::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.2, 0.2, 0.5])).unwrap();
        let breg = make_bregman_system(QuadraticGenerator::new(mass.clone()).unwrap(), f.clone(), sc).unwrap();
        let reduced = make_quadratic_system(&mass, sc.kinetic_damping(), sc.potential_damping(), f).unwrap();
        let (t, q, p) = (2.5, [0.4, -1.1], [0.6, 0.35]);
        for (a, b) in breg.grad_q(t, &q, &p).iter().zip(reduced.grad_q(t, &q, &p)) {
            assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
        for (a, b) in breg.grad_p(t, &q, &p).iter().zip(reduced.grad_p(t, &q, &p)) {
            assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
        let (hb, hr) = (breg.eval(t, &q, &p), reduced.eval(t, &q, &p));
        assert!((hb - hr).abs() <= 1e-10 * (1.0 + hr.abs()));
    }
}
