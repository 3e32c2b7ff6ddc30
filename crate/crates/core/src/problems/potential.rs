use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::rng;

/// An objective `f(q)` with analytic gradient.
pub trait Potential: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, q: &[f64]) -> f64;
    fn grad(&self, q: &[f64]) -> Vec<f64>;
    /// The minimizer `q*` and `f(q*)`, when known.
    fn minimum(&self) -> Option<(Vec<f64>, f64)> {
        None
    }
}

macro_rules! forward_potential {
    ($($ty:ty),*) => {$(
        impl<P: Potential + ?Sized> Potential for $ty {
            fn dim(&self) -> usize { (**self).dim() }
            fn value(&self, q: &[f64]) -> f64 { (**self).value(q) }
            fn grad(&self, q: &[f64]) -> Vec<f64> { (**self).grad(q) }
            fn minimum(&self) -> Option<(Vec<f64>, f64)> { (**self).minimum() }
        }
    )*};
}
forward_potential!(&P, alloc::boxed::Box<P>, Arc<P>);

/// `f(q) = ½ q·Mq` for a symmetric positive semidefinite `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPotential {
    matrix: DMatrix<f64>,
    diagonal: Option<Vec<f64>>,
    rank: Option<usize>,
}

impl QuadraticPotential {
    /// Dense quadratic; `matrix` must be square and symmetric. Semidefiniteness
    /// is the caller's responsibility (the reported minimizer assumes it).
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::invalid("quadratic potential needs a nonempty square matrix"));
        }
        let scale = matrix.amax().max(1.0);
        if (&matrix - matrix.transpose()).amax() > 1e-12 * scale {
            return Err(Error::invalid("quadratic potential matrix is not symmetric"));
        }
        Ok(QuadraticPotential { matrix, diagonal: None, rank: None })
    }

    pub fn diagonal(diag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || diag.iter().any(|d| !d.is_finite()) {
            return Err(Error::invalid("diagonal quadratic needs finite entries"));
        }
        let matrix = DMatrix::from_diagonal(&DVector::from_column_slice(&diag));
        Ok(QuadraticPotential { matrix, diagonal: Some(diag), rank: None })
    }

    /// `½‖q‖²` in `n` dimensions.
    pub fn isotropic(n: usize) -> Self {
        Self::diagonal(vec![1.0; n.max(1)]).expect("unit diagonal is valid")
    }

    /// Diagonal quadratic whose `n` eigenvalues are geometrically spaced in
    /// `[lambda_min, lambda_max]`.
    pub fn log_spectrum(n: usize, lambda_min: f64, lambda_max: f64) -> Result<Self> {
        if n < 2 || !(lambda_min > 0.0 && lambda_max > lambda_min) {
            return Err(Error::invalid("log spectrum needs n >= 2 and 0 < lambda_min < lambda_max"));
        }
        let ratio = lambda_max / lambda_min;
        let diag = (0..n)
            .map(|i| lambda_min * num_traits::Float::powf(ratio, i as f64 / (n - 1) as f64))
            .collect();
        Self::diagonal(diag)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Rank of `M` when it is known by construction.
    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    fn apply(&self, q: &[f64]) -> Vec<f64> {
        match &self.diagonal {
            Some(d) => d.iter().zip(q).map(|(a, b)| a * b).collect(),
            None => (&self.matrix * DVector::from_column_slice(q)).data.into(),
        }
    }
}

impl Potential for QuadraticPotential {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }
    fn value(&self, q: &[f64]) -> f64 {
        0.5 * crate::state::vecops::dot(q, &self.apply(q))
    }
    fn grad(&self, q: &[f64]) -> Vec<f64> {
        self.apply(q)
    }
    fn minimum(&self) -> Option<(Vec<f64>, f64)> {
        Some((vec![0.0; self.dim()], 0.0))
    }
}

/// Random quadratic `½ q·Mq` with `M = AᵀA / n`, `A` an `r × n` standard
/// normal matrix and `r = round(y n)`.
///
/// The spectrum of `M` follows the Marchenko–Pastur law with ratio `y`;
/// `M` has rank `r`.
pub fn make_random_quadratic(n: usize, y: f64, seed: u64) -> Result<QuadraticPotential> {
    if n < 2 {
        return Err(Error::invalid("random quadratic needs n >= 2"));
    }
    if !(y > 0.0 && y <= 1.0) {
        return Err(Error::invalid(format!("aspect ratio y = {y} must lie in (0, 1]")));
    }
    let r = num_traits::Float::round(y * n as f64) as usize;
    if r == 0 {
        return Err(Error::invalid("random quadratic rank rounds to zero"));
    }
    let mut rng = rng::seeded(seed, 0);
    let a = DMatrix::from_row_slice(r, n, &rng::standard_normals(&mut rng, r * n));
    let mut m = a.tr_mul(&a) / n as f64;
    // Exact symmetry; the product is symmetric only up to round-off.
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    Ok(QuadraticPotential { matrix: m, diagonal: None, rank: Some(r) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_matches_finite_differences() {
        let f = make_random_quadratic(6, 0.5, 3).unwrap();
        let q = [0.3, -1.0, 2.0, 0.1, 0.0, -0.7];
        let g = f.grad(&q);
        let eps = 1e-6;
        for i in 0..6 {
            let mut a = q;
            let mut b = q;
            a[i] += eps;
            b[i] -= eps;
            let fd = (f.value(&a) - f.value(&b)) / (2.0 * eps);
            assert!((fd - g[i]).abs() <= 1e-6 * (1.0 + g[i].abs()));
        }
    }

    #[test]
    fn random_quadratic_is_deterministic_and_symmetric() {
        let a = make_random_quadratic(30, 0.8, 11).unwrap();
        let b = make_random_quadratic(30, 0.8, 11).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, make_random_quadratic(30, 0.8, 12).unwrap());
        assert_eq!((a.matrix() - a.matrix().transpose()).amax(), 0.0);
        assert_eq!(a.rank(), Some(24));
    }

    #[test]
    fn rejects_invalid_ratio() {
        assert!(make_random_quadratic(10, 0.0, 1).is_err());
        assert!(make_random_quadratic(10, 1.5, 1).is_err());
        assert!(make_random_quadratic(1, 0.5, 1).is_err());
    }

    #[test]
    fn log_spectrum_endpoints() {
        let f = QuadraticPotential::log_spectrum(5, 1e-4, 1.0).unwrap();
        let d = f.matrix().diagonal();
        assert!((d[0] - 1e-4).abs() < 1e-18);
        assert!((d[4] - 1.0).abs() < 1e-15);
        assert!((d[2] - 1e-2).abs() < 1e-15);
    }
}
