use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::state::vecops;

/// Settings for the fixed-point sub-steps of nonseparable methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitSolver {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ImplicitSolver {
    fn default() -> Self {
        ImplicitSolver { tol: 1e-12, max_iter: 50 }
    }
}

impl ImplicitSolver {
    pub fn solve(&self, map: impl FnMut(&[f64]) -> Vec<f64>, guess: Vec<f64>) -> Result<Vec<f64>> {
        solve_implicit(map, guess, self.tol, self.max_iter).map(|fp| fp.x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub x: Vec<f64>,
    pub iterations: usize,
}

/// Plain fixed-point iteration `x ← map(x)` from `guess`.
///
/// Stops once `‖x_{k+1} − x_k‖ ≤ tol · max(1, ‖x_{k+1}‖)`.
pub fn solve_implicit(
    mut map: impl FnMut(&[f64]) -> Vec<f64>,
    guess: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<FixedPoint> {
    if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
        return Err(Error::invalid("fixed-point solver needs tol > 0 and max_iter >= 1"));
    }
    let mut x = guess;
    let mut residual = f64::INFINITY;
    for iterations in 1..=max_iter {
        let next = map(&x);
        residual = vecops::dist(&next, &x);
        if !residual.is_finite() {
            break;
        }
        let converged = residual <= tol * vecops::norm(&next).max(1.0);
        x = next;
        if converged {
            return Ok(FixedPoint { x, iterations });
        }
    }
    Err(Error::NonConvergence { iterations: max_iter, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn satisfied_guess_returns_immediately() {
        let fp = solve_implicit(|x| x.to_vec(), vec![3.0, -1.0], 1e-12, 50).unwrap();
        assert_eq!(fp.iterations, 1);
        assert_eq!(fp.x, vec![3.0, -1.0]);
    }

    #[test]
    fn linear_contraction_converges() {
        let fp = solve_implicit(|x| vec![0.5 * x[0] + 1.0], vec![0.0], 1e-12, 50).unwrap();
        assert!((fp.x[0] - 2.0).abs() < 1e-11);
        assert!(fp.iterations <= 50);
    }

    #[test]
    fn expansion_fails() {
        let err = solve_implicit(|x| vec![2.0 * x[0] + 1.0], vec![0.0], 1e-12, 50).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
        assert!(solve_implicit(|x| x.to_vec(), vec![0.0], 0.0, 50).is_err());
    }
}
