use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A point in the time-extended phase space `(t, q, p)`.
///
/// Time is carried as a coordinate so that integrators update it with the
/// same rule as the positions.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl State {
    /// Builds a state, rejecting mismatched or empty blocks and non-finite entries.
    pub fn new(t: f64, q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if q.len() != p.len() {
            return Err(Error::DimensionMismatch { expected: q.len(), found: p.len() });
        }
        if q.is_empty() {
            return Err(Error::invalid("state dimension must be at least 1"));
        }
        let state = State { t, q, p };
        if !state.is_finite() {
            return Err(Error::NonFinite { context: "state construction", t, state: Some(state) });
        }
        Ok(state)
    }

    /// One-dimensional convenience constructor.
    pub fn scalar(t: f64, q: f64, p: f64) -> Result<Self> {
        Self::new(t, alloc::vec![q], alloc::vec![p])
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.q.iter().chain(&self.p).all(|x| x.is_finite())
    }

    /// Largest absolute componentwise difference in `(t, q, p)`.
    pub fn max_abs_diff(&self, other: &State) -> f64 {
        let mut worst = (self.t - other.t).abs();
        for (a, b) in self.q.iter().zip(&other.q).chain(self.p.iter().zip(&other.p)) {
            worst = worst.max((a - b).abs());
        }
        worst
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.q.len() != dim || self.p.len() != dim {
            let found = if self.q.len() != dim { self.q.len() } else { self.p.len() };
            return Err(Error::DimensionMismatch { expected: dim, found });
        }
        Ok(())
    }
}

pub(crate) mod vecops {
    use alloc::vec::Vec;
    use num_traits::Float;

    pub fn axpy(a: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
        y.iter().zip(x).map(|(yi, xi)| yi + a * xi).collect()
    }

    pub fn dot(x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    pub fn norm(x: &[f64]) -> f64 {
        Float::sqrt(dot(x, x))
    }

    pub fn dist(x: &[f64], y: &[f64]) -> f64 {
        Float::sqrt(x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
    }

    pub fn scale(a: f64, x: &[f64]) -> Vec<f64> {
        x.iter().map(|v| a * v).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_mismatched_blocks() {
        let err = State::new(0.0, vec![1.0, 2.0], vec![0.0]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            State::new(0.0, vec![f64::NAN], vec![0.0]),
            Err(Error::NonFinite { .. })
        ));
        assert!(State::new(f64::INFINITY, vec![1.0], vec![0.0]).is_err());
        assert!(State::new(0.0, vec![], vec![]).is_err());
    }
}
