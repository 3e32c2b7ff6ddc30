use alloc::vec::Vec;

use crate::state::State;

/// Time-ordered states with per-state diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<State>,
    /// `H(t, q, p)` at every state.
    pub ham_values: Vec<f64>,
    /// `‖∇f(q)‖` at every state when a potential was attached.
    pub grad_norms: Option<Vec<f64>>,
    /// Spacing between consecutive recorded states.
    pub step_size: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> Option<&State> {
        self.states.last()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(|s| s.t)
    }
}
