use alloc::boxed::Box;
use alloc::string::String;

use thiserror::Error;

use crate::state::State;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {context} at t = {t}")]
    NonFinite { context: &'static str, t: f64, state: Option<State> },

    #[error("exponential overflow in {context}; use the rescaled momentum formulation")]
    Overflow { context: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("fixed-point iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("integration failed at step {step}: {reason}")]
    Integration { step: usize, reason: String, last: State },

    #[error("time grids do not align: reference t = {reference}, numeric t = {numeric}")]
    GridMismatch { reference: f64, numeric: f64 },

    #[error("run with h = {h} failed: {cause}")]
    StepSizeRun { h: f64, cause: Box<Error> },

    #[error("{0} is outside the supported domain")]
    Domain(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
