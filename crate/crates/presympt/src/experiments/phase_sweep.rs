use rayon::prelude::*;

use presympt_core::integrators::MomentumRule;
use presympt_core::optimize::{Method, RunOptions, minimize};
use presympt_core::problems::make_random_quadratic;
use presympt_core::rng;

use crate::HarnessError;
use crate::config::{MethodName, PhaseSweepConfig};
use crate::table::{Table, fmt_float};

/// Values above this are reported as this value.
pub const CLAMP: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCell {
    pub gamma: f64,
    pub h: f64,
    pub method: MethodName,
    /// `min(final ‖∇f‖, 1)`; diverged runs report 1.
    pub clamped_grad_norm: f64,
    pub iterations_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSweepResult {
    pub cells: Vec<PhaseCell>,
}

impl PhaseSweepResult {
    pub fn cell(&self, method: MethodName, gamma: f64, h: f64) -> Option<&PhaseCell> {
        self.cells.iter().find(|c| c.method == method && c.gamma == gamma && c.h == h)
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(["gamma", "h", "method", "clamped_grad_norm", "iterations_used"]);
        for c in &self.cells {
            table.push(vec![
                fmt_float(c.gamma),
                fmt_float(c.h),
                c.method.label().into(),
                fmt_float(c.clamped_grad_norm),
                c.iterations_used.to_string(),
            ]);
        }
        table
    }
}

pub(crate) fn method_for(name: MethodName, gamma: f64) -> Method {
    match name {
        MethodName::Leapfrog => Method::Leapfrog { gamma },
        MethodName::Nesterov => Method::Nesterov { rule: MomentumRule::ConstantDamping { gamma } },
        MethodName::NesterovPolynomial => Method::Nesterov { rule: MomentumRule::Polynomial },
        MethodName::GradientDescent => Method::GradientDescent,
    }
}

/// Every cell runs on the same quadratic and start point, both drawn from
/// `cfg.seed`, so cells are independent of evaluation order.
pub fn run_phase_sweep(cfg: &PhaseSweepConfig) -> Result<PhaseSweepResult, HarnessError> {
    cfg.validate()?;
    let f = make_random_quadratic(cfg.n, cfg.y, cfg.seed).map_err(|e| HarnessError::Config(e.to_string()))?;
    let q0 = rng::initial_point(cfg.n, cfg.seed);
    let (gammas, hs) = (cfg.gamma.values(), cfg.h.values());
    let mut jobs = Vec::with_capacity(cfg.methods.len() * gammas.len() * hs.len());
    for &m in &cfg.methods {
        for &g in &gammas {
            for &h in &hs {
                jobs.push((m, g, h));
            }
        }
    }
    let cells = jobs
        .par_iter()
        .map(|&(method, gamma, h)| {
            let opts = RunOptions { h, max_iter: cfg.max_iter, tol: cfg.tol, stop_on_convergence: true };
            let run = minimize(method_for(method, gamma), &f, &q0, opts)
                .map_err(|e| HarnessError::numerical(format!("{} at gamma = {gamma}, h = {h}", method.label()), e))?;
            let clamped_grad_norm = if run.diverged { CLAMP } else { run.final_grad_norm().min(CLAMP) };
            Ok(PhaseCell { gamma, h, method, clamped_grad_norm, iterations_used: run.iterations() })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(PhaseSweepResult { cells })
}
