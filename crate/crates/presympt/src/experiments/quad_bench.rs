use rayon::prelude::*;

use presympt_core::optimize::{OptimizationRun, RunOptions, minimize};
use presympt_core::problems::make_random_quadratic;
use presympt_core::rng;

use crate::HarnessError;
use crate::config::QuadBenchConfig;
use crate::table::{Table, fmt_float};

use super::phase_sweep::method_for;

/// Aggregate `‖∇f‖` curve of one method across trials.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCurve {
    pub label: String,
    /// Mean over non-diverged trials per iteration (`NaN` if all diverged).
    pub mean: Vec<f64>,
    /// Population standard deviation over the same trials.
    pub std: Vec<f64>,
    pub diverged_trials: usize,
}

impl BenchCurve {
    /// First iteration whose mean gradient norm is below `tol`.
    pub fn first_below(&self, tol: f64) -> Option<usize> {
        self.mean.iter().position(|m| *m < tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadBenchResult {
    pub curves: Vec<BenchCurve>,
}

impl QuadBenchResult {
    pub fn curve(&self, label: &str) -> Option<&BenchCurve> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(["iteration", "method", "mean_grad_norm", "std_grad_norm", "diverged_trials"]);
        for c in &self.curves {
            for (k, (m, s)) in c.mean.iter().zip(&c.std).enumerate() {
                table.push(vec![k.to_string(), c.label.clone(), fmt_float(*m), fmt_float(*s), c.diverged_trials.to_string()]);
            }
        }
        table
    }
}

/// Trial `k` uses seed `cfg.seed + k` for both its quadratic and start point.
pub fn run_quad_bench(cfg: &QuadBenchConfig) -> Result<QuadBenchResult, HarnessError> {
    cfg.validate()?;
    let opts = |h: f64| RunOptions { h, max_iter: cfg.max_iter, tol: cfg.tol, stop_on_convergence: false };
    let trials: Vec<Vec<OptimizationRun>> = (0..cfg.n_trials as u64)
        .into_par_iter()
        .map(|k| {
            let seed = cfg.seed.wrapping_add(k);
            let f = make_random_quadratic(cfg.n, cfg.y, seed).map_err(|e| HarnessError::Config(e.to_string()))?;
            let q0 = rng::initial_point(cfg.n, seed);
            cfg.methods
                .iter()
                .map(|m| {
                    minimize(method_for(m.method, m.gamma), &f, &q0, opts(m.h))
                        .map_err(|e| HarnessError::numerical(format!("{} trial {k}", m.label()), e))
                })
                .collect()
        })
        .collect::<Result<_, HarnessError>>()?;
    let curves = cfg
        .methods
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let runs: Vec<&OptimizationRun> = trials.iter().map(|t| &t[j]).filter(|r| !r.diverged).collect();
            let count = runs.len() as f64;
            let (mean, std) = (0..=cfg.max_iter)
                .map(|k| {
                    if runs.is_empty() {
                        return (f64::NAN, f64::NAN);
                    }
                    let mean = runs.iter().map(|r| r.grad_norms[k]).sum::<f64>() / count;
                    let var = runs.iter().map(|r| (r.grad_norms[k] - mean).powi(2)).sum::<f64>() / count;
                    (mean, var.sqrt())
                })
                .unzip();
            BenchCurve { label: m.label(), mean, std, diverged_trials: cfg.n_trials - runs.len() }
        })
        .collect();
    Ok(QuadBenchResult { curves })
}
