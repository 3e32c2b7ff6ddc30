use presympt_core::oracles::fit_log_slope;
use presympt_core::{Scaling, ScalingTriple};

use crate::HarnessError;
use crate::config::RateReportConfig;
use crate::table::{Table, fmt_float};

use super::system::{build_system, run_integrator};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub step: usize,
    pub t: f64,
    /// `f(q_ℓ) − f(q*)`.
    pub f_gap: f64,
    /// `e^{−β(t_ℓ)}`.
    pub continuous_bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateResult {
    pub rows: Vec<RateRow>,
    /// Log-log slope of `f_gap` against `t` over the final decade
    /// (polynomial scalings only; `NaN` when the gap vanishes).
    pub slope: Option<f64>,
    pub decimation: usize,
}

impl RateResult {
    pub fn to_table(&self) -> Table {
        let mut table = Table::new(["step", "t", "f_gap", "continuous_bound", "ratio"]);
        let last = self.rows.len().saturating_sub(1);
        for (k, r) in self.rows.iter().enumerate() {
            if k % self.decimation != 0 && k != last {
                continue;
            }
            table.push(vec![
                r.step.to_string(),
                fmt_float(r.t),
                fmt_float(r.f_gap),
                fmt_float(r.continuous_bound),
                fmt_float(r.ratio),
            ]);
        }
        if let Some(slope) = self.slope {
            table.push(vec!["slope".into(), String::new(), fmt_float(slope), String::new(), String::new()]);
        }
        table
    }
}

pub fn run_rate_report(cfg: &RateReportConfig) -> Result<RateResult, HarnessError> {
    cfg.validate()?;
    let mut sys = build_system(&cfg.system())?;
    let (q_star, f_star) = sys
        .potential
        .minimum()
        .ok_or_else(|| HarnessError::Config("rate_report needs an objective with known minimum".into()))?;
    if cfg.start_at_minimum {
        sys.initial.q = q_star;
    }
    let n = presympt_core::oracles::steps_for(cfg.t_max - cfg.t_start, cfg.h);
    let traj = run_integrator(&sys, cfg.integrator, cfg.h, n, cfg.xi)
        .map_err(|e| HarnessError::numerical(format!("{} with h = {}", cfg.integrator.label(), cfg.h), e))?;
    let triple = cfg.scaling.triple();
    let rows: Vec<RateRow> = traj
        .states
        .iter()
        .enumerate()
        .map(|(step, s)| {
            let f_gap = sys.potential.value(&s.q) - f_star;
            let continuous_bound = (-triple.beta(s.t)).exp();
            RateRow { step, t: s.t, f_gap, continuous_bound, ratio: f_gap / continuous_bound }
        })
        .collect();
    let slope = match triple {
        ScalingTriple::Polynomial { .. } => {
            let t_end = rows.last().map_or(cfg.t_max, |r| r.t);
            let (ts, gaps): (Vec<f64>, Vec<f64>) =
                rows.iter().filter(|r| r.t >= 0.1 * t_end - 1e-9).map(|r| (r.t, r.f_gap)).unzip();
            Some(fit_log_slope(&ts, &gaps).unwrap_or(f64::NAN))
        }
        ScalingTriple::Exponential { .. } => None,
    };
    Ok(RateResult { rows, slope, decimation: cfg.decimation })
}
