use rayon::prelude::*;

use presympt_core::oracles::{
    REFERENCE_STEP, Reference, fit_log_slope, max_hamiltonian_error, reference_trajectory_with_step, steps_for,
};

use crate::HarnessError;
use crate::config::{IntegratorName, OrderConfig};
use crate::table::{Table, fmt_float};

use super::system::{build_system, run_integrator};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderRow {
    pub integrator: IntegratorName,
    pub h: f64,
    pub max_ham_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderResult {
    pub rows: Vec<OrderRow>,
    /// Fitted slope per integrator, in config order.
    pub slopes: Vec<(IntegratorName, f64)>,
}

impl OrderResult {
    pub fn slope(&self, name: IntegratorName) -> Option<f64> {
        self.slopes.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(["integrator", "h", "max_ham_error"]);
        for (name, slope) in &self.slopes {
            for row in self.rows.iter().filter(|r| r.integrator == *name) {
                table.push(vec![name.label().into(), fmt_float(row.h), fmt_float(row.max_ham_error)]);
            }
            table.push(vec![name.label().into(), "slope".into(), fmt_float(*slope)]);
        }
        table
    }
}

pub fn run_order(cfg: &OrderConfig) -> Result<OrderResult, HarnessError> {
    cfg.validate()?;
    let sys = build_system(&cfg.system)?;
    for &name in &cfg.integrators {
        sys.check_integrator(name)?;
    }
    let h_min = cfg.h_list.iter().copied().fold(f64::INFINITY, f64::min);
    let reference_traj = match sys.exact_on(cfg.t_max) {
        Some(_) => None,
        None => {
            // Without a closed form every run is compared on the finest grid.
            for &h in &cfg.h_list {
                let ratio = h / h_min;
                if (ratio - ratio.round()).abs() > 1e-9 * ratio {
                    return Err(HarnessError::Config(format!(
                        "h = {h} is not a multiple of the smallest step {h_min}; required when comparing against a reference trajectory"
                    )));
                }
            }
            let intervals = steps_for(cfg.t_max, h_min);
            Some(
                reference_trajectory_with_step(&*sys.ham, &sys.initial, h_min, intervals, REFERENCE_STEP)
                    .map_err(|e| HarnessError::numerical("reference trajectory", e))?,
            )
        }
    };
    let reference = match (&reference_traj, sys.exact_on(cfg.t_max)) {
        (Some(traj), _) => Reference::Trajectory(traj),
        (None, Some(sol)) => Reference::Exact(sol),
        (None, None) => unreachable!("reference built above"),
    };
    let jobs: Vec<(IntegratorName, f64)> =
        cfg.integrators.iter().flat_map(|&name| cfg.h_list.iter().map(move |&h| (name, h))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(name, h)| {
            let context = || format!("{} with h = {h}", name.label());
            let traj = run_integrator(&sys, name, h, steps_for(cfg.t_max, h), cfg.xi)
                .map_err(|e| HarnessError::numerical(context(), e))?;
            let max_ham_error =
                max_hamiltonian_error(&*sys.ham, &traj, reference).map_err(|e| HarnessError::numerical(context(), e))?;
            Ok(OrderRow { integrator: name, h, max_ham_error })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    let slopes = cfg
        .integrators
        .iter()
        .map(|&name| {
            let (hs, errs): (Vec<f64>, Vec<f64>) =
                rows.iter().filter(|r| r.integrator == name).map(|r| (r.h, r.max_ham_error)).unzip();
            let slope = fit_log_slope(&hs, &errs)
                .map_err(|e| HarnessError::numerical(format!("slope fit for {}", name.label()), e))?;
            Ok((name, slope))
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(OrderResult { rows, slopes })
}
