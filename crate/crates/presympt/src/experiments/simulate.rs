use presympt_core::Trajectory;

use crate::HarnessError;
use crate::config::SimulateConfig;
use crate::table::{Table, fmt_float};

use super::system::{build_system, run_integrator};

pub struct SimulateResult {
    pub trajectory: Trajectory,
    /// `H` along the closed-form solution at every state, when one applies.
    pub exact_energy: Option<Vec<f64>>,
    pub decimation: usize,
}

impl SimulateResult {
    /// `|H_exact − H_numeric|` per state.
    pub fn abs_errors(&self) -> Option<Vec<f64>> {
        self.exact_energy
            .as_ref()
            .map(|exact| exact.iter().zip(&self.trajectory.ham_values).map(|(e, n)| (e - n).abs()).collect())
    }

    pub fn to_table(&self) -> Table {
        let dim = self.trajectory.states.first().map_or(0, |s| s.dim());
        let mut header = vec!["step".to_string(), "t".to_string()];
        header.extend((0..dim).map(|i| format!("q_{i}")));
        header.extend((0..dim).map(|i| format!("p_{i}")));
        header.push("H_numeric".into());
        if self.exact_energy.is_some() {
            header.push("H_exact".into());
            header.push("abs_ham_error".into());
        }
        header.push("grad_norm".into());
        let mut table = Table::new(header);
        let errors = self.abs_errors();
        let last = self.trajectory.len().saturating_sub(1);
        let norms = self.trajectory.grad_norms.as_ref();
        for (k, s) in self.trajectory.states.iter().enumerate() {
            if k % self.decimation != 0 && k != last {
                continue;
            }
            let mut row = vec![k.to_string(), fmt_float(s.t)];
            row.extend(s.q.iter().chain(&s.p).map(|v| fmt_float(*v)));
            row.push(fmt_float(self.trajectory.ham_values[k]));
            if let (Some(exact), Some(errors)) = (&self.exact_energy, &errors) {
                row.push(fmt_float(exact[k]));
                row.push(fmt_float(errors[k]));
            }
            row.push(norms.map_or(String::new(), |n| fmt_float(n[k])));
            table.push(row);
        }
        table
    }
}

pub fn run_simulate(cfg: &SimulateConfig) -> Result<SimulateResult, HarnessError> {
    cfg.validate()?;
    let sys = build_system(&cfg.system)?;
    sys.check_integrator(cfg.integrator)?;
    let n = cfg.steps();
    let trajectory = run_integrator(&sys, cfg.integrator, cfg.h, n, cfg.xi)
        .map_err(|e| HarnessError::numerical(format!("{} with h = {}", cfg.integrator.label(), cfg.h), e))?;
    let t_end = trajectory.last().map_or(0.0, |s| s.t);
    let exact_energy = match sys.exact_on(t_end) {
        Some(sol) => Some(
            trajectory
                .states
                .iter()
                .map(|s| {
                    let (q, p) = sol.at(s.t)?;
                    Ok(sys.ham.eval(s.t, &[q], &[p]))
                })
                .collect::<presympt_core::Result<Vec<f64>>>()
                .map_err(|e| HarnessError::numerical("closed-form solution", e))?,
        ),
        None => None,
    };
    Ok(SimulateResult { trajectory, exact_energy, decimation: cfg.decimation })
}
