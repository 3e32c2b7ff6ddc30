//! Experiment harness: JSON configs in, CSV tables out.

pub mod config;
pub mod experiments;
pub mod table;

use std::path::Path;

pub use config::{ExperimentConfig, ExperimentKind};
pub use table::Table;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// Bad or inconsistent configuration, including unreadable config files.
    #[error("config error: {0}")]
    Config(String),
    /// A run failed numerically (divergence, non-convergence, overflow).
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("output error: {0}")]
    Output(String),
}

impl HarnessError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Output(_) => 1,
            HarnessError::Numerical(_) => 2,
        }
    }

    pub(crate) fn numerical(context: impl std::fmt::Display, err: presympt_core::Error) -> Self {
        HarnessError::Numerical(format!("{context}: {err}"))
    }
}

/// Runs `cfg` on a pool of `threads` workers (`None` uses all cores) and
/// returns the result table.
pub fn run_experiment(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<Table, HarnessError> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(HarnessError::Config("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| HarnessError::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match cfg {
        ExperimentConfig::Simulate(c) => experiments::run_simulate(c).map(|r| r.to_table()),
        ExperimentConfig::Order(c) => experiments::run_order(c).map(|r| r.to_table()),
        ExperimentConfig::PhaseSweep(c) => experiments::run_phase_sweep(c).map(|r| r.to_table()),
        ExperimentConfig::RateReport(c) => experiments::run_rate_report(c).map(|r| r.to_table()),
        ExperimentConfig::QuadBench(c) => experiments::run_quad_bench(c).map(|r| r.to_table()),
    })
}

/// Loads the config at `config`, checks it is of kind `kind`, runs it and
/// writes the CSV to `out`.
pub fn run_from_files(kind: ExperimentKind, config: &Path, out: &Path, threads: Option<usize>) -> Result<(), HarnessError> {
    let cfg = ExperimentConfig::from_path(config)?;
    if cfg.kind() != kind {
        return Err(HarnessError::Config(format!(
            "{} has kind {} but the {} command was invoked",
            config.display(),
            cfg.kind().name(),
            kind.name()
        )));
    }
    let table = run_experiment(&cfg, threads)?;
    table.write_path(out)
}
