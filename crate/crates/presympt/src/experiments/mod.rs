//! The five experiment kinds.

mod order;
mod phase_sweep;
mod quad_bench;
mod rate_report;
mod simulate;
mod system;

pub use order::{OrderResult, OrderRow, run_order};
pub use phase_sweep::{PhaseCell, PhaseSweepResult, run_phase_sweep};
pub use quad_bench::{BenchCurve, QuadBenchResult, run_quad_bench};
pub use rate_report::{RateResult, RateRow, run_rate_report};
pub use simulate::{SimulateResult, run_simulate};
pub use system::{BuiltSystem, build_system, run_integrator};
