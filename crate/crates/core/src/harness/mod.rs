//! Presets, runs, comparisons, convergence studies and I/O.

pub mod compare;
pub mod convergence;
pub mod io;
pub mod presets;
pub mod run;

pub use compare::{compare, ComparisonReport, FieldDiff, Outlet};
pub use convergence::{convergence_study, observed_order, ConvergenceReport, OrderEstimate};
pub use presets::{preset, TestId, TestPreset};
pub use run::{run, Engine, EngineRun, RunOptions, RunOutput, Snapshot};
