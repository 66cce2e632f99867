//! The six-scheme lattice Boltzmann engine.

pub mod boundary;
pub mod closures;
mod engine;
pub mod schemes;

pub use engine::{InvariantLog, LbmSolver, StepReport, TwoPhaseState};
pub use schemes::{DistributionField, SchemeId};
