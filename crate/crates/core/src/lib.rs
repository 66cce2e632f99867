//! One-dimensional Eulerian-Eulerian two-phase flow in a vertical tube.
//!
//! The main engine is a coupled lattice Boltzmann solver built from six D1Q3
//! schemes (hydrodynamics, volume fraction and continuity source for each
//! phase). A method-of-lines finite-difference engine solves the same
//! equations for cross-validation, and [`analytics`] holds the closed-form
//! steady relations.

pub mod analytics;
pub mod config;
pub mod error;
pub mod fd;
pub mod harness;
pub mod lattice;
pub mod lbm;

pub use config::{BulkStrategy, DragModel, RampBounds, ScenarioConfig};
pub use error::{Result, SolverError};
