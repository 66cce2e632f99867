use thiserror::Error;

/// Failures raised by the solvers and the analytic relations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("non-finite value in {field} at node {node} (step {step})")]
    NonFinite { field: &'static str, node: usize, step: u64 },

    #[error("liquid zeroth moment {eps_l} <= 0 at node {node}: solver blow-up")]
    NonPositiveLiquidDensity { node: usize, eps_l: f64 },

    #[error("both raw volume fractions are non-positive at node {node} ({alpha_g}, {alpha_l})")]
    DegenerateVolumeFraction { node: usize, alpha_g: f64, alpha_l: f64 },

    #[error("continuity source {value} at node {node} exceeds the incompressible bound 0.1")]
    SourceOutOfScaling { node: usize, value: f64 },

    #[error("lattice velocity {value} at node {node} is not subsonic")]
    Supersonic { node: usize, value: f64 },

    #[error("relaxation frequency {omega} outside (0, 2) for viscosity {nu}")]
    UnstableRelaxation { omega: f64, nu: f64 },

    #[error("regime precondition violated: {0}")]
    Regime(String),

    #[error("step size {h:e} underflow at t = {t}")]
    StepUnderflow { t: f64, h: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("mismatched node counts: {0} vs {1}")]
    MeshMismatch(usize, usize),

    #[error("{engine} engine failed: {source}")]
    Engine { engine: &'static str, source: Box<SolverError> },

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, SolverError>;
