//! Running either engine (or both) on one configuration.

use std::time::Instant;

use super::compare::{compare, ComparisonReport};
use crate::config::ScenarioConfig;
use crate::error::{Result, SolverError};
use crate::fd::FdSolver;
use crate::lattice::CS2;
use crate::lbm::{InvariantLog, LbmSolver};

/// Per-step change below which the LBM counts a step as quiet.
pub const STEADY_TOLERANCE: f64 = 1e-10;
/// Consecutive quiet steps that end a run early.
pub const STEADY_WINDOW: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Lbm,
    Fd,
    Both,
}

/// Every reported field at one time level, in lattice units.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Snapshot {
    pub step: u64,
    /// Node centres `(i - 1/2) / N_x` in the unit domain.
    pub x: Vec<f64>,
    pub alpha_g: Vec<f64>,
    pub alpha_l: Vec<f64>,
    pub u_g: Vec<f64>,
    pub u_l: Vec<f64>,
    pub p_k: Vec<f64>,
    pub s_g: Vec<f64>,
    pub s_l: Vec<f64>,
    pub sigma_g: Vec<f64>,
    pub sigma_l: Vec<f64>,
    pub g_g: Vec<f64>,
    pub g_l: Vec<f64>,
    pub phi: Vec<f64>,
}

pub fn node_centres(nx: usize) -> Vec<f64> {
    (0..nx).map(|i| (i as f64 + 0.5) / nx as f64).collect()
}

impl Snapshot {
    pub fn nx(&self) -> usize {
        self.x.len()
    }

    /// `alpha_g u_g + alpha_l u_l` per node.
    pub fn mixture_flux(&self) -> Vec<f64> {
        (0..self.nx()).map(|i| self.alpha_g[i] * self.u_g[i] + self.alpha_l[i] * self.u_l[i]).collect()
    }

    /// Fields of the current LBM time level.
    pub fn from_lbm(solver: &mut LbmSolver) -> Result<Self> {
        solver.prepare()?;
        let st = solver.state();
        Ok(Self {
            step: solver.time(),
            x: node_centres(st.nx()),
            alpha_g: st.alpha_g.clone(),
            alpha_l: st.alpha_l.clone(),
            u_g: st.u_g.clone(),
            u_l: st.u_l.clone(),
            p_k: st.p_k.clone(),
            s_g: st.s_g.clone(),
            s_l: st.s_l.clone(),
            sigma_g: st.sigma_g.clone(),
            sigma_l: st.sigma_l.clone(),
            g_g: st.force_g.clone(),
            g_l: st.force_l.clone(),
            phi: st.phi.clone(),
        })
    }

    /// Fields of the current FD state. `phi` assumes `eps_l = 1`.
    pub fn from_fd(solver: &FdSolver) -> Self {
        let st = solver.state();
        let terms = solver.terms();
        let r = solver.model().config.density_ratio();
        let col = |f: fn(&crate::fd::NodeTerms) -> f64| terms.iter().map(f).collect::<Vec<_>>();
        Self {
            step: solver.time().round() as u64,
            x: node_centres(st.nx()),
            alpha_l: st.alpha_g.iter().map(|a| 1.0 - a).collect(),
            phi: st.p_k.iter().map(|p| 1.0 + (p / CS2 - 1.0) / r).collect(),
            s_g: col(|k| k.s_g),
            s_l: col(|k| k.s_l),
            sigma_g: col(|k| k.sigma_g),
            sigma_l: col(|k| k.sigma_l),
            g_g: col(|k| k.force_g),
            g_l: col(|k| k.force_l),
            alpha_g: st.alpha_g,
            u_g: st.u_g,
            u_l: st.u_l,
            p_k: st.p_k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub engine: Engine,
    /// Intermediate snapshot interval in steps; the final state is always kept.
    pub snapshot_every: Option<u64>,
    /// Stop the LBM once the per-step change stays below this value for
    /// [`STEADY_WINDOW`] steps; `None` runs the full `N_t`.
    pub steady_exit: Option<f64>,
    /// Record the LBM invariants at every step.
    pub track_invariants: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { engine: Engine::Both, snapshot_every: None, steady_exit: Some(STEADY_TOLERANCE), track_invariants: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineRun {
    pub snapshots: Vec<Snapshot>,
    pub steps: u64,
    pub runtime_s: f64,
    /// LBM only.
    pub invariants: Option<InvariantLog>,
    /// Whether the run ended on the steady-state criterion.
    pub steady: bool,
}

impl EngineRun {
    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("a run keeps its final snapshot")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub config: ScenarioConfig,
    pub lbm: Option<EngineRun>,
    pub fd: Option<EngineRun>,
    pub report: Option<ComparisonReport>,
}

fn tagged<T>(engine: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| SolverError::Engine { engine, source: Box::new(e) })
}

fn wants_snapshot(step: u64, every: Option<u64>) -> bool {
    matches!(every, Some(k) if k > 0 && step % k == 0)
}

pub fn run_lbm(config: &ScenarioConfig, opts: &RunOptions) -> Result<EngineRun> {
    let clock = Instant::now();
    let mut solver = LbmSolver::new(config.clone())?;
    solver.track_invariants(opts.track_invariants);
    let mut snapshots = Vec::new();
    let mut quiet = 0;
    let mut steady = false;
    while solver.time() < config.nt {
        if wants_snapshot(solver.time(), opts.snapshot_every) {
            snapshots.push(Snapshot::from_lbm(&mut solver)?);
        }
        let report = solver.step()?;
        if let Some(tol) = opts.steady_exit {
            quiet = if report.max_change < tol { quiet + 1 } else { 0 };
            if quiet >= STEADY_WINDOW {
                steady = true;
                break;
            }
        }
    }
    let last = Snapshot::from_lbm(&mut solver)?;
    if snapshots.last().map(|s| s.step) != Some(last.step) {
        snapshots.push(last);
    }
    Ok(EngineRun {
        steps: solver.time(),
        snapshots,
        runtime_s: clock.elapsed().as_secs_f64(),
        invariants: opts.track_invariants.then(|| *solver.invariants()),
        steady,
    })
}

/// Integrate the FD system to `t_end`, snapshotting on the same step grid as the LBM.
pub fn run_fd(config: &ScenarioConfig, opts: &RunOptions, t_end: u64) -> Result<EngineRun> {
    let clock = Instant::now();
    let mut solver = FdSolver::new(config.clone())?;
    let mut snapshots = Vec::new();
    if let Some(k) = opts.snapshot_every.filter(|&k| k > 0) {
        let mut t = 0;
        while t < t_end {
            solver.advance_to(t as f64)?;
            snapshots.push(Snapshot::from_fd(&solver));
            t += k;
        }
    }
    solver.advance_to(t_end as f64)?;
    snapshots.push(Snapshot::from_fd(&solver));
    Ok(EngineRun { snapshots, steps: t_end, runtime_s: clock.elapsed().as_secs_f64(), invariants: None, steady: false })
}

/// Run the requested engine(s). With both engines the FD system is integrated
/// up to the LBM's final step so that the two final states share a time stamp.
pub fn run(config: &ScenarioConfig, opts: &RunOptions) -> Result<RunOutput> {
    config.validate()?;
    let lbm = match opts.engine {
        Engine::Lbm | Engine::Both => Some(tagged("LBM", run_lbm(config, opts))?),
        Engine::Fd => None,
    };
    let fd = match opts.engine {
        Engine::Fd => Some(tagged("FD", run_fd(config, opts, config.nt))?),
        Engine::Both => {
            let t_end = lbm.as_ref().map_or(config.nt, |r| r.steps);
            Some(tagged("FD", run_fd(config, opts, t_end))?)
        }
        Engine::Lbm => None,
    };
    let report = match (&lbm, &fd) {
        (Some(l), Some(f)) => Some(compare(config, l.last(), f.last(), l.runtime_s, f.runtime_s)?),
        _ => None,
    };
    Ok(RunOutput { config: config.clone(), lbm, fd, report })
}
