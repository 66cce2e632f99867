//! Finite-difference reference engine (method of lines).

pub mod integrator;
pub mod operators;
pub mod rhs;
pub mod smoothing;

pub use integrator::{Dopri5, Tolerances};
pub use operators::{dx, dx2, wrap, NodalVector, WrapKind, WrappedVector};
pub use rhs::{FdModel, FdState, Frozen, NodeTerms};
pub use smoothing::gaussian_smooth;

use crate::config::ScenarioConfig;
use crate::error::Result;

/// Accepted steps between two smoothing passes.
pub const SMOOTH_EVERY: u64 = 100;

/// Adaptive time integration of the FD system with periodic smoothing.
#[derive(Debug, Clone)]
pub struct FdSolver {
    model: FdModel,
    y: Vec<f64>,
    t: f64,
    dp: Dopri5,
    frozen: Option<Frozen>,
    freeze_index: u64,
    buf: Vec<f64>,
}

impl FdSolver {
    /// Start from rest: `p_k = c_s^2`, zero velocities, `alpha_g = alpha_g^min`.
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let y = FdState::rest(config.nx, config.alpha_g.min).to_flat();
        Self::with_state(config, &y)
    }

    /// Start from an arbitrary flat state `[p_k | u_g | u_l | alpha_g]` at `t = 0`.
    pub fn with_state(config: ScenarioConfig, y: &[f64]) -> Result<Self> {
        let model = FdModel::new(config);
        let n = y.len();
        let frozen = model.freezes().then(|| model.freeze(0.0, y));
        Ok(Self {
            dp: Dopri5::new(n, Tolerances::default(), 0.1),
            y: y.to_vec(),
            t: 0.0,
            frozen,
            freeze_index: 0,
            buf: vec![0.0; n / 4],
            model,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn model(&self) -> &FdModel {
        &self.model
    }

    pub fn flat(&self) -> &[f64] {
        &self.y
    }

    pub fn state(&self) -> FdState {
        FdState::from_flat(&self.y)
    }

    pub fn frozen(&self) -> Option<&Frozen> {
        self.frozen.as_ref()
    }

    /// Per-node terms at the current time.
    pub fn terms(&self) -> Vec<NodeTerms> {
        let w = self.model.padded(self.t, &self.y);
        (0..self.y.len() / 4).map(|i| self.model.terms_at(&w, self.frozen.as_ref(), i)).collect()
    }

    pub fn accepted_steps(&self) -> u64 {
        self.dp.accepted
    }

    /// Integrate up to exactly `t_end`.
    pub fn advance_to(&mut self, t_end: f64) -> Result<()> {
        let n = self.y.len() / 4;
        while self.t < t_end {
            let model = &self.model;
            let frozen = self.frozen.as_ref();
            let mut f = |t: f64, y: &[f64], d: &mut [f64]| model.eval(t, y, frozen, d);
            let h = self.dp.step(&mut f, self.t, &mut self.y, t_end - self.t)?;
            self.t = if t_end - (self.t + h) <= 1e-9 { t_end } else { self.t + h };

            let mut touched = false;
            if self.dp.accepted % SMOOTH_EVERY == 0 {
                for k in 0..4 {
                    let v = &mut self.y[k * n..(k + 1) * n];
                    smoothing::gaussian_smooth_into(v, &mut self.buf);
                    v.copy_from_slice(&self.buf);
                }
                touched = true;
            }
            for a in &mut self.y[3 * n..] {
                if *a < 0.0 || *a > 1.0 {
                    *a = a.clamp(0.0, 1.0);
                    touched = true;
                }
            }
            if self.model.freezes() {
                let idx = (self.t / self.model.config.n_gamma as f64).floor() as u64;
                if idx > self.freeze_index {
                    self.freeze_index = idx;
                    self.frozen = Some(self.model.freeze(self.t, &self.y));
                    touched = true;
                }
            }
            if touched {
                self.dp.invalidate();
            }
            if let Some(i) = self.y.iter().position(|v| !v.is_finite()) {
                return Err(crate::error::SolverError::NonFinite { field: "fd state", node: i % n, step: self.t as u64 });
            }
        }
        Ok(())
    }
}
