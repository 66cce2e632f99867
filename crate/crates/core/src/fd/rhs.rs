//! Method-of-lines right-hand side of the four-equation system.

use super::operators::{wrap_into, WrapKind};
use crate::config::{DragModel, ScenarioConfig};
use crate::lattice::CS2;
use crate::lbm::closures::{cgw_lambda, ALPHA_FLOOR};

/// Nodal FD state: kinematic pressure, phase velocities and gas fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct FdState {
    pub p_k: Vec<f64>,
    pub u_g: Vec<f64>,
    pub u_l: Vec<f64>,
    pub alpha_g: Vec<f64>,
}

impl FdState {
    /// Rest state with `p_k = c_s^2` and a uniform gas fraction.
    pub fn rest(nx: usize, alpha_g: f64) -> Self {
        Self { p_k: vec![CS2; nx], u_g: vec![0.0; nx], u_l: vec![0.0; nx], alpha_g: vec![alpha_g; nx] }
    }

    pub fn nx(&self) -> usize {
        self.p_k.len()
    }

    /// Concatenation `[p_k | u_g | u_l | alpha_g]`.
    pub fn to_flat(&self) -> Vec<f64> {
        [&self.p_k[..], &self.u_g[..], &self.u_l[..], &self.alpha_g[..]].concat()
    }

    pub fn from_flat(y: &[f64]) -> Self {
        let n = y.len() / 4;
        Self {
            p_k: y[..n].to_vec(),
            u_g: y[n..2 * n].to_vec(),
            u_l: y[2 * n..3 * n].to_vec(),
            alpha_g: y[3 * n..].to_vec(),
        }
    }
}

/// Inlet values `(alpha_g, u_g, u_l)` of the tanh ramp at continuous time `t`.
pub fn inlet_at(config: &ScenarioConfig, t: f64) -> (f64, f64, f64) {
    let th = (t / config.n_ramp as f64).tanh();
    let ramp = |b: crate::config::RampBounds| (b.max - b.min) * th + b.min;
    (ramp(config.alpha_g), ramp(config.u_g), ramp(config.u_l))
}

/// Every term of the right-hand side at one node, kept apart for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NodeTerms {
    pub s_g: f64,
    pub s_l: f64,
    pub s_frozen_g: f64,
    pub s_frozen_l: f64,
    pub sigma_g: f64,
    pub sigma_l: f64,
    /// Force terms (everything except advection, pressure and viscous diffusion).
    pub force_g: f64,
    pub force_l: f64,
    pub dp: f64,
    pub du_g: f64,
    pub du_l: f64,
    pub dalpha: f64,
}

/// Frozen dashpot sources and CGW factor, refreshed on the `n_gamma` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Frozen {
    pub s_g: Vec<f64>,
    pub s_l: Vec<f64>,
    pub lambda: Vec<f64>,
}

/// The semi-discrete system for one configuration.
#[derive(Debug, Clone)]
pub struct FdModel {
    pub config: ScenarioConfig,
    r: f64,
}

impl FdModel {
    pub fn new(config: ScenarioConfig) -> Self {
        let r = config.density_ratio();
        Self { config, r }
    }

    /// Whether sources and drag factors are frozen between refreshes.
    pub fn freezes(&self) -> bool {
        self.config.n_gamma > 1
    }

    /// Ghost-padded copies `[p_k, u_g, u_l, alpha_g]` of the flat state at time `t`.
    pub fn padded(&self, t: f64, y: &[f64]) -> [Vec<f64>; 4] {
        let n = y.len() / 4;
        let (a_in, ug_in, ul_in) = inlet_at(&self.config, t);
        let pad = |k: usize, kind: WrapKind, inlet: f64| {
            let mut out = vec![0.0; n + 2];
            wrap_into(&y[k * n..(k + 1) * n], kind, inlet, &mut out);
            out
        };
        [pad(0, WrapKind::Pk, 0.0), pad(1, WrapKind::Ug, ug_in), pad(2, WrapKind::Ul, ul_in), pad(3, WrapKind::AlphaG, a_in)]
    }

    /// Terms at node `i` (zero-based) of flat state `y`.
    pub fn node_terms(&self, t: f64, y: &[f64], frozen: Option<&Frozen>, i: usize) -> NodeTerms {
        self.terms_at(&self.padded(t, y), frozen, i)
    }

    /// Terms at node `i` from ghost-padded vectors (node `i` sits at index `i + 1`).
    #[inline]
    pub fn terms_at(&self, w: &[Vec<f64>; 4], frozen: Option<&Frozen>, i: usize) -> NodeTerms {
        let c = &self.config;
        let [p, ug, ul, ag] = w;
        let j = i + 1;
        let (pm, pk, pp) = (p[j - 1], p[j], p[j + 1]);
        let (gm, g, gp) = (ug[j - 1], ug[j], ug[j + 1]);
        let (lm, l, lp) = (ul[j - 1], ul[j], ul[j + 1]);
        let (am, a, ap) = (ag[j - 1], ag[j], ag[j + 1]);

        let d = |m: f64, p: f64| 0.5 * (p - m);
        let s_g = d((1.0 - am) * (gm - lm), (1.0 - ap) * (gp - lp));
        let s_l = d(am * (lm - gm), ap * (lp - gp));
        let dev = pk / CS2 - 1.0;
        let (sf_g, sf_l, lambda) = match frozen {
            Some(f) => (f.s_g[i], f.s_l[i], f.lambda[i]),
            None => (
                s_g - c.gamma * g * g * dev,
                s_l - c.gamma * l * l * dev / self.r,
                match c.drag {
                    DragModel::Cgw { .. } => cgw_lambda(a, self.r),
                    DragModel::Constant { .. } => 0.0,
                },
            ),
        };
        let (k_i, k_w) = match c.drag {
            DragModel::Constant { k_i, k_w } => (k_i, k_w),
            DragModel::Cgw { kappa_i, kappa_w } => (kappa_i * lambda, kappa_w * lambda),
        };
        let ag_f = a.max(ALPHA_FLOOR);
        let al_f = (1.0 - a).max(ALPHA_FLOOR);
        let sigma_g = c.nu_g * d(gm, gp);
        let sigma_l = c.nu_l * d(lm, lp);
        let dadx = d(am, ap);
        let slip = l - g;
        let force_g = sf_g * g + sigma_g / ag_f * dadx + (self.r - 1.0) * c.g_hat + k_i / ag_f * slip.abs() * slip;
        let force_l = sf_l * l + sigma_l / al_f * (-dadx) - k_i / (self.r * al_f) * slip.abs() * slip
            - k_w / (self.r * al_f) * l.abs() * l;
        let dp = CS2 * (-d(gm, gp) + sf_g);
        let du_g = -d(gm * gm, gp * gp) - d(pm, pp) + c.nu_g * (gp - 2.0 * g + gm) + force_g;
        let du_l = -d(lm * lm, lp * lp) - d(pm, pp) / self.r + c.nu_l * (lp - 2.0 * l + lm) + force_l;
        let dalpha = -d(am * gm, ap * gp);
        NodeTerms {
            s_g,
            s_l,
            s_frozen_g: sf_g,
            s_frozen_l: sf_l,
            sigma_g,
            sigma_l,
            force_g,
            force_l,
            dp,
            du_g,
            du_l,
            dalpha,
        }
    }

    /// `dy/dt` of the flat state.
    pub fn eval(&self, t: f64, y: &[f64], frozen: Option<&Frozen>, dy: &mut [f64]) {
        let n = y.len() / 4;
        let w = self.padded(t, y);
        for i in 0..n {
            let k = self.terms_at(&w, frozen, i);
            dy[i] = k.dp;
            dy[n + i] = k.du_g;
            dy[2 * n + i] = k.du_l;
            dy[3 * n + i] = k.dalpha;
        }
    }

    /// Snapshot of the current stabilized sources and CGW factor.
    pub fn freeze(&self, t: f64, y: &[f64]) -> Frozen {
        let n = y.len() / 4;
        let mut f = Frozen { s_g: vec![0.0; n], s_l: vec![0.0; n], lambda: vec![0.0; n] };
        let w = self.padded(t, y);
        for i in 0..n {
            let k = self.terms_at(&w, None, i);
            f.s_g[i] = k.s_frozen_g;
            f.s_l[i] = k.s_frozen_l;
            f.lambda[i] = cgw_lambda(y[3 * n + i], self.r);
        }
        f
    }
}
