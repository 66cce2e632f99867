//! LBM-versus-FD comparison metrics.

use super::run::Snapshot;
use crate::analytics::{bubble_column_velocity, steady_liquid_velocity};
use crate::config::{DragModel, ScenarioConfig};
use crate::error::{Result, SolverError};
use crate::lattice::CS2;
use crate::lbm::closures::cgw_lambda;

/// Relative differences of one field; both norms are divided by the FD
/// solution's largest magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDiff {
    pub name: &'static str,
    pub linf: f64,
    pub l2: f64,
}

/// Outlet values of one engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outlet {
    pub alpha_g: f64,
    pub u_g: f64,
    pub u_l: f64,
    pub mixture_flux: f64,
}

impl Outlet {
    pub fn of(s: &Snapshot) -> Self {
        let n = s.nx() - 1;
        Self {
            alpha_g: s.alpha_g[n],
            u_g: s.u_g[n],
            u_l: s.u_l[n],
            mixture_flux: s.alpha_g[n] * s.u_g[n] + s.alpha_l[n] * s.u_l[n],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// `alpha_g`, `u_g`, `u_l`, `p_k` (deviation from `c_s^2`) and `dp_k/dx`.
    pub fields: Vec<FieldDiff>,
    pub outlet_lbm: Outlet,
    pub outlet_fd: Outlet,
    /// `(max j - min j) / max |j|` of the mixture flux, per engine.
    pub flux_variation_lbm: f64,
    pub flux_variation_fd: f64,
    /// Relative difference of the least-squares mean pressure gradients.
    pub mean_gradient_diff: f64,
    /// `|u_l - u_l^steady| / |u_l|` at the LBM outlet; `None` outside the regime.
    pub analytic_residual: Option<f64>,
    pub runtime_lbm_s: f64,
    pub runtime_fd_s: f64,
}

impl ComparisonReport {
    pub fn field(&self, name: &str) -> Option<&FieldDiff> {
        self.fields.iter().find(|f| f.name == name)
    }

    /// Relative outlet discrepancy of the gas velocity.
    pub fn outlet_gas_discrepancy(&self) -> f64 {
        ((self.outlet_lbm.u_g - self.outlet_fd.u_g) / self.outlet_fd.u_g).abs()
    }
}

/// `(max|a - b| / max|b|, rms(a - b) / max|b|)`.
pub fn relative_norms(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.len() != b.len() {
        return Err(SolverError::MeshMismatch(a.len(), b.len()));
    }
    let scale = b.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let (mut linf, mut sq) = (0.0_f64, 0.0);
    for (x, y) in a.iter().zip(b) {
        let d = (x - y).abs();
        linf = linf.max(d);
        sq += d * d;
    }
    if linf == 0.0 {
        return Ok((0.0, 0.0));
    }
    let rms = (sq / a.len() as f64).sqrt();
    Ok((linf / scale, rms / scale))
}

/// Nodal derivative: central inside, one-sided second order at the ends.
pub fn gradient(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| match i {
            0 => -1.5 * v[0] + 2.0 * v[1] - 0.5 * v[2],
            _ if i + 1 == n => 1.5 * v[n - 1] - 2.0 * v[n - 2] + 0.5 * v[n - 3],
            _ => 0.5 * (v[i + 1] - v[i - 1]),
        })
        .collect()
}

/// Least-squares slope of nodal data per node.
pub fn mean_slope(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let xm = (n - 1.0) / 2.0;
    let ym = v.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in v.iter().enumerate() {
        let dx = i as f64 - xm;
        sxy += dx * (y - ym);
        sxx += dx * dx;
    }
    sxy / sxx
}

/// `(max j - min j) / max |j|`.
pub fn flux_variation(s: &Snapshot) -> f64 {
    let j = s.mixture_flux();
    let (lo, hi) = j.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let scale = j.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        0.0
    } else {
        (hi - lo) / scale
    }
}

/// Interphase coefficient `K_I` and ratio `r = (K_W/K_I) alpha_g` at gas fraction `alpha_g`.
fn drag_at(config: &ScenarioConfig, alpha_g: f64) -> (f64, f64) {
    match config.drag {
        DragModel::Constant { k_i, k_w } => (k_i, k_w / k_i * alpha_g),
        DragModel::Cgw { kappa_i, kappa_w } => (kappa_i * cgw_lambda(alpha_g, config.density_ratio()), kappa_w / kappa_i * alpha_g),
    }
}

/// Liquid velocity of the flat-gradient regime for gas fraction `alpha_g` and
/// gas velocity `u_g`, with `u_g0` from the bubble-column balance.
pub fn analytic_liquid_velocity(config: &ScenarioConfig, alpha_g: f64, u_g: f64) -> Result<f64> {
    let (k_i, r) = drag_at(config, alpha_g);
    let u0 = bubble_column_velocity(alpha_g, config.density_ratio(), config.g_hat, k_i);
    steady_liquid_velocity(u_g, u0, r)
}

pub fn compare(config: &ScenarioConfig, lbm: &Snapshot, fd: &Snapshot, runtime_lbm_s: f64, runtime_fd_s: f64) -> Result<ComparisonReport> {
    if lbm.nx() != fd.nx() {
        return Err(SolverError::MeshMismatch(lbm.nx(), fd.nx()));
    }
    let dev = |s: &Snapshot| s.p_k.iter().map(|p| p - CS2).collect::<Vec<_>>();
    let mut fields = Vec::new();
    for (name, a, b) in [
        ("alpha_g", lbm.alpha_g.clone(), fd.alpha_g.clone()),
        ("u_g", lbm.u_g.clone(), fd.u_g.clone()),
        ("u_l", lbm.u_l.clone(), fd.u_l.clone()),
        ("p_k", dev(lbm), dev(fd)),
        ("dp_k/dx", gradient(&lbm.p_k), gradient(&fd.p_k)),
    ] {
        let (linf, l2) = relative_norms(&a, &b)?;
        fields.push(FieldDiff { name, linf, l2 });
    }
    let outlet_lbm = Outlet::of(lbm);
    let analytic_residual = analytic_liquid_velocity(config, outlet_lbm.alpha_g, outlet_lbm.u_g)
        .ok()
        .map(|ul| ((outlet_lbm.u_l - ul) / outlet_lbm.u_l).abs());
    Ok(ComparisonReport {
        fields,
        outlet_lbm,
        outlet_fd: Outlet::of(fd),
        mean_gradient_diff: ((mean_slope(&lbm.p_k) - mean_slope(&fd.p_k)) / mean_slope(&fd.p_k)).abs(),
        flux_variation_lbm: flux_variation(lbm),
        flux_variation_fd: flux_variation(fd),
        analytic_residual,
        runtime_lbm_s,
        runtime_fd_s,
    })
}
