//! Observed order of accuracy across diffusively rescaled meshes.

use super::run::{node_centres, run_lbm, RunOptions, Snapshot};
use crate::config::ScenarioConfig;
use crate::error::{Result, SolverError};
use crate::lattice::CS2;

/// Four-point Lagrange interpolation of nodal data `(xs, ys)` at `x`.
pub fn cubic_interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    debug_assert!(n >= 4);
    let k = xs.partition_point(|&xi| xi < x);
    let start = k.saturating_sub(2).min(n - 4);
    let (px, py) = (&xs[start..start + 4], &ys[start..start + 4]);
    let mut sum = 0.0;
    for i in 0..4 {
        let mut w = 1.0;
        for j in 0..4 {
            if i != j {
                w *= (x - px[j]) / (px[i] - px[j]);
            }
        }
        sum += w * py[i];
    }
    sum
}

/// Order estimate from three successive resolutions.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    /// Differences between successive resolutions (RMS over the shared points).
    pub differences: Vec<f64>,
    /// Same differences in the max norm.
    pub differences_max: Vec<f64>,
    /// Order from the RMS differences of the finest triple; `None` when the
    /// differences vanish.
    pub order: Option<f64>,
    /// Smallest and largest order over both norms and all triples.
    pub band: Option<(f64, f64)>,
    /// Whether every difference sequence decreases.
    pub monotone: bool,
}

/// Observed orders from profiles sampled on shared points, ordered coarse to
/// fine with a constant refinement `ratio`.
pub fn observed_order(profiles: &[Vec<f64>], ratio: f64) -> OrderEstimate {
    let diff = |a: &[f64], b: &[f64], max: bool| {
        let d = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        if max {
            d.fold(0.0, f64::max)
        } else {
            (d.map(|v| v * v).sum::<f64>() / a.len() as f64).sqrt()
        }
    };
    let differences: Vec<f64> = profiles.windows(2).map(|w| diff(&w[0], &w[1], false)).collect();
    let differences_max: Vec<f64> = profiles.windows(2).map(|w| diff(&w[0], &w[1], true)).collect();
    let order_of = |e: &[f64]| (e[0] > 0.0 && e[1] > 0.0).then(|| (e[0] / e[1]).ln() / ratio.ln());
    let mut all = Vec::new();
    for e in [&differences, &differences_max] {
        for w in e.windows(2) {
            if let Some(p) = order_of(w) {
                all.push(p);
            }
        }
    }
    let order = differences.len().checked_sub(2).and_then(|k| order_of(&differences[k..]));
    let band = (!all.is_empty()).then(|| all.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| (lo.min(p), hi.max(p))));
    let monotone = [&differences, &differences_max].iter().all(|e| e.windows(2).all(|w| w[1] < w[0]));
    OrderEstimate { differences, differences_max, order, band, monotone }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldOrder {
    pub name: &'static str,
    pub estimate: OrderEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Mesh scales, coarse to fine.
    pub scales: Vec<f64>,
    pub steps: Vec<u64>,
    /// Shared sample points (node centres of the coarsest mesh).
    pub x: Vec<f64>,
    pub fields: Vec<FieldOrder>,
}

impl ConvergenceReport {
    pub fn field(&self, name: &str) -> Option<&OrderEstimate> {
        self.fields.iter().find(|f| f.name == name).map(|f| &f.estimate)
    }
}

/// Profiles of one snapshot in mesh-independent units, interpolated at `x`:
/// velocities times `N_x`, pressure deviation times `N_x^2`.
fn sampled(s: &Snapshot, x: &[f64]) -> [Vec<f64>; 4] {
    let n = s.nx() as f64;
    let xs = node_centres(s.nx());
    let at = |v: Vec<f64>| x.iter().map(|&xi| cubic_interpolate(&xs, &v, xi)).collect::<Vec<_>>();
    [
        at(s.alpha_g.clone()),
        at(s.u_g.iter().map(|u| u * n).collect()),
        at(s.u_l.iter().map(|u| u * n).collect()),
        at(s.p_k.iter().map(|p| (p - CS2) * n * n).collect()),
    ]
}

/// Run the LBM on `base` rescaled by each of `scales` (at least three, with a
/// constant ratio) and estimate the observed order per field.
///
/// The steady-exit threshold applies at scale 1 and is divided by `s^3` at
/// scale `s`: per-step changes shrink like `s^-3` under diffusive scaling, so a
/// fixed threshold would stop finer meshes relatively earlier and pollute the
/// observed order.
pub fn convergence_study(base: &ScenarioConfig, scales: &[f64], opts: &RunOptions) -> Result<ConvergenceReport> {
    if scales.len() < 3 {
        return Err(SolverError::Config("a convergence study needs at least three scales".into()));
    }
    let mut scales = scales.to_vec();
    scales.sort_by(f64::total_cmp);
    let ratio = scales[1] / scales[0];
    if scales.windows(2).any(|w| ((w[1] / w[0]) / ratio - 1.0).abs() > 1e-12) || ratio <= 1.0 {
        return Err(SolverError::Config(format!("scales {scales:?} are not a geometric sequence")));
    }
    let mut finals = Vec::new();
    for &s in &scales {
        let opts = RunOptions { steady_exit: opts.steady_exit.map(|t| t / s.powi(3)), ..opts.clone() };
        let run = run_lbm(&base.scaled(s)?, &opts)?;
        finals.push((run.steps, run.last().clone()));
    }
    let x = node_centres(finals[0].1.nx());
    let profiles: Vec<[Vec<f64>; 4]> = finals.iter().map(|(_, s)| sampled(s, &x)).collect();
    let fields = ["alpha_g", "u_g", "u_l", "p_k"]
        .iter()
        .enumerate()
        .map(|(k, &name)| FieldOrder {
            name,
            estimate: observed_order(&profiles.iter().map(|p| p[k].clone()).collect::<Vec<_>>(), ratio),
        })
        .collect();
    Ok(ConvergenceReport { scales, steps: finals.iter().map(|f| f.0).collect(), x, fields })
}
