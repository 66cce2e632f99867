//! Pointwise closures: equation of state, relaxation frequencies, bounding,
//! stress and gradient reconstruction, stabilizers, drag and forces.

use crate::config::{BulkStrategy, DragModel};
use crate::error::{Result, SolverError};
use crate::lattice::CS2;

/// Floor applied to volume fractions inside divisions only.
pub const ALPHA_FLOOR: f64 = 1e-12;

/// Generalized equation-of-state factor `phi = [1 + (eps_g - 1)/R] / eps_l`.
pub fn compute_phi(eps_g: f64, eps_l: f64, r: f64) -> Result<f64> {
    if !(eps_l > 0.0) {
        return Err(SolverError::NonPositiveLiquidDensity { node: 0, eps_l });
    }
    Ok((1.0 + (eps_g - 1.0) / r) / eps_l)
}

/// `(omega, psi)` such that the reconstructed 1D stress coefficient equals `nu`.
pub fn relaxation_from_viscosity(nu: f64, strategy: BulkStrategy) -> Result<(f64, f64)> {
    let (omega, psi) = match strategy {
        BulkStrategy::D1Smooth => (1.0 / (nu + 0.5), 0.0),
        BulkStrategy::D1Consistent => {
            let omega = 1.0 / (3.0 * nu + 0.5);
            (omega, 2.0 * omega * nu / CS2)
        }
    };
    if !(nu > 0.0) || !(omega > 0.0 && omega < 2.0) {
        return Err(SolverError::UnstableRelaxation { omega, nu });
    }
    Ok((omega, psi))
}

/// `nu_ef = (1/omega - 1/2) - c_s^2 psi / omega`.
#[inline]
pub fn effective_viscosity(omega: f64, psi: f64) -> f64 {
    (1.0 / omega - 0.5) - CS2 * psi / omega
}

/// Relaxation of the volume-fraction schemes, `2 / (1 + 2 eps^2 chi / c_s^2)`.
#[inline]
pub fn alpha_relaxation(chi_alpha: f64, epsilon: f64) -> f64 {
    2.0 / (1.0 + 2.0 * epsilon * epsilon * chi_alpha / CS2)
}

#[inline]
fn clamp_unit(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        x
    }
}

/// Clamp both raw fractions to `[0, 1]` and renormalize their sum to one.
///
/// `alpha_l` is computed as `1 - alpha_g` so the sum is exactly one in
/// floating point. Returns `None` when both raw values are non-positive.
pub fn spalding_bound(alpha_g_raw: f64, alpha_l_raw: f64) -> Option<(f64, f64)> {
    let bg = clamp_unit(alpha_g_raw);
    let bl = clamp_unit(alpha_l_raw);
    let sum = bg + bl;
    if !(sum > 0.0) {
        return None;
    }
    let ag = if bl == 0.0 { 1.0 } else { bg / sum };
    Some((ag, 1.0 - ag))
}

/// Remove the common part of the two phase gradients.
///
/// Computed as `(h, -h)` with `h = (g - l)/2`, which equals
/// `(g - delta/2, l - delta/2)` and sums to zero exactly.
#[inline]
pub fn gradient_symmetrize(grad_g: f64, grad_l: f64) -> (f64, f64) {
    let h = 0.5 * (grad_g - grad_l);
    (h, -h)
}

/// Lattice estimate of `(1/alpha) d alpha/dx` from the non-conserved first
/// moment of the volume-fraction scheme.
#[inline]
pub fn alpha_gradient_over_alpha(u: f64, upsilon: f64, omega_alpha: f64) -> f64 {
    omega_alpha / CS2 * (u - upsilon)
}

/// Gradient estimate `d alpha/dx` without the division: `(omega/c_s^2)(alpha u - m1)`.
#[inline]
pub fn alpha_gradient(alpha: f64, u: f64, m1: f64, omega_alpha: f64) -> f64 {
    omega_alpha / CS2 * (alpha * u - m1)
}

/// 1D viscous stress from the second-moment non-equilibrium.
#[inline]
pub fn stress_1d(pi: f64, pi_eq: f64, s: f64, omega: f64, psi: f64) -> f64 {
    effective_viscosity(omega, psi) * (omega * (pi_eq - pi) + psi * CS2 * s)
}

/// Dashpot-corrected sources, frozen on the `n_gamma` grid.
///
/// `cache` holds the frozen pair; it is refreshed when `step % n_gamma == 0`.
#[allow(clippy::too_many_arguments)]
pub fn stabilize_sources(
    s_g: f64,
    s_l: f64,
    eps_g: f64,
    u_g: f64,
    u_l: f64,
    gamma: f64,
    r: f64,
    step: u64,
    n_gamma: u64,
    cache: &mut [f64; 2],
) -> (f64, f64) {
    if step % n_gamma == 0 {
        let dp = eps_g - 1.0;
        cache[0] = s_g - gamma * u_g * u_g * dp;
        cache[1] = s_l - gamma * u_l * u_l * dp / r;
    }
    (cache[0], cache[1])
}

/// CGW volume-fraction factor `Lambda = alpha_g alpha_l (alpha_g + alpha_l R)`.
#[inline]
pub fn cgw_lambda(alpha_g: f64, r: f64) -> f64 {
    let alpha_l = 1.0 - alpha_g;
    alpha_g * alpha_l * (alpha_g + alpha_l * r)
}

/// Interphase and wall coefficients `(K_I, K_W)` at one node.
///
/// Under CGW the factor `Lambda` is frozen in `lambda_cache` on the same grid
/// as the sources.
pub fn drag_coefficients(
    alpha_g: f64,
    drag: DragModel,
    r: f64,
    step: u64,
    n_gamma: u64,
    lambda_cache: &mut f64,
) -> (f64, f64) {
    match drag {
        DragModel::Constant { k_i, k_w } => (k_i, k_w),
        DragModel::Cgw { kappa_i, kappa_w } => {
            if step % n_gamma == 0 {
                *lambda_cache = cgw_lambda(alpha_g, r);
            }
            (kappa_i * *lambda_cache, kappa_w * *lambda_cache)
        }
    }
}

/// Per-node inputs of the force closure.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ForceInputs {
    pub alpha_g: f64,
    pub alpha_l: f64,
    pub u_g: f64,
    pub u_l: f64,
    /// Stabilized (frozen) sources.
    pub s_g: f64,
    pub s_l: f64,
    pub sigma_g: f64,
    pub sigma_l: f64,
    /// Symmetrized gradients `d alpha/dx` (not divided by alpha).
    pub grad_g: f64,
    pub grad_l: f64,
    pub k_i: f64,
    pub k_w: f64,
}

/// Total forces `(G_g, G_l)`; gravity enters the gas equation only.
pub fn compute_forces(inp: &ForceInputs, r: f64, g_hat: f64) -> (f64, f64) {
    let ag = inp.alpha_g.max(ALPHA_FLOOR);
    let al = inp.alpha_l.max(ALPHA_FLOOR);
    let slip = inp.u_g - inp.u_l;
    let drag = inp.k_i * slip.abs() * slip;
    let g_g = inp.s_g * inp.u_g + inp.sigma_g * inp.grad_g / ag + (r - 1.0) * g_hat - drag / ag;
    let g_l = inp.s_l * inp.u_l + inp.sigma_l * inp.grad_l / al + drag / (r * al)
        - inp.k_w * inp.u_l.abs() * inp.u_l / (r * al);
    (g_g, g_l)
}

/// Inlet ramp `(y_max - y_min) tanh(t/n_t) + y_min`.
#[inline]
pub fn inlet_ramp(t: u64, n_t: u64, y_min: f64, y_max: f64) -> f64 {
    (y_max - y_min) * (t as f64 / n_t as f64).tanh() + y_min
}
