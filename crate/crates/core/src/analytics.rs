//! Closed-form steady relations and the similarity map between physical and
//! lattice units.

use crate::error::{Result, SolverError};
use crate::lbm::closures::cgw_lambda;

/// Gas velocity of a bubble column (liquid at rest):
/// `sqrt(alpha_g (1 - alpha_g) (R - 1) g / K_I)`.
pub fn bubble_column_velocity(alpha_g: f64, r: f64, g_hat: f64, k_i: f64) -> f64 {
    (alpha_g * (1.0 - alpha_g) * (r - 1.0) * g_hat / k_i).sqrt()
}

/// Steady liquid velocity of the flat-gradient regime.
///
/// Solves `r u_l^2 = (u_g - u_l)^2 - u_g0^2` on the branch `u_l < u_g`.
pub fn steady_liquid_velocity(u_g: f64, u_g0: f64, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(SolverError::Regime(format!("r = {r} must be non-negative")));
    }
    if !(u_g > u_g0) {
        return Err(SolverError::Regime(format!("u_g = {u_g} must exceed u_g0 = {u_g0}")));
    }
    if r == 1.0 {
        return Ok(steady_liquid_velocity_unit_r(u_g, u_g0));
    }
    let disc = u_g * u_g - (1.0 - r) * (u_g * u_g - u_g0 * u_g0);
    if disc < 0.0 {
        return Err(SolverError::Regime(format!("negative discriminant {disc}")));
    }
    // (u_g - sqrt(disc)) / (1 - r), rewritten to avoid cancellation near r = 1
    Ok((u_g * u_g - u_g0 * u_g0) / (u_g + disc.sqrt()))
}

/// The `r = 1` relation `(u_g - u_g0)(1 + u_g0/u_g)/2`.
pub fn steady_liquid_velocity_unit_r(u_g: f64, u_g0: f64) -> f64 {
    0.5 * (u_g - u_g0) * (1.0 + u_g0 / u_g)
}

/// Lattice speed and collision time linking physical and lattice units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityScale {
    pub c: f64,
    pub tau: f64,
    pub c_over_tau: f64,
    pub c_times_tau: f64,
}

/// `c/tau = g / g_hat`, `c tau = kappa_hat / kappa`, `c = sqrt((c/tau)(c tau))`.
pub fn similarity_scale(g_phys: f64, kappa_i_phys: f64, g_hat: f64, kappa_i_hat: f64) -> Result<SimilarityScale> {
    if !(g_phys > 0.0 && kappa_i_phys > 0.0 && g_hat > 0.0 && kappa_i_hat > 0.0) {
        return Err(SolverError::Config("similarity inputs must be positive".into()));
    }
    let c_over_tau = g_phys / g_hat;
    let c_times_tau = kappa_i_hat / kappa_i_phys;
    Ok(SimilarityScale {
        c: (c_over_tau * c_times_tau).sqrt(),
        tau: (c_times_tau / c_over_tau).sqrt(),
        c_over_tau,
        c_times_tau,
    })
}

/// Ratio of interphase exchange force to buoyancy in the gas momentum
/// equation under the CGW closure. Dimensionless, so it takes the same value
/// in physical and lattice units.
pub fn momentum_ratio(kappa_i: f64, alpha_g_ref: f64, u_g_ref: f64, u_l_ref: f64, r: f64, g: f64) -> f64 {
    let slip = u_g_ref - u_l_ref;
    kappa_i * cgw_lambda(alpha_g_ref, r) * slip * slip / alpha_g_ref / ((r - 1.0) * g)
}
