//! Physical and numerical parameters of one run.

use crate::error::{Result, SolverError};

/// Interphase and wall momentum-exchange closure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DragModel {
    /// Constant coefficients `K_I`, `K_W` (lattice units).
    Constant { k_i: f64, k_w: f64 },
    /// Clift-Grace-Weber: `K = kappa * Lambda(alpha_g)`, with `Lambda` frozen on the `n_gamma` grid.
    Cgw { kappa_i: f64, kappa_w: f64 },
}

impl DragModel {
    /// Rescale the lattice coefficients by `factor` (they scale linearly with the mesh ratio).
    pub fn scaled(self, factor: f64) -> Self {
        match self {
            DragModel::Constant { k_i, k_w } => DragModel::Constant { k_i: k_i * factor, k_w: k_w * factor },
            DragModel::Cgw { kappa_i, kappa_w } => DragModel::Cgw {
                kappa_i: kappa_i * factor,
                kappa_w: kappa_w * factor,
            },
        }
    }
}

/// How the free bulk-viscosity parameter is spent in one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BulkStrategy {
    /// `psi = 2 omega nu / c_s^2`, `d = 1`.
    D1Consistent,
    /// `psi = 0`, `d = 3`.
    D1Smooth,
}

/// Inlet ramp bounds for one quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampBounds {
    pub min: f64,
    pub max: f64,
}

impl RampBounds {
    pub const fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    fn scaled(self, factor: f64) -> Self {
        Self { min: self.min * factor, max: self.max * factor }
    }
}

/// Everything needed to run either engine.
///
/// All velocities, accelerations and drag coefficients are in lattice
/// (Boltzmann) units; viscosities and `chi_alpha` are the diffusive-scaling
/// invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub nx: usize,
    pub nt: u64,
    /// Ramp time constant `n_t` of the inlet `tanh` ramp.
    pub n_ramp: u64,
    pub rho_g0: f64,
    pub rho_l0: f64,
    pub nu_g: f64,
    pub nu_l: f64,
    pub g_hat: f64,
    pub drag: DragModel,
    /// Dashpot constant; zero disables the acoustic damping.
    pub gamma: f64,
    /// Freeze interval for sources and the CGW factor; 1 refreshes every step.
    pub n_gamma: u64,
    pub chi_alpha: f64,
    pub alpha_g: RampBounds,
    pub u_g: RampBounds,
    pub u_l: RampBounds,
    pub bulk_strategy: BulkStrategy,
}

impl ScenarioConfig {
    /// Density ratio `R = rho_l0 / rho_g0`.
    #[inline]
    pub fn density_ratio(&self) -> f64 {
        self.rho_l0 / self.rho_g0
    }

    /// Mesh ratio `epsilon = 1 / N_x`.
    #[inline]
    pub fn epsilon(&self) -> f64 {
        1.0 / self.nx as f64
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(SolverError::Config(m));
        if self.nx < 3 {
            return fail(format!("nx = {} < 3", self.nx));
        }
        if self.n_ramp == 0 || self.n_ramp >= self.nt {
            return fail(format!("need 0 < n_ramp < nt (n_ramp = {}, nt = {})", self.n_ramp, self.nt));
        }
        if !(self.rho_g0 > 0.0 && self.rho_l0 > 0.0) {
            return fail("phase densities must be positive".into());
        }
        if self.density_ratio() <= 1.0 {
            return fail(format!("density ratio {} must exceed 1", self.density_ratio()));
        }
        if !(self.nu_g > 0.0 && self.nu_l > 0.0) {
            return fail("viscosities must be positive".into());
        }
        if self.chi_alpha < 0.0 {
            return fail("chi_alpha must be non-negative".into());
        }
        if self.gamma < 0.0 {
            return fail("gamma must be non-negative".into());
        }
        if self.n_gamma == 0 {
            return fail("n_gamma must be at least 1".into());
        }
        for (name, r) in [("alpha_g", self.alpha_g), ("u_g", self.u_g), ("u_l", self.u_l)] {
            if !(r.min <= r.max) {
                return fail(format!("{name} ramp: min {} > max {}", r.min, r.max));
            }
        }
        if !(self.alpha_g.min > 0.0 && self.alpha_g.max < 1.0) {
            return fail("alpha_g ramp bounds must lie inside (0, 1)".into());
        }
        match self.drag {
            DragModel::Constant { k_i, k_w } if k_i < 0.0 || k_w < 0.0 => {
                fail("drag coefficients must be non-negative".into())
            }
            DragModel::Cgw { kappa_i, kappa_w } if kappa_i < 0.0 || kappa_w < 0.0 => {
                fail("drag coefficients must be non-negative".into())
            }
            _ => Ok(()),
        }
    }

    /// Diffusive rescaling of the mesh by `scale` (N_x -> scale * N_x).
    ///
    /// Velocities and drag coefficients follow `epsilon`, gravity `epsilon^3`,
    /// step counts `epsilon^-2`; viscosities, `chi_alpha` and `n_gamma` are
    /// unchanged.
    pub fn scaled(&self, scale: f64) -> Result<Self> {
        let nx = (self.nx as f64 * scale).round();
        if !(scale > 0.0) || (nx - self.nx as f64 * scale).abs() > 1e-9 {
            return Err(SolverError::Config(format!("scale {scale} does not map nx = {} to an integer", self.nx)));
        }
        let inv = 1.0 / scale;
        let steps = |n: u64| (n as f64 * scale * scale).round() as u64;
        let out = Self {
            nx: nx as usize,
            nt: steps(self.nt),
            n_ramp: steps(self.n_ramp),
            g_hat: self.g_hat * inv * inv * inv,
            drag: self.drag.scaled(inv),
            alpha_g: self.alpha_g,
            u_g: self.u_g.scaled(inv),
            u_l: self.u_l.scaled(inv),
            ..self.clone()
        };
        out.validate()?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ScenarioConfig {
        ScenarioConfig {
            nx: 200,
            nt: 6_000_000,
            n_ramp: 500_000,
            rho_g0: 1.2,
            rho_l0: 2.4,
            nu_g: 1.1667,
            nu_l: 1.1667,
            g_hat: 1e-6,
            drag: DragModel::Constant { k_i: 1e-2, k_w: 1e-2 },
            gamma: 0.0,
            n_gamma: 1,
            chi_alpha: 1.0,
            alpha_g: RampBounds::new(0.01, 0.8),
            u_g: RampBounds::new(0.001, 0.01),
            u_l: RampBounds::new(0.0, 0.001),
            bulk_strategy: BulkStrategy::D1Smooth,
        }
    }

    #[test]
    fn diffusive_rescaling() {
        let c = base().scaled(0.5).unwrap();
        assert_eq!(c.nx, 100);
        assert_eq!(c.nt, 1_500_000);
        assert_eq!(c.n_ramp, 125_000);
        assert!((c.g_hat - 8e-6).abs() < 1e-18);
        assert_eq!(c.drag, DragModel::Constant { k_i: 2e-2, k_w: 2e-2 });
        assert!((c.u_g.max - 0.02).abs() < 1e-15);
        assert_eq!(c.nu_g, 1.1667);
        assert_eq!(c.n_gamma, 1);
        let back = c.scaled(2.0).unwrap();
        assert_eq!(back.nx, 200);
        assert_eq!(back.nt, 6_000_000);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = base();
        c.rho_l0 = 1.0;
        assert!(c.validate().is_err());
        let mut c = base();
        c.n_ramp = c.nt;
        assert!(c.validate().is_err());
        let mut c = base();
        c.alpha_g = RampBounds::new(0.0, 0.8);
        assert!(c.validate().is_err());
        assert!(base().scaled(0.333).is_err());
    }
}
