use super::boundary::{edge_value, BoundaryRule, EdgeTransfer, Side};
use super::closures::{
    alpha_gradient, compute_forces, compute_phi, drag_coefficients, gradient_symmetrize, inlet_ramp,
    relaxation_from_viscosity, spalding_bound, stabilize_sources, stress_1d, ForceInputs, ALPHA_FLOOR,
};
use super::schemes::{alpha_collide_stream, beta_source_step, hydro_collide_stream, DistributionField, Edges, SchemeId};
use super::closures::alpha_relaxation;
use crate::config::ScenarioConfig;
use crate::error::{Result, SolverError};
use crate::lattice::{equilibrium_incompressible, equilibrium_standard, moments, CS2, D1Q3, Q, REST};

/// Largest admissible magnitude of a continuity source.
const SOURCE_LIMIT: f64 = 0.1;

/// Macroscopic fields at one time level, one entry per node.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TwoPhaseState {
    pub eps_g: Vec<f64>,
    pub eps_l: Vec<f64>,
    pub u_g: Vec<f64>,
    pub u_l: Vec<f64>,
    pub alpha_g: Vec<f64>,
    pub alpha_l: Vec<f64>,
    pub upsilon_g: Vec<f64>,
    pub upsilon_l: Vec<f64>,
    /// Raw continuity sources from the source schemes.
    pub s_g: Vec<f64>,
    pub s_l: Vec<f64>,
    /// Stabilized, frozen sources fed to the hydrodynamic schemes.
    pub s_frozen_g: Vec<f64>,
    pub s_frozen_l: Vec<f64>,
    pub sigma_g: Vec<f64>,
    pub sigma_l: Vec<f64>,
    /// Symmetrized volume-fraction gradients (not divided by alpha).
    pub grad_g: Vec<f64>,
    pub grad_l: Vec<f64>,
    pub force_g: Vec<f64>,
    pub force_l: Vec<f64>,
    pub phi: Vec<f64>,
    pub p_k: Vec<f64>,
}

impl TwoPhaseState {
    fn zeros(n: usize) -> Self {
        let z = || vec![0.0; n];
        Self {
            eps_g: z(),
            eps_l: z(),
            u_g: z(),
            u_l: z(),
            alpha_g: z(),
            alpha_l: z(),
            upsilon_g: z(),
            upsilon_l: z(),
            s_g: z(),
            s_l: z(),
            s_frozen_g: z(),
            s_frozen_l: z(),
            sigma_g: z(),
            sigma_l: z(),
            grad_g: z(),
            grad_l: z(),
            force_g: z(),
            force_l: z(),
            phi: z(),
            p_k: z(),
        }
    }

    pub fn nx(&self) -> usize {
        self.alpha_g.len()
    }

    /// `alpha_g u_g + alpha_l u_l` per node.
    pub fn mixture_flux(&self) -> Vec<f64> {
        (0..self.nx())
            .map(|i| self.alpha_g[i] * self.u_g[i] + self.alpha_l[i] * self.u_l[i])
            .collect()
    }
}

/// Worst violations of the discrete invariants seen so far.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InvariantLog {
    pub steps_checked: u64,
    /// max |alpha_g + alpha_l - 1| after bounding.
    pub alpha_sum: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// max |grad_g + grad_l| after symmetrization.
    pub gradient_sum: f64,
    /// max per-node change of the volume-fraction zeroth moment across collision.
    pub alpha_collision_drift: f64,
}

/// Outcome of preparing one time level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub step: u64,
    /// Max change of the macroscopic fields since the previous time level.
    pub max_change: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Inlet {
    alpha_g: f64,
    u_g: f64,
    u_l: f64,
}

/// The coupled six-scheme solver.
#[derive(Debug, Clone)]
pub struct LbmSolver {
    config: ScenarioConfig,
    r: f64,
    omega_g: f64,
    psi_g: f64,
    omega_l: f64,
    psi_l: f64,
    omega_alpha: f64,
    f_g: DistributionField,
    f_l: DistributionField,
    f_ag: DistributionField,
    f_al: DistributionField,
    f_bg: DistributionField,
    f_bl: DistributionField,
    scratch: DistributionField,
    state: TwoPhaseState,
    m1_ag: Vec<f64>,
    m1_al: Vec<f64>,
    flux_g: Vec<f64>,
    flux_l: Vec<f64>,
    source_cache: Vec<[f64; 2]>,
    lambda_cache: Vec<f64>,
    previous: Vec<f64>,
    inlet: Inlet,
    step: u64,
    prepared: bool,
    track: bool,
    log: InvariantLog,
}

impl LbmSolver {
    /// Uniform start: equilibria with `eps = 1`, `u = 0`, `alpha_g = alpha_g^min`, `beta = 1`.
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let n = config.nx;
        let (omega_g, psi_g) = relaxation_from_viscosity(config.nu_g, config.bulk_strategy)?;
        let (omega_l, psi_l) = relaxation_from_viscosity(config.nu_l, config.bulk_strategy)?;
        let omega_alpha = alpha_relaxation(config.chi_alpha, config.epsilon());
        let a0 = config.alpha_g.min;
        let rest = equilibrium_incompressible(1.0, 1.0, 0.0);
        Ok(Self {
            r: config.density_ratio(),
            omega_g,
            psi_g,
            omega_l,
            psi_l,
            omega_alpha,
            f_g: DistributionField::uniform(SchemeId::Fg, n, rest),
            f_l: DistributionField::uniform(SchemeId::Fl, n, rest),
            f_ag: DistributionField::uniform(SchemeId::FalphaG, n, equilibrium_standard(a0, 0.0)),
            f_al: DistributionField::uniform(SchemeId::FalphaL, n, equilibrium_standard(1.0 - a0, 0.0)),
            f_bg: DistributionField::uniform(SchemeId::FbetaG, n, equilibrium_standard(1.0, 0.0)),
            f_bl: DistributionField::uniform(SchemeId::FbetaL, n, equilibrium_standard(1.0, 0.0)),
            scratch: DistributionField::uniform(SchemeId::Fg, n, [0.0; Q]),
            state: TwoPhaseState::zeros(n),
            m1_ag: vec![0.0; n],
            m1_al: vec![0.0; n],
            flux_g: vec![0.0; n],
            flux_l: vec![0.0; n],
            source_cache: vec![[0.0; 2]; n],
            lambda_cache: vec![0.0; n],
            previous: Vec::new(),
            inlet: Inlet::default(),
            step: 0,
            prepared: false,
            track: false,
            log: InvariantLog { alpha_min: f64::INFINITY, alpha_max: f64::NEG_INFINITY, ..Default::default() },
            config,
        })
    }

    /// Record invariant violations at every step (costs one extra pass).
    pub fn track_invariants(&mut self, on: bool) {
        self.track = on;
    }

    pub fn invariants(&self) -> &InvariantLog {
        &self.log
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    /// Current time level `t`.
    pub fn time(&self) -> u64 {
        self.step
    }

    /// `(omega, psi)` of the gas and liquid schemes and the volume-fraction relaxation.
    pub fn relaxation(&self) -> ((f64, f64), (f64, f64), f64) {
        ((self.omega_g, self.psi_g), (self.omega_l, self.psi_l), self.omega_alpha)
    }

    pub fn distribution(&self, id: SchemeId) -> &DistributionField {
        match id {
            SchemeId::Fg => &self.f_g,
            SchemeId::Fl => &self.f_l,
            SchemeId::FalphaG => &self.f_ag,
            SchemeId::FalphaL => &self.f_al,
            SchemeId::FbetaG => &self.f_bg,
            SchemeId::FbetaL => &self.f_bl,
        }
    }

    /// Macroscopic state of the current time level; valid after [`Self::prepare`].
    pub fn state(&self) -> &TwoPhaseState {
        &self.state
    }

    /// Inlet values `(alpha_g, u_g, u_l)` of the current time level.
    pub fn inlet_values(&self) -> (f64, f64, f64) {
        (self.inlet.alpha_g, self.inlet.u_g, self.inlet.u_l)
    }

    /// Advance one time step.
    pub fn step(&mut self) -> Result<StepReport> {
        let report = self.prepare()?;
        self.collide_stream()?;
        Ok(report)
    }

    /// Compute every macroscopic field of the current time level (ramp,
    /// moments, bounding, sources, stabilizers, stresses, gradients, drag and
    /// forces). Repeated calls at the same level are no-ops.
    pub fn prepare(&mut self) -> Result<StepReport> {
        if self.prepared {
            return Ok(StepReport { step: self.step, max_change: 0.0 });
        }
        let t = self.step;
        let c = &self.config;
        let n = c.nx;
        let r = self.r;
        let ng = c.n_gamma;
        self.inlet = Inlet {
            alpha_g: inlet_ramp(t, c.n_ramp, c.alpha_g.min, c.alpha_g.max),
            u_g: inlet_ramp(t, c.n_ramp, c.u_g.min, c.u_g.max),
            u_l: inlet_ramp(t, c.n_ramp, c.u_l.min, c.u_l.max),
        };

        let st = &mut self.state;
        let w = D1Q3.weights;
        for i in 0..n {
            let mg = moments(&self.f_g.values[i]);
            let ml = moments(&self.f_l.values[i]);
            st.eps_g[i] = mg.m0;
            st.u_g[i] = mg.m1;
            st.eps_l[i] = ml.m0;
            st.u_l[i] = ml.m1;
            let fa = &mut self.f_ag.values[i];
            let ma = moments(fa);
            let fb = &mut self.f_al.values[i];
            let mb = moments(fb);
            if !(mg.m0.is_finite() && mg.m1.is_finite() && ml.m0.is_finite() && ml.m1.is_finite()) {
                return Err(SolverError::NonFinite { field: "hydrodynamic moments", node: i, step: t });
            }
            if !(ma.m0.is_finite() && mb.m0.is_finite() && ma.m1.is_finite() && mb.m1.is_finite()) {
                return Err(SolverError::NonFinite { field: "volume fraction", node: i, step: t });
            }
            for u in [mg.m1, ml.m1] {
                if u.abs() >= 1.0 {
                    return Err(SolverError::Supersonic { node: i, value: u });
                }
            }
            let (ag, al) = spalding_bound(ma.m0, mb.m0).ok_or(SolverError::DegenerateVolumeFraction {
                node: i,
                alpha_g: ma.m0,
                alpha_l: mb.m0,
            })?;
            // shift the populations so that their zeroth moment is the bounded value;
            // the first moment is untouched since the lattice weights are symmetric
            let (dg, dl) = (ag - ma.m0, al - mb.m0);
            if dg != 0.0 || dl != 0.0 {
                for q in 0..Q {
                    fa[q] += w[q] * dg;
                    fb[q] += w[q] * dl;
                }
            }
            st.alpha_g[i] = ag;
            st.alpha_l[i] = al;
            self.m1_ag[i] = ma.m1;
            self.m1_al[i] = mb.m1;
            st.upsilon_g[i] = ma.m1 / ag.max(ALPHA_FLOOR);
            st.upsilon_l[i] = mb.m1 / al.max(ALPHA_FLOOR);
            st.phi[i] = compute_phi(mg.m0, ml.m0, r).map_err(|_| SolverError::NonPositiveLiquidDensity {
                node: i,
                eps_l: ml.m0,
            })?;
            st.p_k[i] = CS2 * mg.m0;
            self.flux_g[i] = al * (mg.m1 - ml.m1);
            self.flux_l[i] = ag * (ml.m1 - mg.m1);
        }

        beta_source_step(&self.flux_g, &mut self.f_bg, &mut st.s_g);
        beta_source_step(&self.flux_l, &mut self.f_bl, &mut st.s_l);

        let oa = self.omega_alpha;
        let mut change: f64 = 0.0;
        let first = self.previous.is_empty();
        if first {
            self.previous = vec![0.0; 5 * n];
        }
        for i in 0..n {
            for (k, s) in [st.s_g[i], st.s_l[i]].into_iter().enumerate() {
                if !(s.abs() <= SOURCE_LIMIT) {
                    let _ = k;
                    return Err(SolverError::SourceOutOfScaling { node: i, value: s });
                }
            }
            let (sg, sl) = stabilize_sources(
                st.s_g[i],
                st.s_l[i],
                st.eps_g[i],
                st.u_g[i],
                st.u_l[i],
                c.gamma,
                r,
                t,
                ng,
                &mut self.source_cache[i],
            );
            st.s_frozen_g[i] = sg;
            st.s_frozen_l[i] = sl;

            let fg = &self.f_g.values[i];
            let fl = &self.f_l.values[i];
            let pi_eq_g = CS2 * st.eps_g[i] + st.u_g[i] * st.u_g[i];
            let pi_eq_l = st.phi[i] * CS2 * st.eps_l[i] + st.u_l[i] * st.u_l[i];
            st.sigma_g[i] = stress_1d(fg[1] + fg[2], pi_eq_g, sg, self.omega_g, self.psi_g);
            st.sigma_l[i] = stress_1d(fl[1] + fl[2], pi_eq_l, sl, self.omega_l, self.psi_l);

            let gg = alpha_gradient(st.alpha_g[i], st.u_g[i], self.m1_ag[i], oa);
            let gl = alpha_gradient(st.alpha_l[i], st.u_l[i], self.m1_al[i], oa);
            let (gg, gl) = gradient_symmetrize(gg, gl);
            st.grad_g[i] = gg;
            st.grad_l[i] = gl;

            let (k_i, k_w) = drag_coefficients(st.alpha_g[i], c.drag, r, t, ng, &mut self.lambda_cache[i]);
            let (force_g, force_l) = compute_forces(
                &ForceInputs {
                    alpha_g: st.alpha_g[i],
                    alpha_l: st.alpha_l[i],
                    u_g: st.u_g[i],
                    u_l: st.u_l[i],
                    s_g: sg,
                    s_l: sl,
                    sigma_g: st.sigma_g[i],
                    sigma_l: st.sigma_l[i],
                    grad_g: gg,
                    grad_l: gl,
                    k_i,
                    k_w,
                },
                r,
                c.g_hat,
            );
            if !(force_g.is_finite() && force_l.is_finite()) {
                return Err(SolverError::NonFinite { field: "force", node: i, step: t });
            }
            st.force_g[i] = force_g;
            st.force_l[i] = force_l;

            let now = [st.alpha_g[i], st.u_g[i], st.u_l[i], st.eps_g[i], st.eps_l[i]];
            for (k, v) in now.into_iter().enumerate() {
                let p = &mut self.previous[5 * i + k];
                change = change.max((v - *p).abs());
                *p = v;
            }
        }
        if first {
            change = f64::INFINITY;
        }

        if self.track {
            let log = &mut self.log;
            log.steps_checked += 1;
            for i in 0..n {
                log.alpha_sum = log.alpha_sum.max((st.alpha_g[i] + st.alpha_l[i] - 1.0).abs());
                log.alpha_min = log.alpha_min.min(st.alpha_g[i].min(st.alpha_l[i]));
                log.alpha_max = log.alpha_max.max(st.alpha_g[i].max(st.alpha_l[i]));
                log.gradient_sum = log.gradient_sum.max((st.grad_g[i] + st.grad_l[i]).abs());
            }
        }
        self.prepared = true;
        Ok(StepReport { step: t, max_change: change })
    }

    fn edge(&self, id: SchemeId, side: Side) -> EdgeTransfer {
        let rule = BoundaryRule::for_scheme(id, side);
        let st = &self.state;
        let (density, velocity, dir_rho, dir_u): (&[f64], &[f64], f64, f64) = match id {
            SchemeId::Fg => (&st.eps_g, &st.u_g, 1.0, self.inlet.u_g),
            SchemeId::Fl => (&st.eps_l, &st.u_l, 1.0, self.inlet.u_l),
            SchemeId::FalphaG => (&st.alpha_g, &st.u_g, self.inlet.alpha_g, self.inlet.u_g),
            SchemeId::FalphaL => (&st.alpha_l, &st.u_l, 1.0 - self.inlet.alpha_g, self.inlet.u_l),
            SchemeId::FbetaG | SchemeId::FbetaL => unreachable!("source schemes stream their own edges"),
        };
        let rho = edge_value(rule.density_source, dir_rho, density, side);
        let u = edge_value(rule.velocity_source, dir_u, velocity, side);
        let phi = match id {
            SchemeId::Fl => {
                let eg = edge_value(rule.density_source, 1.0, &st.eps_g, side);
                (1.0 + (eg - 1.0) / self.r) / rho
            }
            _ => 1.0,
        };
        EdgeTransfer { transfer: rule.transfer, family: rule.family, phi, density: rho, velocity: u }
    }

    fn edges(&self, id: SchemeId) -> Edges {
        Edges::Open { inlet: self.edge(id, Side::Inlet), outlet: self.edge(id, Side::Outlet) }
    }

    /// Collide, force and stream the hydrodynamic and volume-fraction schemes,
    /// advancing to the next time level.
    pub fn collide_stream(&mut self) -> Result<()> {
        if !self.prepared {
            self.prepare()?;
        }
        let st = &self.state;
        let e = self.edges(SchemeId::Fg);
        self.scratch.scheme = SchemeId::Fg;
        hydro_collide_stream(&self.f_g, &mut self.scratch, &st.eps_g, &st.u_g, None, &st.s_frozen_g, &st.force_g, self.omega_g, self.psi_g, &e);
        std::mem::swap(&mut self.f_g, &mut self.scratch);

        let e = self.edges(SchemeId::Fl);
        self.scratch.scheme = SchemeId::Fl;
        hydro_collide_stream(&self.f_l, &mut self.scratch, &st.eps_l, &st.u_l, Some(&st.phi), &st.s_frozen_l, &st.force_l, self.omega_l, self.psi_l, &e);
        std::mem::swap(&mut self.f_l, &mut self.scratch);
        anchor_liquid_density(&mut self.f_l, self.config.epsilon().powi(2));

        let e = self.edges(SchemeId::FalphaG);
        self.scratch.scheme = SchemeId::FalphaG;
        let d1 = alpha_collide_stream(&self.f_ag, &mut self.scratch, &st.alpha_g, &st.u_g, self.omega_alpha, &e);
        std::mem::swap(&mut self.f_ag, &mut self.scratch);

        let e = self.edges(SchemeId::FalphaL);
        self.scratch.scheme = SchemeId::FalphaL;
        let d2 = alpha_collide_stream(&self.f_al, &mut self.scratch, &st.alpha_l, &st.u_l, self.omega_alpha, &e);
        std::mem::swap(&mut self.f_al, &mut self.scratch);

        if self.track {
            self.log.alpha_collision_drift = self.log.alpha_collision_drift.max(d1).max(d2);
        }
        self.step += 1;
        self.prepared = false;
        Ok(())
    }
}

/// Relax the liquid density towards 1 through the rest population only.
///
/// The moving liquid populations, the stress and the forces only see
/// `phi eps_l`, so `eps_l` itself is passive: it integrates the O(eps^2)
/// mismatch between the discrete liquid and gas continuity balances without
/// any restoring mechanism and would drift without bound over long runs.
/// Anchoring it on the diffusive time scale `1/rate = N_x^2` keeps it at
/// `1 + O(eps)` and leaves every other field bit-for-bit unchanged.
fn anchor_liquid_density(f: &mut DistributionField, rate: f64) {
    for fi in &mut f.values {
        let m0 = fi[0] + fi[1] + fi[2];
        fi[REST] -= rate * (m0 - 1.0);
    }
}
