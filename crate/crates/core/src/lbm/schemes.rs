//! Distribution storage and the collide/stream kernels.

use super::boundary::{boundary_transfer, EdgeTransfer, Side};
use crate::error::{Result, SolverError};
use crate::lattice::{equilibrium_incompressible, equilibrium_linearized, equilibrium_standard, EAST, Q, REST, WEST};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    Fg,
    Fl,
    FalphaG,
    FalphaL,
    FbetaG,
    FbetaL,
}

impl SchemeId {
    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Fg => "f_g",
            SchemeId::Fl => "f_l",
            SchemeId::FalphaG => "f_alpha_g",
            SchemeId::FalphaL => "f_alpha_l",
            SchemeId::FbetaG => "f_beta_g",
            SchemeId::FbetaL => "f_beta_l",
        }
    }
}

/// `N_x x 3` populations of one scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionField {
    pub scheme: SchemeId,
    pub values: Vec<[f64; Q]>,
}

impl DistributionField {
    pub fn uniform(scheme: SchemeId, nx: usize, f: [f64; Q]) -> Self {
        Self { scheme, values: vec![f; nx] }
    }

    pub fn nx(&self) -> usize {
        self.values.len()
    }

    pub fn check_finite(&self, step: u64) -> Result<()> {
        match self.values.iter().position(|f| !f.iter().all(|x| x.is_finite())) {
            Some(node) => Err(SolverError::NonFinite { field: self.scheme.name(), node, step }),
            None => Ok(()),
        }
    }
}

/// Edge treatment of a streaming pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edges {
    Periodic,
    Open { inlet: EdgeTransfer, outlet: EdgeTransfer },
}

/// Collide every node with `post` and stream into `dst`.
///
/// `post(i, f)` returns the post-collision population at node `i`. Reads come
/// only from `src`, writes only go to `dst`.
pub fn collide_stream<F>(src: &DistributionField, dst: &mut DistributionField, mut post: F, edges: &Edges)
where
    F: FnMut(usize, &[f64; Q]) -> [f64; Q],
{
    let n = src.values.len();
    debug_assert_eq!(n, dst.values.len());
    let out = &mut dst.values;
    let mut first = [0.0; Q];
    let mut last = [0.0; Q];
    for (i, f) in src.values.iter().enumerate() {
        let fs = post(i, f);
        out[i][REST] = fs[REST];
        if i + 1 < n {
            out[i + 1][EAST] = fs[EAST];
        }
        if i > 0 {
            out[i - 1][WEST] = fs[WEST];
        }
        if i == 0 {
            first = fs;
        }
        if i == n - 1 {
            last = fs;
        }
    }
    match edges {
        Edges::Periodic => {
            out[0][EAST] = last[EAST];
            out[n - 1][WEST] = first[WEST];
        }
        Edges::Open { inlet, outlet } => {
            out[0][EAST] = boundary_transfer(inlet, &first, Side::Inlet.leaving());
            out[n - 1][WEST] = boundary_transfer(outlet, &last, Side::Outlet.leaving());
        }
    }
}

/// Hydrodynamic update with incompressible equilibrium and linearized forcing.
///
/// `phi` is `None` for the gas (phi = 1).
#[allow(clippy::too_many_arguments)]
pub fn hydro_collide_stream(
    src: &DistributionField,
    dst: &mut DistributionField,
    eps: &[f64],
    u: &[f64],
    phi: Option<&[f64]>,
    source: &[f64],
    force: &[f64],
    omega: f64,
    psi: f64,
    edges: &Edges,
) {
    collide_stream(
        src,
        dst,
        |i, f| {
            let p = phi.map_or(1.0, |p| p[i]);
            let feq = equilibrium_incompressible(p, eps[i], u[i]);
            let fl = equilibrium_linearized(psi, source[i], force[i]);
            [
                f[0] + omega * (feq[0] - f[0]) + fl[0],
                f[1] + omega * (feq[1] - f[1]) + fl[1],
                f[2] + omega * (feq[2] - f[2]) + fl[2],
            ]
        },
        edges,
    );
}

/// Volume-fraction update; returns the largest per-node change of the zeroth
/// moment across collision.
pub fn alpha_collide_stream(
    src: &DistributionField,
    dst: &mut DistributionField,
    alpha: &[f64],
    u: &[f64],
    omega_alpha: f64,
    edges: &Edges,
) -> f64 {
    let mut drift: f64 = 0.0;
    collide_stream(
        src,
        dst,
        |i, f| {
            let feq = equilibrium_standard(alpha[i], u[i]);
            let fs = [
                f[0] + omega_alpha * (feq[0] - f[0]),
                f[1] + omega_alpha * (feq[1] - f[1]),
                f[2] + omega_alpha * (feq[2] - f[2]),
            ];
            drift = drift.max(((fs[0] + fs[1] + fs[2]) - (f[0] + f[1] + f[2])).abs());
            fs
        },
        edges,
    );
    drift
}

/// Lattice-kinetic divergence: stream `f_S^eq(1, c)` with full-way
/// extrapolated equilibrium edges and return `S = 1 - sum f` per node.
///
/// `dst` receives the streamed populations, `s` the sources.
pub fn beta_source_step(c: &[f64], dst: &mut DistributionField, s: &mut [f64]) {
    let n = c.len();
    let ghost_in = 2.0 * c[0] - c[1];
    let ghost_out = 2.0 * c[n - 1] - c[n - 2];
    let beta_b = 1.0; // full-way extrapolation of a uniform beta
    for i in 0..n {
        let left = if i == 0 { ghost_in } else { c[i - 1] };
        let right = if i + 1 == n { ghost_out } else { c[i + 1] };
        let f = [
            equilibrium_standard(1.0, c[i])[REST],
            equilibrium_standard(if i == 0 { beta_b } else { 1.0 }, left)[EAST],
            equilibrium_standard(if i + 1 == n { beta_b } else { 1.0 }, right)[WEST],
        ];
        dst.values[i] = f;
        s[i] = 1.0 - (f[0] + f[1] + f[2]);
    }
}
