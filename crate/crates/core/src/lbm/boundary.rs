//! Inlet/outlet rules for the six schemes.

use super::schemes::SchemeId;
use crate::lattice::{equilibrium, EquilibriumFamily, D1Q3, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transfer {
    /// Bounce-back: imposes the velocity.
    BB,
    /// Anti-bounce-back: imposes the density.
    ABB,
    /// Equilibrium: the incoming population is an equilibrium.
    EQ,
}

/// Where a boundary value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueSource {
    /// Prescribed inlet value (ramped).
    Dirichlet,
    /// `1.5 y(edge) - 0.5 y(edge -/+ 1)`.
    ExtrapolateHW,
    /// `2 y(edge) - y(edge -/+ 1)`.
    ExtrapolateFW,
    FixedOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inlet,
    Outlet,
}

impl Side {
    /// Direction leaving the domain through this side (`q*`).
    pub fn leaving(self) -> usize {
        match self {
            Side::Inlet => crate::lattice::WEST,
            Side::Outlet => crate::lattice::EAST,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryRule {
    pub transfer: Transfer,
    pub family: EquilibriumFamily,
    pub density_source: ValueSource,
    pub velocity_source: ValueSource,
}

impl BoundaryRule {
    /// The rule table for each scheme and side.
    pub fn for_scheme(scheme: SchemeId, side: Side) -> Self {
        use EquilibriumFamily::*;
        use SchemeId::*;
        use ValueSource::*;
        let rule = |transfer, family, density_source, velocity_source| BoundaryRule {
            transfer,
            family,
            density_source,
            velocity_source,
        };
        match (scheme, side) {
            (Fg | Fl, Side::Inlet) => rule(Transfer::BB, Incompressible, ExtrapolateHW, Dirichlet),
            (Fg | Fl, Side::Outlet) => rule(Transfer::ABB, Incompressible, FixedOne, ExtrapolateHW),
            (FalphaG | FalphaL, Side::Inlet) => rule(Transfer::EQ, Standard, Dirichlet, Dirichlet),
            (FalphaG | FalphaL, Side::Outlet) => rule(Transfer::ABB, Standard, ExtrapolateHW, ExtrapolateHW),
            (FbetaG | FbetaL, _) => rule(Transfer::EQ, Standard, ExtrapolateFW, ExtrapolateFW),
        }
    }
}

#[inline]
pub fn extrapolate_half_way(edge: f64, next: f64) -> f64 {
    1.5 * edge - 0.5 * next
}

#[inline]
pub fn extrapolate_full_way(edge: f64, next: f64) -> f64 {
    2.0 * edge - next
}

/// Boundary value of nodal field `y` on `side` according to `source`.
pub fn edge_value(source: ValueSource, dirichlet: f64, y: &[f64], side: Side) -> f64 {
    let n = y.len();
    let (edge, next) = match side {
        Side::Inlet => (y[0], y[1]),
        Side::Outlet => (y[n - 1], y[n - 2]),
    };
    match source {
        ValueSource::Dirichlet => dirichlet,
        ValueSource::ExtrapolateHW => extrapolate_half_way(edge, next),
        ValueSource::ExtrapolateFW => extrapolate_full_way(edge, next),
        ValueSource::FixedOne => 1.0,
    }
}

/// A rule with its boundary values resolved for the current step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeTransfer {
    pub transfer: Transfer,
    pub family: EquilibriumFamily,
    /// EOS factor for the incompressible family (ignored otherwise).
    pub phi: f64,
    pub density: f64,
    pub velocity: f64,
}

/// Incoming population at the edge node, in direction `BB(q*)`.
///
/// `f_star` is the post-collision population at the edge node and `q_star`
/// the direction leaving the domain.
pub fn boundary_transfer(rule: &EdgeTransfer, f_star: &[f64; Q], q_star: usize) -> f64 {
    let feq = |u: f64| equilibrium(rule.family, rule.phi, rule.density, u);
    match rule.transfer {
        Transfer::BB => f_star[q_star] + feq(-rule.velocity)[q_star] - feq(rule.velocity)[q_star],
        Transfer::ABB => -f_star[q_star] + feq(-rule.velocity)[q_star] + feq(rule.velocity)[q_star],
        Transfer::EQ => feq(rule.velocity)[D1Q3.opposite(q_star)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::*;

    #[test]
    fn table_sources_match_transfer_kind() {
        for s in [SchemeId::Fg, SchemeId::Fl, SchemeId::FalphaG, SchemeId::FalphaL, SchemeId::FbetaG, SchemeId::FbetaL] {
            for side in [Side::Inlet, Side::Outlet] {
                let r = BoundaryRule::for_scheme(s, side);
                let srcs = [r.density_source, r.velocity_source];
                match r.transfer {
                    Transfer::BB | Transfer::ABB => assert!(!srcs.contains(&ValueSource::ExtrapolateFW)),
                    Transfer::EQ => assert!(!srcs.contains(&ValueSource::ExtrapolateHW)),
                }
                let bulk = match s {
                    SchemeId::Fg | SchemeId::Fl => EquilibriumFamily::Incompressible,
                    _ => EquilibriumFamily::Standard,
                };
                assert_eq!(r.family, bulk, "{s:?} {side:?}");
            }
        }
    }

    #[test]
    fn bounce_back_at_rest_wall() {
        let rule = EdgeTransfer { transfer: Transfer::BB, family: EquilibriumFamily::Incompressible, phi: 1.0, density: 1.03, velocity: 0.0 };
        let f = [0.6, 0.2, 0.17];
        assert_eq!(boundary_transfer(&rule, &f, WEST), 0.17);
    }

    #[test]
    fn bounce_back_imposes_velocity() {
        // for an equilibrium population the incoming value completes the equilibrium at the wall velocity
        let u = 0.01;
        let f = equilibrium_incompressible(1.0, 1.0, u);
        let rule = EdgeTransfer { transfer: Transfer::BB, family: EquilibriumFamily::Incompressible, phi: 1.0, density: 1.0, velocity: u };
        let incoming = boundary_transfer(&rule, &f, WEST);
        assert!((incoming - f[EAST]).abs() < 1e-16);
    }

    #[test]
    fn anti_bounce_back_at_rest() {
        let rule = EdgeTransfer { transfer: Transfer::ABB, family: EquilibriumFamily::Incompressible, phi: 0.98, density: 1.0, velocity: 0.0 };
        let f = [0.6, 0.2, 0.17];
        let expect = -0.2 + 2.0 * equilibrium_incompressible(0.98, 1.0, 0.0)[EAST];
        assert!((boundary_transfer(&rule, &f, EAST) - expect).abs() < 1e-16);
    }

    #[test]
    fn equilibrium_rule() {
        let rule = EdgeTransfer { transfer: Transfer::EQ, family: EquilibriumFamily::Standard, phi: 0.0, density: 1.0, velocity: 0.0 };
        assert_eq!(boundary_transfer(&rule, &[9.0, 9.0, 9.0], WEST), 1.0 / 6.0);
        let rule = EdgeTransfer { velocity: 0.02, density: 0.4, ..rule };
        assert_eq!(boundary_transfer(&rule, &[9.0, 9.0, 9.0], EAST), equilibrium_standard(0.4, 0.02)[WEST]);
    }

    #[test]
    fn extrapolation() {
        let y = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(edge_value(ValueSource::ExtrapolateHW, 0.0, &y, Side::Inlet), 0.5);
        assert_eq!(edge_value(ValueSource::ExtrapolateFW, 0.0, &y, Side::Outlet), 5.0);
        assert_eq!(edge_value(ValueSource::Dirichlet, 7.0, &y, Side::Outlet), 7.0);
        assert_eq!(edge_value(ValueSource::FixedOne, 7.0, &y, Side::Inlet), 1.0);
    }
}
