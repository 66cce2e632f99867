//! D1Q3 lattice and the three equilibrium families used by the six schemes.
//!
//! Directions are stored in the order `{0, +1, -1}`. Every equilibrium is
//! evaluated in closed form for the 1D lattice; the moment identities are
//! exact up to floating-point rounding.

/// Lattice sound speed squared, `c_s^2 = 1/3`.
pub const CS2: f64 = 1.0 / 3.0;

/// Number of discrete velocities.
pub const Q: usize = 3;

/// Index of the rest direction.
pub const REST: usize = 0;
/// Index of the `+1` direction.
pub const EAST: usize = 1;
/// Index of the `-1` direction.
pub const WEST: usize = 2;

/// A velocity set with its quadrature weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub velocities: [i32; Q],
    pub weights: [f64; Q],
    pub sound_speed_sq: f64,
}

/// The D1Q3 lattice.
pub const D1Q3: LatticeSpec = LatticeSpec {
    velocities: [0, 1, -1],
    weights: [2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0],
    sound_speed_sq: CS2,
};

impl LatticeSpec {
    /// Index of the direction opposite to `q`.
    #[inline]
    pub fn opposite(&self, q: usize) -> usize {
        match q {
            REST => REST,
            EAST => WEST,
            _ => EAST,
        }
    }

    /// `eta_q(phi)`: the generalized-EOS weighting of the zeroth moment.
    pub fn eta(&self, q: usize, phi: f64) -> f64 {
        let w0 = self.weights[REST];
        if q == REST {
            1.0 + (1.0 - w0) / w0 * (1.0 - phi)
        } else {
            phi
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumFamily {
    /// `f_S^eq(alpha, u)`, used by the volume-fraction and source schemes.
    Standard,
    /// `f_I^eq(phi, eps, u)`, used by the hydrodynamic schemes.
    Incompressible,
    /// `f_L^eq(psi, S, G)`, the forcing operator.
    Linearized,
}

/// Standard equilibrium: all moments scale with `alpha`.
#[inline]
pub fn equilibrium_standard(alpha: f64, u: f64) -> [f64; Q] {
    let uu = 3.0 * u * u;
    [
        alpha * (2.0 / 3.0 - u * u),
        alpha * (1.0 + 3.0 * u + uu) / 6.0,
        alpha * (1.0 - 3.0 * u + uu) / 6.0,
    ]
}

/// Incompressible equilibrium with generalized equation of state `phi`.
///
/// The first moment is `u` independently of `eps`.
#[inline]
pub fn equilibrium_incompressible(phi: f64, eps: f64, u: f64) -> [f64; Q] {
    let ep = eps * phi;
    let uu = 3.0 * u * u;
    [
        eps * (3.0 - phi) / 3.0 - u * u,
        (ep + 3.0 * u + uu) / 6.0,
        (ep - 3.0 * u + uu) / 6.0,
    ]
}

/// Linearized equilibrium used as the forcing operator: zeroth moment `s`,
/// first moment `g`, second moment `psi c_s^2 s`.
#[inline]
pub fn equilibrium_linearized(psi: f64, s: f64, g: f64) -> [f64; Q] {
    let sp = s * psi;
    [s * (3.0 - psi) / 3.0, (sp + 3.0 * g) / 6.0, (sp - 3.0 * g) / 6.0]
}

/// Evaluate the equilibrium of a given family. For `Linearized` the
/// arguments are `(psi, S, G)`; for `Standard` the first argument is ignored.
#[inline]
pub fn equilibrium(family: EquilibriumFamily, phi: f64, density: f64, velocity: f64) -> [f64; Q] {
    match family {
        EquilibriumFamily::Standard => equilibrium_standard(density, velocity),
        EquilibriumFamily::Incompressible => equilibrium_incompressible(phi, density, velocity),
        EquilibriumFamily::Linearized => equilibrium_linearized(phi, density, velocity),
    }
}

/// Zeroth, first and second moments of a D1Q3 population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

#[inline]
pub fn moments(f: &[f64; Q]) -> Moments {
    Moments {
        m0: f[REST] + f[EAST] + f[WEST],
        m1: f[EAST] - f[WEST],
        m2: f[EAST] + f[WEST],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lattice_quadrature_is_exact() {
        let l = D1Q3;
        let s0: f64 = l.weights.iter().sum();
        let s1: f64 = l.weights.iter().zip(l.velocities).map(|(w, v)| w * v as f64).sum();
        let s2: f64 = l
            .weights
            .iter()
            .zip(l.velocities)
            .map(|(w, v)| w * (v * v) as f64)
            .sum();
        assert!(close(s0, 1.0, 1e-15));
        assert_eq!(s1, 0.0);
        assert!(close(s2, CS2, 1e-16));
        for q in 0..Q {
            assert_eq!(l.velocities[l.opposite(q)], -l.velocities[q]);
        }
    }

    #[test]
    fn standard_equilibrium_examples() {
        assert_eq!(equilibrium_standard(1.0, 0.0), [2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]);
        assert_eq!(equilibrium_standard(0.0, 0.5), [0.0, 0.0, 0.0]);
        let f = equilibrium_standard(0.8, 0.01);
        // 0.8 (2/3 - 1e-4), 0.8 (1.0303)/6, 0.8 (0.9703)/6
        assert!(close(f[0], 0.533253, 5e-7));
        assert!(close(f[1], 0.137373, 5e-7));
        assert!(close(f[2], 0.129373, 5e-7));
        let m = moments(&f);
        assert!(close(m.m0, 0.8, 1e-15));
        assert!(close(m.m1, 0.008, 1e-15));
        assert!(close(m.m2, 0.8 * (CS2 + 1e-4), 1e-15));
    }

    #[test]
    fn incompressible_equilibrium_examples() {
        let f = equilibrium_incompressible(1.0, 1.0, 0.0);
        for (a, b) in f.iter().zip([2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]) {
            assert!(close(*a, b, 1e-16));
        }
        let f = equilibrium_incompressible(1.0, 1.0, 0.01);
        assert!(close(f[0], 0.666567, 5e-7));
        assert!(close(f[1], 0.171717, 5e-7));
        assert!(close(f[2], 0.161717, 5e-7));
        assert!(close(moments(&f).m1, 0.01, 1e-16));
        let m = moments(&equilibrium_incompressible(0.9, 1.3, 0.02));
        assert!(close(m.m1, 0.02, 1e-16));
        assert!(close(m.m0, 1.3, 1e-15));
        assert!(close(m.m2, 0.9 * CS2 * 1.3 + 0.0004, 1e-15));
    }

    #[test]
    fn linearized_equilibrium_examples() {
        assert_eq!(equilibrium_linearized(0.7, 0.0, 0.0), [0.0, 0.0, 0.0]);
        for (a, b) in equilibrium_linearized(0.0, 0.3, 0.2).iter().zip([0.3, 0.1, -0.1]) {
            assert!(close(*a, b, 1e-16));
        }
        let f = equilibrium_linearized(1.0, 0.001, 0.0005);
        assert!(close(f[0], 0.000666667, 5e-10));
        assert!(close(f[1], 0.000416667, 5e-10));
        assert!(close(f[2], -0.000083333, 5e-10));
        let m = moments(&f);
        assert!(close(m.m0, 0.001, 1e-18));
        assert!(close(m.m1, 0.0005, 1e-18));
        assert!(close(m.m2, CS2 * 0.001, 1e-18));
    }

    #[test]
    fn moments_examples() {
        let m = moments(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]);
        assert!(close(m.m0, 1.0, 1e-15) && m.m1 == 0.0 && close(m.m2, CS2, 1e-16));
        let m = moments(&[0.0, 1.0, 0.0]);
        assert_eq!((m.m0, m.m1, m.m2), (1.0, 1.0, 1.0));
    }

    #[test]
    fn eta_weights_average_to_one() {
        for phi in [0.0, 0.3, 1.0, 1.7, 2.5] {
            let s: f64 = (0..Q).map(|q| D1Q3.weights[q] * D1Q3.eta(q, phi)).sum();
            assert!(close(s, 1.0, 1e-15), "phi={phi}: {s}");
        }
    }

    #[test]
    fn closed_forms_match_weighted_definitions() {
        // w_q [eps eta_q(phi) + v u / cs2 + (v^2 - cs2) u^2 / (2 cs2^2)]
        let l = D1Q3;
        for &(phi, eps, u) in &[(1.0, 1.0, 0.0), (0.93, 1.02, 0.013), (1.2, 0.7, -0.04)] {
            let f = equilibrium_incompressible(phi, eps, u);
            for q in 0..Q {
                let v = l.velocities[q] as f64;
                let g = l.weights[q]
                    * (eps * l.eta(q, phi) + v * u / CS2 + (v * v - CS2) * u * u / (2.0 * CS2 * CS2));
                assert!(close(f[q], g, 1e-15));
            }
            let fl = equilibrium_linearized(phi, eps, u);
            for q in 0..Q {
                let v = l.velocities[q] as f64;
                let g = l.weights[q] * (eps * l.eta(q, phi) + v * u / CS2);
                assert!(close(fl[q], g, 1e-15));
            }
            let fs = equilibrium_standard(eps, u);
            for q in 0..Q {
                let v = l.velocities[q] as f64;
                let g = l.weights[q] * eps * (1.0 + v * u / CS2 + (v * v - CS2) * u * u / (2.0 * CS2 * CS2));
                assert!(close(fs[q], g, 1e-15));
            }
        }
    }

    #[test]
    fn incompressible_and_standard_agree_at_unit_density() {
        for u in [0.0, 0.01, -0.03] {
            let a = moments(&equilibrium_incompressible(1.0, 1.0, u));
            let b = moments(&equilibrium_standard(1.0, u));
            assert!(close(a.m0, b.m0, 1e-15));
            assert!(close(a.m1, b.m1, 1e-15));
        }
    }
}
