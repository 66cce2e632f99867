//! Manufactured-field oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use twophase_lbm::lattice::{equilibrium_incompressible, equilibrium_standard, moments, CS2};
use twophase_lbm::lbm::closures::{alpha_gradient_over_alpha, alpha_relaxation, relaxation_from_viscosity, stress_1d};
use twophase_lbm::lbm::schemes::{alpha_collide_stream, beta_source_step, hydro_collide_stream, Edges};
use twophase_lbm::lbm::{DistributionField, SchemeId};
use twophase_lbm::BulkStrategy;

pub fn centres(n: usize) -> Vec<f64> {
    (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect()
}

/// Max error of `S / eps^2` from the source scheme against the exact
/// derivative of the diffusively scaled flux `c = eps C(x)`. `C` has zero
/// curvature at both ends, so the extrapolated edges stay second order.
pub fn beta_source_error(n: usize) -> f64 {
    let eps = 1.0 / n as f64;
    let big_c = |x: f64| 0.4 + 0.3 * (PI * x).sin() + 0.2 * x;
    let dc = |x: f64| 0.3 * PI * (PI * x).cos() + 0.2;
    let x = centres(n);
    let c: Vec<f64> = x.iter().map(|&x| eps * big_c(x)).collect();
    let mut dst = DistributionField::uniform(SchemeId::FbetaG, n, [0.0; 3]);
    let mut s = vec![0.0; n];
    beta_source_step(&c, &mut dst, &mut s);
    x.iter().zip(&s).map(|(&x, s)| (s / (eps * eps) - dc(x)).abs()).fold(0.0, f64::max)
}

/// Relax populations towards a frozen equilibrium field on a periodic ring
/// until they stop changing.
fn stationary<F>(n: usize, scheme: SchemeId, feq: &[[f64; 3]], mut step: F) -> DistributionField
where
    F: FnMut(&DistributionField, &mut DistributionField),
{
    let mut a = DistributionField::uniform(scheme, n, [0.0; 3]);
    a.values.copy_from_slice(feq);
    let mut b = a.clone();
    for _ in 0..1_000_000 {
        step(&a, &mut b);
        let change = a.values.iter().zip(&b.values).flat_map(|(p, q)| (0..3).map(move |k| (p[k] - q[k]).abs())).fold(0.0, f64::max);
        std::mem::swap(&mut a, &mut b);
        if change < 1e-17 {
            break;
        }
    }
    a
}

/// Max error of the reconstructed stress against `nu du/dx` for a periodic
/// manufactured gas field, normalized by `max |nu du/dx|`.
pub fn stress_error(n: usize) -> f64 {
    let eps = 1.0 / n as f64;
    let nu = 1.1667;
    let (omega, psi) = relaxation_from_viscosity(nu, BulkStrategy::D1Smooth).unwrap();
    let x = centres(n);
    let e: Vec<f64> = x.iter().map(|&x| 1.0 + eps * eps * 0.3 * (2.0 * PI * x).cos()).collect();
    let u: Vec<f64> = x.iter().map(|&x| eps * (0.5 + 0.4 * (2.0 * PI * x).sin())).collect();
    let exact: Vec<f64> = x.iter().map(|&x| nu * eps * eps * 0.4 * 2.0 * PI * (2.0 * PI * x).cos()).collect();
    let feq: Vec<[f64; 3]> = (0..n).map(|i| equilibrium_incompressible(1.0, e[i], u[i])).collect();
    let zero = vec![0.0; n];
    let f = stationary(n, SchemeId::Fg, &feq, |a, b| hydro_collide_stream(a, b, &e, &u, None, &zero, &zero, omega, psi, &Edges::Periodic));
    let scale = exact.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    (0..n)
        .map(|i| {
            let pi = moments(&f.values[i]).m2;
            let pi_eq = CS2 * e[i] + u[i] * u[i];
            (stress_1d(pi, pi_eq, 0.0, omega, psi) - exact[i]).abs() / scale
        })
        .fold(0.0, f64::max)
}

/// Max error of `(1/alpha) d alpha/dx` reconstructed from the volume-fraction
/// scheme's first moment, normalized by the largest exact value.
pub fn alpha_gradient_error(n: usize) -> f64 {
    let eps = 1.0 / n as f64;
    let omega_alpha = alpha_relaxation(1.0, eps);
    let x = centres(n);
    let a: Vec<f64> = x.iter().map(|&x| 0.5 + 0.3 * (2.0 * PI * x).sin()).collect();
    let u: Vec<f64> = x.iter().map(|&x| eps * (0.6 + 0.2 * (2.0 * PI * x).cos())).collect();
    let exact: Vec<f64> = x.iter().zip(&a).map(|(&x, a)| eps * 0.3 * 2.0 * PI * (2.0 * PI * x).cos() / a).collect();
    let feq: Vec<[f64; 3]> = (0..n).map(|i| equilibrium_standard(a[i], u[i])).collect();
    let f = stationary(n, SchemeId::FalphaG, &feq, |src, dst| {
        alpha_collide_stream(src, dst, &a, &u, omega_alpha, &Edges::Periodic);
    });
    let scale = exact.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    (0..n)
        .map(|i| {
            let upsilon = moments(&f.values[i]).m1 / a[i];
            (alpha_gradient_over_alpha(u[i], upsilon, omega_alpha) - exact[i]).abs() / scale
        })
        .fold(0.0, f64::max)
}

/// Error ratios `e(n) / e(2n)` for `n` in `sizes`.
pub fn shrink_ratios(err: fn(usize) -> f64, sizes: &[usize]) -> Vec<(usize, f64, f64)> {
    sizes.iter().map(|&n| (n, err(n), err(n) / err(2 * n))).collect()
}

/// Largest absolute violation of the equilibrium moment identities, the
/// generic moment sums and the `eta` weighting at one input point.
pub fn moment_identity_violation(alpha: f64, u: f64, phi: f64, e: f64, psi: f64, s: f64, g: f64) -> f64 {
    use twophase_lbm::lattice::{equilibrium_linearized, D1Q3};
    let check = |f: [f64; 3], m: [f64; 3]| {
        let mm = moments(&f);
        let generic = (0..3).fold([0.0; 3], |acc, q| {
            let v = D1Q3.velocities[q] as f64;
            [acc[0] + f[q], acc[1] + v * f[q], acc[2] + v * v * f[q]]
        });
        [mm.m0 - m[0], mm.m1 - m[1], mm.m2 - m[2], mm.m0 - generic[0], mm.m1 - generic[1], mm.m2 - generic[2]]
            .iter()
            .fold(0.0_f64, |a, d| a.max(d.abs()))
    };
    let eta: f64 = (0..3).map(|q| D1Q3.weights[q] * D1Q3.eta(q, phi)).sum();
    check(equilibrium_standard(alpha, u), [alpha, alpha * u, alpha * (CS2 + u * u)])
        .max(check(equilibrium_incompressible(phi, e, u), [e, u, phi * CS2 * e + u * u]))
        .max(check(equilibrium_linearized(psi, s, g), [s, g, psi * CS2 * s]))
        .max((eta - 1.0).abs())
}
