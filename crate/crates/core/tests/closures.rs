use proptest::prelude::*;
use twophase_lbm::analytics::{momentum_ratio, similarity_scale, steady_liquid_velocity, steady_liquid_velocity_unit_r};
use twophase_lbm::lattice::equilibrium_standard;
use twophase_lbm::lbm::closures::{gradient_symmetrize, inlet_ramp, spalding_bound, stabilize_sources};
use twophase_lbm::lbm::schemes::{alpha_collide_stream, Edges};
use twophase_lbm::lbm::{DistributionField, SchemeId};

proptest! {
    #[test]
    fn bounded_fractions_sum_to_one(g in -0.5..1.5f64, l in -0.5..1.5f64) {
        if let Some((ag, al)) = spalding_bound(g, l) {
            prop_assert_eq!(ag + al, 1.0);
            prop_assert!((0.0..=1.0).contains(&ag) && (0.0..=1.0).contains(&al));
        } else {
            prop_assert!(g <= 0.0 && l <= 0.0);
        }
    }

    #[test]
    fn symmetrized_gradients_cancel(g in -1.0..1.0f64, l in -1.0..1.0f64) {
        let (a, b) = gradient_symmetrize(g, l);
        prop_assert_eq!(a + b, 0.0);
        prop_assert!((a - (g - 0.5 * (g + l))).abs() < 1e-15);
    }

    #[test]
    fn alpha_collision_conserves_zeroth_moment(
        pops in prop::collection::vec((0.0..0.7f64, 0.0..0.2f64, 0.0..0.2f64), 8),
        u in prop::collection::vec(-0.05..0.05f64, 8),
        omega in 0.1..1.99f64,
    ) {
        let mut src = DistributionField::uniform(SchemeId::FalphaG, 8, [0.0; 3]);
        for (f, p) in src.values.iter_mut().zip(&pops) {
            *f = [p.0, p.1, p.2];
        }
        // moments of the populations define the equilibrium, as in the engine
        let alpha: Vec<f64> = src.values.iter().map(|f| f[0] + f[1] + f[2]).collect();
        let mut dst = src.clone();
        let drift = alpha_collide_stream(&src, &mut dst, &alpha, &u, omega, &Edges::Periodic);
        prop_assert!(drift < 1e-15);
        let before: f64 = src.values.iter().flatten().sum();
        let after: f64 = dst.values.iter().flatten().sum();
        prop_assert!((before - after).abs() < 1e-14);
    }

    #[test]
    fn dashpot_opposes_pressure_deviation(dev in -1e-3..1e-3f64, u in 1e-3..1e-1f64, gamma in 0.1..2.0f64) {
        let mut cache = [0.0; 2];
        let (sg, sl) = stabilize_sources(0.0, 0.0, 1.0 + dev, u, u, gamma, 5.0, 0, 1, &mut cache);
        prop_assert!(sg * dev <= 0.0 && sl * dev <= 0.0);
    }

    #[test]
    fn steady_liquid_velocity_solves_the_balance(ug0 in 1e-4..5e-3f64, extra in 1e-4..1e-2f64, r in 0.0..3.0f64) {
        let ug = ug0 + extra;
        let ul = steady_liquid_velocity(ug, ug0, r).unwrap();
        let residual = r * ul * ul - (ug - ul).powi(2) + ug0 * ug0;
        prop_assert!(residual.abs() <= 1e-12 * ug * ug);
        prop_assert!(ul < ug);
    }

    #[test]
    fn ramp_is_monotone_and_bounded(t in 0u64..1_000_000, n in 1u64..100_000, lo in 0.0..0.5f64, span in 0.0..0.5f64) {
        let hi = lo + span;
        let a = inlet_ramp(t, n, lo, hi);
        let b = inlet_ramp(t + 1, n, lo, hi);
        prop_assert!(lo <= a && a <= b && b <= hi + 1e-15);
    }
}

#[test]
fn unit_r_limit_is_continuous() {
    let (ug, ug0) = (8.4237e-3, 2.1859e-3);
    let at_one = steady_liquid_velocity(ug, ug0, 1.0).unwrap();
    assert_eq!(at_one, steady_liquid_velocity_unit_r(ug, ug0));
    for r in [1.0 - 1e-6, 1.0 + 1e-6] {
        assert!((steady_liquid_velocity(ug, ug0, r).unwrap() - at_one).abs() < 1e-8);
    }
}

#[test]
fn regime_violations_are_errors() {
    assert!(steady_liquid_velocity(1e-3, 2e-3, 0.5).is_err());
    assert!(steady_liquid_velocity(3e-3, 2e-3, -0.1).is_err());
}

#[test]
fn rest_alpha_field_is_a_fixed_point() {
    let feq = equilibrium_standard(0.3, 0.01);
    let src = DistributionField::uniform(SchemeId::FalphaG, 6, feq);
    let mut dst = src.clone();
    alpha_collide_stream(&src, &mut dst, &[0.3; 6], &[0.01; 6], 1.7, &Edges::Periodic);
    assert_eq!(src, dst);
}

#[test]
fn similarity_invariance_of_the_momentum_ratio() {
    let s = similarity_scale(9.81, 247.5, 1.2e-9, 1.45e-4).unwrap();
    let (ug, ul, r) = (0.3, 0.075, 833.3);
    let physical = momentum_ratio(247.5, 0.1, ug, ul, r, 9.81);
    let lattice = momentum_ratio(1.45e-4, 0.1, ug / s.c, ul / s.c, r, 1.2e-9);
    assert!(((physical - lattice) / physical).abs() < 1e-12);
    assert_eq!(momentum_ratio(247.5, 0.1, 0.2, 0.2, r, 9.81), 0.0);
}
