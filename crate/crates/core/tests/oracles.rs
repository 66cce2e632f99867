mod common;

use common::{alpha_gradient_error, beta_source_error, shrink_ratios, stress_error};

fn assert_second_order(name: &str, err: fn(usize) -> f64) {
    for (n, e, ratio) in shrink_ratios(err, &[25, 50, 100]) {
        assert!(e.is_finite() && e > 0.0, "{name}: error {e} at n = {n}");
        assert!(ratio >= 3.5, "{name}: error {e:.3e} at n = {n} shrinks only {ratio:.2}x");
    }
}

#[test]
fn source_scheme_matches_flux_divergence() {
    assert_second_order("source", beta_source_error);
}

#[test]
fn stress_reconstruction_matches_viscous_stress() {
    assert_second_order("stress", stress_error);
}

#[test]
fn alpha_gradient_reconstruction_matches_log_derivative() {
    assert_second_order("alpha gradient", alpha_gradient_error);
}
