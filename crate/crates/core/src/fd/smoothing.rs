//! Gaussian-weighted moving average.

/// Window length in nodes.
pub const WINDOW: usize = 12;
/// Standard deviation in nodes, `(WINDOW - 1) / 5`.
pub const SIGMA: f64 = (WINDOW as f64 - 1.0) / 5.0;

/// Symmetric kernel spanning `WINDOW` nodes: offsets `-6..=6` with the two
/// end taps at half weight (an even window centred on a node).
fn kernel() -> [f64; WINDOW + 1] {
    let half = (WINDOW / 2) as i64;
    let mut k = [0.0; WINDOW + 1];
    for (j, w) in k.iter_mut().enumerate() {
        let d = j as i64 - half;
        *w = (-0.5 * (d as f64 / SIGMA).powi(2)).exp();
        if d.abs() == half {
            *w *= 0.5;
        }
    }
    k
}

/// Smooth `v` into `out`; the window is truncated and renormalized at the ends.
pub fn gaussian_smooth_into(v: &[f64], out: &mut [f64]) {
    let k = kernel();
    let half = (WINDOW / 2) as i64;
    let n = v.len() as i64;
    for i in 0..n {
        let (mut acc, mut norm) = (0.0, 0.0);
        for (j, w) in k.iter().enumerate() {
            let m = i + j as i64 - half;
            if (0..n).contains(&m) {
                acc += w * v[m as usize];
                norm += w;
            }
        }
        out[i as usize] = acc / norm;
    }
}

pub fn gaussian_smooth(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    gaussian_smooth_into(v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_unchanged() {
        let v = vec![0.37; 30];
        for x in gaussian_smooth(&v) {
            assert!((x - 0.37).abs() < 1e-15);
        }
    }

    #[test]
    fn linear_interior_is_unchanged() {
        let v: Vec<f64> = (0..40).map(|i| 0.5 + 0.01 * i as f64).collect();
        let s = gaussian_smooth(&v);
        for i in 6..34 {
            assert!((s[i] - v[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn interior_spike_keeps_its_mass() {
        let mut v = vec![0.0; 40];
        v[20] = 1.0;
        let s: f64 = gaussian_smooth(&v).iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }
}
