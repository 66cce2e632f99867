//! Embedded Runge-Kutta 5(4) pair of Dormand and Prince with local error control.

use crate::error::{Result, SolverError};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
/// Fifth-order weights (also the last stage row, which makes the pair FSAL).
const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
/// Difference between the fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    /// Steps below this size abort the integration.
    pub h_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rtol: 1e-6, atol: 1e-9, h_min: 1e-6 }
    }
}

/// Stage storage and step-size state for one system size.
#[derive(Debug, Clone)]
pub struct Dopri5 {
    pub tol: Tolerances,
    k: [Vec<f64>; 7],
    y_stage: Vec<f64>,
    y_new: Vec<f64>,
    /// `k[0]` holds `f(t, y)` for the current point.
    fsal_valid: bool,
    /// Proposed size of the next step.
    pub h: f64,
    pub accepted: u64,
    pub rejected: u64,
}

impl Dopri5 {
    pub fn new(dim: usize, tol: Tolerances, h0: f64) -> Self {
        let z = || vec![0.0; dim];
        Self {
            tol,
            k: [z(), z(), z(), z(), z(), z(), z()],
            y_stage: z(),
            y_new: z(),
            fsal_valid: false,
            h: h0,
            accepted: 0,
            rejected: 0,
        }
    }

    /// Call after modifying `y` outside the integrator.
    pub fn invalidate(&mut self) {
        self.fsal_valid = false;
    }

    /// Take one accepted step of size at most `min(self.h, h_cap)` from `(t, y)`.
    /// Returns the step actually taken; `y` is updated in place.
    pub fn step<F>(&mut self, rhs: &mut F, t: f64, y: &mut [f64], h_cap: f64) -> Result<f64>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = y.len();
        if !self.fsal_valid {
            rhs(t, y, &mut self.k[0]);
            self.fsal_valid = true;
        }
        loop {
            let h = self.h.min(h_cap);
            if h < self.tol.h_min && h < h_cap {
                return Err(SolverError::StepUnderflow { t, h });
            }
            let rows: [&[f64]; 5] = [&A2, &A3, &A4, &A5, &A6];
            for (s, row) in rows.iter().enumerate() {
                for i in 0..n {
                    let mut acc = 0.0;
                    for (j, a) in row.iter().enumerate() {
                        acc += a * self.k[j][i];
                    }
                    self.y_stage[i] = y[i] + h * acc;
                }
                let (_, rest) = self.k.split_at_mut(s + 1);
                rhs(t + C[s + 1] * h, &self.y_stage, &mut rest[0]);
            }
            for i in 0..n {
                let mut acc = 0.0;
                for (j, b) in B.iter().enumerate() {
                    acc += b * self.k[j][i];
                }
                self.y_new[i] = y[i] + h * acc;
            }
            {
                let (head, tail) = self.k.split_at_mut(6);
                rhs(t + h, &self.y_new, &mut tail[0]);
                let _ = head;
            }
            let mut err = 0.0;
            for i in 0..n {
                let mut e = 0.0;
                for (j, ej) in E.iter().enumerate() {
                    e += ej * self.k[j][i];
                }
                let sc = self.tol.atol + self.tol.rtol * y[i].abs().max(self.y_new[i].abs());
                let r = h * e / sc;
                err += r * r;
            }
            let err = (err / n as f64).sqrt();
            if !err.is_finite() {
                self.rejected += 1;
                self.h = 0.2 * h;
                continue;
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                y.copy_from_slice(&self.y_new);
                self.k.swap(0, 6);
                self.accepted += 1;
                // a step shortened to hit h_cap should not shrink the proposal
                self.h = if h < self.h { self.h.max(h * factor) } else { h * factor };
                return Ok(h);
            }
            self.rejected += 1;
            self.h = h * factor.min(1.0);
        }
    }
}

/// Integrate `y' = rhs(t, y)` from `t0` to `t1`.
pub fn integrate<F>(mut rhs: F, y0: &[f64], t0: f64, t1: f64, tol: Tolerances) -> Result<Vec<f64>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let mut y = y0.to_vec();
    let mut dp = Dopri5::new(y.len(), tol, ((t1 - t0) / 100.0).max(tol.h_min));
    let mut t = t0;
    while t < t1 {
        let h = dp.step(&mut rhs, t, &mut y, t1 - t)?;
        t = if t1 - (t + h) <= 1e-12 * t1.abs().max(1.0) { t1 } else { t + h };
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let y = integrate(|_, y, d| d[0] = -y[0], &[1.0], 0.0, 1.0, Tolerances::default()).unwrap();
        assert!((y[0] - (-1.0f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn order_is_at_least_four() {
        // fixed steps: force acceptance with huge tolerances and cap h
        let run = |n: usize| {
            let tol = Tolerances { rtol: 1e9, atol: 1e9, h_min: 0.0 };
            let h = 1.0 / n as f64;
            let mut dp = Dopri5::new(1, tol, h);
            let mut y = [1.0];
            let mut f = |t: f64, y: &[f64], d: &mut [f64]| d[0] = y[0] * t.cos();
            for k in 0..n {
                dp.h = h;
                dp.step(&mut f, k as f64 * h, &mut y, h).unwrap();
            }
            (y[0] - 1f64.sin().exp()).abs()
        };
        let (e1, e2) = (run(8), run(16));
        assert!((e1 / e2).log2() >= 4.0, "{}", (e1 / e2).log2());
    }

    #[test]
    fn rest_state_stays_constant() {
        let y = integrate(|_, _, d| d.fill(0.0), &[0.3, 1.0], 0.0, 50.0, Tolerances::default()).unwrap();
        assert_eq!(y, vec![0.3, 1.0]);
    }
}
