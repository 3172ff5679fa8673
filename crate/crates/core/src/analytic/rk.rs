//! Adaptive Runge-Kutta-Fehlberg 7(8) stepping on complex state vectors.
//!
//! The 13-stage classical tableau; the step advances with the eighth-order
//! combination while the embedded seventh-order difference drives the step
//! control. Tight tolerances (1e-10 .. 1e-13 relative) are practical.

use crate::error::{Error, Result};
use num_complex::Complex64;

const STAGES: usize = 13;

const C: [f64; STAGES] = [
    0.0,
    2.0 / 27.0,
    1.0 / 9.0,
    1.0 / 6.0,
    5.0 / 12.0,
    1.0 / 2.0,
    5.0 / 6.0,
    1.0 / 6.0,
    2.0 / 3.0,
    1.0 / 3.0,
    1.0,
    0.0,
    1.0,
];

const A: [[f64; 12]; STAGES] = [
    [0.0; 12],
    [2.0 / 27.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 36.0, 1.0 / 12.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 24.0, 0.0, 1.0 / 8.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [
        -25.0 / 108.0,
        0.0,
        0.0,
        125.0 / 108.0,
        -65.0 / 27.0,
        125.0 / 54.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        31.0 / 300.0,
        0.0,
        0.0,
        0.0,
        61.0 / 225.0,
        -2.0 / 9.0,
        13.0 / 900.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0, 0.0, 0.0, 0.0, 0.0],
    [
        -91.0 / 108.0,
        0.0,
        0.0,
        23.0 / 108.0,
        -976.0 / 135.0,
        311.0 / 54.0,
        -19.0 / 60.0,
        17.0 / 6.0,
        -1.0 / 12.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        2383.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -301.0 / 82.0,
        2133.0 / 4100.0,
        45.0 / 82.0,
        45.0 / 164.0,
        18.0 / 41.0,
        0.0,
        0.0,
    ],
    [
        3.0 / 205.0,
        0.0,
        0.0,
        0.0,
        0.0,
        -6.0 / 41.0,
        -3.0 / 205.0,
        -3.0 / 41.0,
        3.0 / 41.0,
        6.0 / 41.0,
        0.0,
        0.0,
    ],
    [
        -1777.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -289.0 / 82.0,
        2193.0 / 4100.0,
        51.0 / 82.0,
        33.0 / 164.0,
        12.0 / 41.0,
        0.0,
        1.0,
    ],
];

/// Eighth-order weights (used to advance).
const B8: [f64; STAGES] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    34.0 / 105.0,
    9.0 / 35.0,
    9.0 / 35.0,
    9.0 / 280.0,
    9.0 / 280.0,
    0.0,
    41.0 / 840.0,
    41.0 / 840.0,
];

#[derive(Clone, Copy, Debug)]
pub struct RkOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for RkOptions {
    fn default() -> Self {
        RkOptions { rtol: 1e-10, atol: 1e-12, max_steps: 1_000_000 }
    }
}

/// Outcome of a single trial step.
pub struct StepOutcome {
    pub accepted: bool,
    pub y_new: Vec<Complex64>,
    /// Scaled error of the trial (accept iff <= 1).
    pub error: f64,
    /// Suggested next step size (same sign as the trial step).
    pub h_next: f64,
}

/// One embedded RKF78 trial step from (s, y) with step h.
pub fn try_step<F>(f: &F, s: f64, y: &[Complex64], h: f64, opts: &RkOptions) -> StepOutcome
where
    F: Fn(f64, &[Complex64], &mut [Complex64]),
{
    let dim = y.len();
    let mut k = vec![vec![Complex64::new(0.0, 0.0); dim]; STAGES];
    let mut work = vec![Complex64::new(0.0, 0.0); dim];
    f(s, y, &mut work);
    k[0].copy_from_slice(&work);
    let mut stage_y = vec![Complex64::new(0.0, 0.0); dim];
    for i in 1..STAGES {
        for (d, sy) in stage_y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, kj) in k.iter().enumerate().take(i) {
                let a = A[i][j];
                if a != 0.0 {
                    acc += kj[d] * a;
                }
            }
            *sy = y[d] + acc * h;
        }
        f(s + C[i] * h, &stage_y, &mut work);
        k[i].copy_from_slice(&work);
    }
    let mut y_new = vec![Complex64::new(0.0, 0.0); dim];
    for (d, yn) in y_new.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, ki) in k.iter().enumerate() {
            if B8[i] != 0.0 {
                acc += ki[d] * B8[i];
            }
        }
        *yn = y[d] + acc * h;
    }
    // err = y8 - y7 = 41/840 (k0 + k10 - k11 - k12) h.
    let mut err = 0.0_f64;
    for d in 0..dim {
        let e = (k[0][d] + k[10][d] - k[11][d] - k[12][d]) * (41.0 / 840.0) * h;
        let scale = opts.atol + opts.rtol * y[d].norm().max(y_new[d].norm());
        err = err.max(e.norm() / scale);
    }
    let accepted = err <= 1.0;
    let factor = if err > 0.0 { 0.9 * err.powf(-1.0 / 8.0) } else { 5.0 };
    let h_next = h * factor.clamp(0.2, 5.0);
    StepOutcome { accepted, y_new, error: err, h_next }
}

/// Integrate y' = f(s, y) from s0 to s1 with adaptive steps. `step_cap`
/// bounds |h| as a function of the current point (distance-to-pole caps);
/// `on_step` observes every accepted step.
pub fn integrate<F>(
    f: &F,
    s0: f64,
    s1: f64,
    y0: Vec<Complex64>,
    opts: &RkOptions,
    mut step_cap: impl FnMut(f64, &[Complex64]) -> f64,
    mut on_step: impl FnMut(f64, &[Complex64]),
) -> Result<Vec<Complex64>>
where
    F: Fn(f64, &[Complex64], &mut [Complex64]),
{
    let span = s1 - s0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut s = s0;
    let mut y = y0;
    let mut h = dir * (span.abs() / 16.0);
    for _ in 0..opts.max_steps {
        let cap = step_cap(s, &y).abs();
        if cap > 0.0 {
            h = h.clamp(-cap, cap);
        }
        if (s1 - s) * dir <= 0.0 {
            return Ok(y);
        }
        if h.abs() > (s1 - s).abs() {
            h = s1 - s;
        }
        if h.abs() < 1e-14 * span.abs() {
            return Err(Error::StepUnderflow);
        }
        let out = try_step(f, s, &y, h, opts);
        if out.accepted {
            s += h;
            y = out.y_new;
            on_step(s, &y);
            if (s1 - s) * dir <= 1e-300 {
                return Ok(y);
            }
        }
        h = if out.h_next.abs() > 0.0 { out.h_next } else { h * 0.5 };
    }
    Err(Error::NumericalFailure("step budget exhausted".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_accuracy() {
        // y' = y from 0 to 1: y(1) = e.
        let f = |_s: f64, y: &[Complex64], dy: &mut [Complex64]| {
            dy[0] = y[0];
        };
        let opts = RkOptions { rtol: 1e-12, atol: 1e-14, ..Default::default() };
        let y = integrate(
            &f,
            0.0,
            1.0,
            vec![Complex64::new(1.0, 0.0)],
            &opts,
            |_, _| f64::INFINITY,
            |_, _| {},
        )
        .unwrap();
        assert!((y[0].re - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn oscillator_long_run() {
        // y'' = -y as a system over [0, 20 pi]: returns to the start.
        let f = |_s: f64, y: &[Complex64], dy: &mut [Complex64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        let opts = RkOptions { rtol: 1e-12, atol: 1e-14, ..Default::default() };
        let y = integrate(
            &f,
            0.0,
            20.0 * std::f64::consts::PI,
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            &opts,
            |_, _| f64::INFINITY,
            |_, _| {},
        )
        .unwrap();
        assert!((y[0].re - 1.0).abs() < 1e-10);
        assert!(y[1].re.abs() < 1e-10);
    }
}
