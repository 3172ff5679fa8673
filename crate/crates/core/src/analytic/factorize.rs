//! Scalar annulus factorization W(t) = H0^{-1}(t) t^nu Hinf(t) from unit
//! circle samples.
//!
//! nu is the winding number of W around the circle; the logarithm of
//! W t^{-nu} splits by Fourier frequency into the part analytic in the disk
//! (nonnegative modes, exponentiated into H0^{-1}) and the part analytic
//! outside including infinity (negative modes, exponentiated into Hinf,
//! normalised by Hinf(inf) = 1).

use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct ScalarFactorization {
    pub nu: i64,
    /// Taylor coefficients of H0 at 0 (t^0, t^1, ...).
    pub h0: Vec<Complex64>,
    /// Coefficients of Hinf by descending power (t^0, t^-1, t^-2, ...).
    pub hinf: Vec<Complex64>,
    /// Max pointwise reconstruction error on the sample circle.
    pub reconstruction_error: f64,
}

impl ScalarFactorization {
    pub fn eval_h0(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.h0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_hinf(&self, t: Complex64) -> Complex64 {
        let inv = t.inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.hinf.iter().rev() {
            acc = acc * inv + c;
        }
        acc
    }

    /// H0^{-1}(t) t^nu Hinf(t).
    pub fn eval(&self, t: Complex64) -> Complex64 {
        let power = if self.nu >= 0 {
            t.powu(self.nu as u32)
        } else {
            t.inv().powu((-self.nu) as u32)
        };
        power * self.eval_hinf(t) / self.eval_h0(t)
    }
}

/// Relative spectral tail energy above which the samples are declared
/// aliased.
const TAIL_ENERGY_THRESHOLD: f64 = 1e-12;

/// Factorize from uniformly spaced samples w_k = W(e^{2 pi i k / N}),
/// N a power of two. `tol` is both the invertibility floor on the circle
/// and the acceptance threshold for the pointwise reconstruction.
pub fn scalar_factorize(samples: &[Complex64], tol: f64) -> Result<ScalarFactorization> {
    let n = samples.len();
    assert!(n >= 8 && n.is_power_of_two(), "need a power-of-two sample count >= 8");
    let min_mag = samples.iter().map(|w| w.norm()).fold(f64::INFINITY, f64::min);
    if min_mag <= tol {
        return Err(Error::ZeroOnCircle);
    }

    // Winding number from phase increments.
    let mut total = 0.0;
    for k in 0..n {
        let dphi = (samples[(k + 1) % n] / samples[k]).arg();
        if dphi.abs() >= PI / 2.0 {
            return Err(Error::AliasingDetected);
        }
        total += dphi;
    }
    let winding = total / (2.0 * PI);
    let nu = winding.round();
    if (winding - nu).abs() >= 0.25 {
        return Err(Error::AliasingDetected);
    }
    let nu = nu as i64;

    // Continuous branch of log(w t^{-nu}) along the circle.
    let mut g = Vec::with_capacity(n);
    let mut phase = samples[0].arg();
    for k in 0..n {
        if k > 0 {
            phase += (samples[k] / samples[k - 1]).arg();
        }
        let theta = 2.0 * PI * k as f64 / n as f64;
        g.push(Complex64::new(samples[k].norm().ln(), phase - nu as f64 * theta));
    }

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    let mut spectrum = g.clone();
    fft.process(&mut spectrum);
    for c in spectrum.iter_mut() {
        *c /= n as f64;
    }

    // Tail-energy aliasing check on the top octave of frequencies.
    let energy: f64 = spectrum.iter().map(|c| c.norm_sqr()).sum();
    let tail: f64 = (0..n)
        .filter(|&m| {
            let freq = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
            freq.unsigned_abs() as usize >= n / 4
        })
        .map(|m| spectrum[m].norm_sqr())
        .sum();
    // The floor keeps pure rounding noise (an all-flat spectrum at ~1e-16
    // per mode) from tripping the relative test.
    let energy_floor = 1e-28 * n as f64;
    if tail > TAIL_ENERGY_THRESHOLD * energy && tail > energy_floor {
        return Err(Error::AliasingDetected);
    }

    // Split by frequency sign. Index m carries frequency m for m <= n/2 and
    // m - n otherwise.
    let mut plus = vec![Complex64::new(0.0, 0.0); n];
    let mut minus = vec![Complex64::new(0.0, 0.0); n];
    for m in 0..n {
        let freq = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
        if freq >= 0 {
            plus[m] = spectrum[m];
        } else {
            minus[m] = spectrum[m];
        }
    }
    let on_grid = |coeffs: &[Complex64]| -> Vec<Complex64> {
        let mut buf = coeffs.to_vec();
        ifft.process(&mut buf);
        buf
    };
    let g_plus = on_grid(&plus);
    let g_minus = on_grid(&minus);

    // H0 = exp(-g_plus) (so H0^{-1} = exp(g_plus)), Hinf = exp(g_minus).
    let h0_grid: Vec<Complex64> = g_plus.iter().map(|g| (-g).exp()).collect();
    let hinf_grid: Vec<Complex64> = g_minus.iter().map(|g| g.exp()).collect();
    let coeffs_of = |grid: &[Complex64]| -> Vec<Complex64> {
        let mut buf = grid.to_vec();
        fft.process(&mut buf);
        for c in buf.iter_mut() {
            *c /= n as f64;
        }
        buf
    };
    let h0_spec = coeffs_of(&h0_grid);
    let hinf_spec = coeffs_of(&hinf_grid);
    // H0 is analytic in the disk: keep modes 0..n/2. Hinf is analytic
    // outside: mode -j sits at index n - j.
    let h0: Vec<Complex64> = (0..n / 2).map(|m| h0_spec[m]).collect();
    let hinf: Vec<Complex64> = (0..n / 2)
        .map(|j| if j == 0 { hinf_spec[0] } else { hinf_spec[n - j] })
        .collect();

    let mut fact = ScalarFactorization { nu, h0, hinf, reconstruction_error: 0.0 };
    let mut err = 0.0_f64;
    for (k, w) in samples.iter().enumerate() {
        let t = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        err = err.max((fact.eval(t) - w).norm());
    }
    fact.reconstruction_error = err;
    if err > tol.max(1e-13) * (1.0 + samples.iter().map(|w| w.norm()).fold(0.0, f64::max)) {
        return Err(Error::NumericalFailure(format!(
            "factorization reconstruction error {err:.3e} exceeds tolerance"
        )));
    }
    Ok(fact)
}

/// Convenience: sample a closure on the N-point unit circle grid.
pub fn circle_samples(n: usize, f: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
    (0..n)
        .map(|k| f(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)))
        .collect()
}
