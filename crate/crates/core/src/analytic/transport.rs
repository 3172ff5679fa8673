//! Analytic continuation of linear systems along complex paths: fundamental
//! matrix transport, monodromy matrices, the spectral condition, and
//! winding counts of transported solution components.

use crate::analytic::path::ComplexPath;
use crate::analytic::rk::{integrate, RkOptions};
use crate::bounds::winding_from_closed_samples;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::picard_fuchs::FuchsianSystem;
use crate::reduction::LinearSystem;
use num_complex::Complex64;

/// Coefficient matrix of a first-order linear system along the path.
pub enum OdeMatrix<'a> {
    Fuchsian(&'a FuchsianSystem),
    Polynomial(&'a LinearSystem),
}

impl OdeMatrix<'_> {
    pub fn dim(&self) -> usize {
        match self {
            OdeMatrix::Fuchsian(f) => f.dim(),
            OdeMatrix::Polynomial(p) => p.dim(),
        }
    }

    pub fn poles(&self) -> Vec<Complex64> {
        match self {
            OdeMatrix::Fuchsian(f) => f.points.clone(),
            OdeMatrix::Polynomial(_) => Vec::new(),
        }
    }

    fn eval(&self, t: Complex64) -> Vec<Complex64> {
        match self {
            OdeMatrix::Fuchsian(f) => f.coefficient_matrix(t).data,
            OdeMatrix::Polynomial(p) => p.eval_f64(t),
        }
    }
}

/// Transport the matrix X0 (dim x cols) along the path: dX/dt = M(t) X.
/// The path must keep distance >= min_pole_distance from every pole;
/// the step size is additionally capped at a quarter of the current
/// distance to the nearest pole.
pub fn integrate_along_path(
    m: &OdeMatrix,
    path: &ComplexPath,
    x0: &CMat,
    tol: f64,
    min_pole_distance: f64,
) -> Result<CMat> {
    transport_with_samples(m, path, x0, tol, min_pole_distance, None, |_, _| {})
}

/// Like [`integrate_along_path`] but invoking `on_sample` at every accepted
/// step (and start), with an optional cap on the t-space step length to
/// force dense sampling.
pub fn transport_with_samples(
    m: &OdeMatrix,
    path: &ComplexPath,
    x0: &CMat,
    tol: f64,
    min_pole_distance: f64,
    max_t_step: Option<f64>,
    mut on_sample: impl FnMut(Complex64, &[Complex64]),
) -> Result<CMat> {
    let n = m.dim();
    assert_eq!(x0.rows, n);
    let poles = m.poles();
    if !poles.is_empty() && path.min_distance_to(&poles) < min_pole_distance {
        return Err(Error::PathTooClose);
    }
    let opts = RkOptions { rtol: tol.clamp(1e-13, 1e-6), atol: 1e-14, ..Default::default() };
    let cols = x0.cols;
    let mut state: Vec<Complex64> = x0.data.clone();
    on_sample(path.start(), &state);
    for seg in &path.segments {
        let f = |s: f64, y: &[Complex64], dy: &mut [Complex64]| {
            let t = seg.point(s);
            let v = seg.velocity(s);
            let mat = m.eval(t);
            // dX/ds = v * M(t) X, X stored row-major dim x cols.
            for i in 0..n {
                for c in 0..cols {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        acc += mat[i * n + k] * y[k * cols + c];
                    }
                    dy[i * cols + c] = acc * v;
                }
            }
        };
        let step_cap = |s: f64, _y: &[Complex64]| -> f64 {
            let t = seg.point(s);
            let mut cap = f64::INFINITY;
            for p in &poles {
                cap = cap.min(0.25 * (t - p).norm());
            }
            if let Some(mx) = max_t_step {
                cap = cap.min(mx);
            }
            // Convert the t-space cap to parameter space.
            let v = seg.velocity(s).norm().max(1e-300);
            (cap / v).max(1e-12)
        };
        state = integrate(&f, 0.0, 1.0, state, &opts, step_cap, |s, y| {
            on_sample(seg.point(s), y);
        })?;
    }
    Ok(CMat { rows: n, cols, data: state })
}

/// Monodromy along a closed loop through the basepoint path.start():
/// right-factor convention Delta X = X M, so M = X0^{-1} X_transported.
pub fn monodromy(m: &OdeMatrix, loop_path: &ComplexPath, x0: &CMat, tol: f64) -> Result<CMat> {
    if !loop_path.is_closed(1e-9) {
        return Err(Error::NumericalFailure("monodromy loop is not closed".into()));
    }
    let transported = integrate_along_path(m, loop_path, x0, tol, 1e-9)?;
    Ok(x0.inverse()?.mat_mul(&transported))
}

/// True iff every eigenvalue of M has modulus within tol of 1.
pub fn spectral_condition(m: &CMat, tol: f64) -> Result<bool> {
    let eigen = m.eigenvalues();
    let scale = eigen.iter().map(|l| l.norm()).fold(0.0, f64::max);
    if scale == 0.0 || eigen.iter().any(|l| l.norm() < 1e-12 * scale) {
        return Err(Error::SingularMatrix);
    }
    Ok(eigen.iter().all(|l| (l.norm() - 1.0).abs() <= tol))
}

/// Winding number of the `component`-th entry of the transported solution
/// vector around the closed path. The sampling density is refined until
/// consecutive phase increments are below pi/2.
pub fn solution_winding(
    m: &OdeMatrix,
    loop_path: &ComplexPath,
    x0: &[Complex64],
    component: usize,
    tol: f64,
) -> Result<i64> {
    let n = m.dim();
    assert_eq!(x0.len(), n);
    let x0m = CMat { rows: n, cols: 1, data: x0.to_vec() };
    let mut max_step = loop_path.length() / 64.0;
    // Refine the sampling density until two consecutive levels agree:
    // a single level passing the increment test could still alias a fast
    // full twist between samples.
    let mut previous: Option<i64> = None;
    for _ in 0..14 {
        let mut samples: Vec<Complex64> = Vec::new();
        transport_with_samples(m, loop_path, &x0m, tol, 1e-9, Some(max_step), |_t, y| {
            samples.push(y[component])
        })?;
        match winding_from_closed_samples(&samples) {
            Ok(w) => {
                if previous == Some(w) {
                    return Ok(w);
                }
                previous = Some(w);
                max_step *= 0.5;
            }
            Err(Error::NonConvergent) => {
                previous = None;
                max_step *= 0.5;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonConvergent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn euler_system(a: &[Vec<Complex64>]) -> FuchsianSystem {
        FuchsianSystem {
            points: vec![Complex64::new(0.0, 0.0)],
            residues: vec![CMat::from_rows(a)],
        }
    }

    #[test]
    fn trivial_system_transports_identity() {
        let sys = LinearSystem::from_constant(&[vec![0, 0], vec![0, 0]]);
        let path = ComplexPath::closed_polyline(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 1.0),
            Complex64::new(-0.5, 0.3),
        ]);
        let x0 = CMat::identity(2);
        let out = integrate_along_path(&OdeMatrix::Polynomial(&sys), &path, &x0, 1e-12, 0.0)
            .unwrap();
        assert!(out.sub(&x0).norm_inf() < 1e-12);
    }

    #[test]
    fn euler_power_law_segment() {
        // X' = (A/t) X with A = diag(1/2, 0) from 1 to 2: X = diag(sqrt 2, 1).
        let a = euler_system(&[
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let path = ComplexPath::new(vec![crate::analytic::path::PathSegment::Line {
            from: Complex64::new(1.0, 0.0),
            to: Complex64::new(2.0, 0.0),
        }]);
        let out =
            integrate_along_path(&OdeMatrix::Fuchsian(&a), &path, &CMat::identity(2), 1e-12, 0.1)
                .unwrap();
        assert!((out.get(0, 0) - Complex64::new(2.0_f64.sqrt(), 0.0)).norm() < 1e-10);
        assert!((out.get(1, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn euler_monodromy_half() {
        let a = euler_system(&[
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let circle = ComplexPath::circle(Complex64::new(0.0, 0.0), 1.0, 0.0);
        let m = monodromy(&OdeMatrix::Fuchsian(&a), &circle, &CMat::identity(2), 1e-12).unwrap();
        assert!((m.get(0, 0) - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        assert!((m.get(1, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn loop_around_nothing_is_identity() {
        let a = euler_system(&[vec![Complex64::new(1.0, 0.0)]]);
        let loop_path = ComplexPath::circle(Complex64::new(5.0, 0.0), 1.0, 0.0);
        let m = monodromy(&OdeMatrix::Fuchsian(&a), &loop_path, &CMat::identity(1), 1e-12)
            .unwrap();
        assert!((m.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn composite_loops_antirepresentation() {
        // Two poles; gamma1 around t=0, gamma2 around t=1, composed in order.
        let sys = FuchsianSystem {
            points: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            residues: vec![
                CMat::from_rows(&[
                    vec![Complex64::new(0.3, 0.0), Complex64::new(0.1, 0.0)],
                    vec![Complex64::new(0.0, 0.0), Complex64::new(-0.2, 0.0)],
                ]),
                CMat::from_rows(&[
                    vec![Complex64::new(0.0, 0.0), Complex64::new(0.4, 0.0)],
                    vec![Complex64::new(0.2, 0.0), Complex64::new(0.1, 0.0)],
                ]),
            ],
        };
        let m = OdeMatrix::Fuchsian(&sys);
        let base = Complex64::new(0.5, -1.2);
        let loop_around = |center: Complex64| -> ComplexPath {
            // base -> near pole, circle, back: use a triangle-ish loop
            // through the base enclosing only that pole.
            ComplexPath::closed_polyline(&[
                base,
                center + Complex64::new(0.4, -0.4),
                center + Complex64::new(0.4, 0.4),
                center + Complex64::new(-0.4, 0.4),
                center + Complex64::new(-0.4, -0.4),
                center + Complex64::new(0.4, -0.4),
            ])
        };
        let g1 = loop_around(sys.points[0]);
        let g2 = loop_around(sys.points[1]);
        let x0 = CMat::identity(2);
        let m1 = monodromy(&m, &g1, &x0, 1e-12).unwrap();
        let m2 = monodromy(&m, &g2, &x0, 1e-12).unwrap();
        // Concatenated loop gamma1 then gamma2.
        let mut segs = g1.segments.clone();
        segs.extend(g2.segments.clone());
        let g12 = ComplexPath { segments: segs };
        let m12 = monodromy(&m, &g12, &x0, 1e-12).unwrap();
        let expect = m2.mat_mul(&m1);
        assert!(m12.sub(&expect).norm_inf() < 1e-8);
    }

    #[test]
    fn spectral_condition_examples() {
        let diag = |a: Complex64, b: Complex64| {
            CMat::from_rows(&[
                vec![a, Complex64::new(0.0, 0.0)],
                vec![Complex64::new(0.0, 0.0), b],
            ])
        };
        let m = diag(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0));
        assert!(spectral_condition(&m, 1e-9).unwrap());
        // exp(2 pi i * i) = e^{-2 pi}: far from the unit circle.
        let decayed = (-2.0 * PI).exp();
        let m2 = diag(Complex64::new(decayed, 0.0), Complex64::new(1.0, 0.0));
        assert!(!spectral_condition(&m2, 1e-9).unwrap());
        assert!(spectral_condition(&CMat::identity(2), 1e-9).unwrap());
        // For n >= 3 the charpoly route clusters multiple eigenvalues at
        // reduced accuracy; a realistic tolerance still decides correctly.
        assert!(spectral_condition(&CMat::identity(3), 1e-4).unwrap());
    }

    #[test]
    fn homotopic_loops_same_monodromy() {
        let a = euler_system(&[
            vec![Complex64::new(0.25, 0.1), Complex64::new(0.3, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0)],
        ]);
        let m = OdeMatrix::Fuchsian(&a);
        let x0 = CMat::identity(2);
        let circle = ComplexPath::circle(Complex64::new(0.0, 0.0), 1.0, 0.0);
        let square = ComplexPath::closed_polyline(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, -1.0),
        ]);
        let mc = monodromy(&m, &circle, &x0, 1e-12).unwrap();
        let ms = monodromy(&m, &square, &x0, 1e-12).unwrap();
        assert!(mc.sub(&ms).norm_inf() < 1e-9);
    }
}
