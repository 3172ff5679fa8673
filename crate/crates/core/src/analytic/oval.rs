//! Real oval tracing on level sets {H = t} and line integration along the
//! traced oval.
//!
//! The tracer follows the unit-speed Hamiltonian field (-H_y, H_x)/|grad H|
//! from a seed found by radial search from a nondegenerate real center,
//! accumulates the winding angle around the center as part of the state,
//! and lands exactly on one full turn. Line integrals of any number of
//! 1-forms ride along as augmented state components. The level-set residual
//! is controlled by Newton projection after every accepted step.

use crate::analytic::rk::{try_step, RkOptions};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Evaluates a 1-form p dx + q dy at a real point.
pub trait LineIntegrand: Sync {
    fn eval(&self, x: f64, y: f64) -> (f64, f64);
}

/// Closed polyline approximation of a real oval, positively oriented.
#[derive(Clone, Debug)]
pub struct Oval {
    pub t: f64,
    pub points: Vec<(f64, f64)>,
    /// Always +1 after normalisation; kept for the record.
    pub orientation: i8,
    /// Max |H - t| over the vertices.
    pub residual: f64,
}

/// Result of tracing with line integrals attached.
#[derive(Clone, Debug)]
pub struct OvalTrace {
    pub oval: Oval,
    /// One value per integrand, positively oriented.
    pub integrals: Vec<f64>,
    pub error_estimate: f64,
    pub circumference: f64,
}

#[derive(Clone, Copy, Debug)]
struct Center {
    x: f64,
    y: f64,
    value: f64,
    is_min: bool,
}

fn real_centers(h: &Hamiltonian) -> Result<(Vec<Center>, Vec<f64>)> {
    let points = h.critical_points(1e-11)?;
    let (hx, hy) = h.grad();
    let hxx = hx.diff_x();
    let hxy = hx.diff_y();
    let hyy = hy.diff_y();
    let mut centers = Vec::new();
    let mut real_values = Vec::new();
    for p in &points {
        let scale = 1.0 + p.x.norm() + p.y.norm();
        if p.x.im.abs() > 1e-8 * scale || p.y.im.abs() > 1e-8 * scale {
            continue;
        }
        real_values.push(p.value.re);
        let at = |q: &BiPoly| q.eval_f64(p.x, p.y).re;
        let (a, b, d) = (at(&hxx), at(&hxy), at(&hyy));
        let det = a * d - b * b;
        if det > 0.0 {
            centers.push(Center { x: p.x.re, y: p.y.re, value: p.value.re, is_min: a > 0.0 });
        }
    }
    Ok((centers, real_values))
}

/// Pick the center whose punctured basin contains level t: t strictly
/// between the center value and the nearest other real critical value on
/// that side. Ties resolved by |t - t0|.
fn select_center(h: &Hamiltonian, t: f64) -> Result<Center> {
    let (centers, values) = real_centers(h)?;
    let mut best: Option<Center> = None;
    for c in centers {
        if (t - c.value).abs() < 1e-12 * (1.0 + t.abs()) {
            continue;
        }
        let admissible = if c.is_min {
            t > c.value
                && values
                    .iter()
                    .all(|&v| v <= c.value + 1e-12 * (1.0 + v.abs()) || v >= t)
        } else {
            t < c.value
                && values
                    .iter()
                    .all(|&v| v >= c.value - 1e-12 * (1.0 + v.abs()) || v <= t)
        };
        if admissible {
            best = match best {
                None => Some(c),
                Some(prev) => {
                    if (t - c.value).abs() < (t - prev.value).abs() {
                        Some(c)
                    } else {
                        Some(prev)
                    }
                }
            };
        }
    }
    best.ok_or(Error::NoRealOval(t))
}

/// Radial seed: first point on the ray from the center at `angle` where
/// H = t.
fn radial_seed(h: &Hamiltonian, c: &Center, t: f64, angle: f64) -> Option<(f64, f64)> {
    let poly = h.poly();
    let eval = |r: f64| {
        let x = c.x + r * angle.cos();
        let y = c.y + r * angle.sin();
        poly.eval_f64(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).re - t
    };
    let sign_center = (c.value - t).signum();
    let mut r_lo = 0.0;
    let mut r = 1e-4 * (1.0 + c.x.abs() + c.y.abs());
    let mut bracket = None;
    for _ in 0..200 {
        let v = eval(r);
        if v.signum() != sign_center {
            bracket = Some((r_lo, r));
            break;
        }
        r_lo = r;
        r *= 1.35;
        if r > 1e8 {
            break;
        }
    }
    let (mut lo, mut hi) = bracket?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if eval(mid).signum() == sign_center {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * (1.0 + hi) {
            break;
        }
    }
    let r = 0.5 * (lo + hi);
    Some((c.x + r * angle.cos(), c.y + r * angle.sin()))
}

struct FlowContext<'a> {
    hx: BiPoly,
    hy: BiPoly,
    center: (f64, f64),
    integrands: &'a [&'a dyn LineIntegrand],
}

impl FlowContext<'_> {
    /// State layout: [x, y, theta, I_0, ..., I_{k-1}].
    fn derivative(&self, _s: f64, state: &[Complex64], out: &mut [Complex64]) {
        let x = state[0].re;
        let y = state[1].re;
        let cx = Complex64::new(x, 0.0);
        let cy = Complex64::new(y, 0.0);
        let gx = self.hx.eval_f64(cx, cy).re;
        let gy = self.hy.eval_f64(cx, cy).re;
        let speed = (gx * gx + gy * gy).sqrt().max(1e-300);
        let vx = -gy / speed;
        let vy = gx / speed;
        out[0] = Complex64::new(vx, 0.0);
        out[1] = Complex64::new(vy, 0.0);
        let rx = x - self.center.0;
        let ry = y - self.center.1;
        let r2 = (rx * rx + ry * ry).max(1e-300);
        out[2] = Complex64::new((rx * vy - ry * vx) / r2, 0.0);
        for (j, form) in self.integrands.iter().enumerate() {
            let (p, q) = form.eval(x, y);
            out[3 + j] = Complex64::new(p * vx + q * vy, 0.0);
        }
    }
}

/// Trace the oval at level t and integrate the given 1-forms along it
/// (positively oriented). `tol` bounds the Hamiltonian residual of the
/// polyline; the quadrature runs at `opts` tolerances.
pub fn flow_oval(
    h: &Hamiltonian,
    t: f64,
    tol: f64,
    integrands: &[&dyn LineIntegrand],
    opts: &RkOptions,
    record_points: bool,
) -> Result<OvalTrace> {
    let center = select_center(h, t)?;
    // Fixed ladder of seed directions; the first that yields a closed trace
    // wins. The integrals do not depend on the seed.
    let mut last_err = Error::NoRealOval(t);
    for angle in [0.5, 1.6, 2.7, 3.8] {
        let Some(seed) = radial_seed(h, &center, t, angle) else {
            continue;
        };
        match flow_from_seed(h, &center, seed, t, tol, integrands, opts, record_points) {
            Ok(trace) => return Ok(trace),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

#[allow(clippy::too_many_arguments)]
fn flow_from_seed(
    h: &Hamiltonian,
    center: &Center,
    seed: (f64, f64),
    t: f64,
    tol: f64,
    integrands: &[&dyn LineIntegrand],
    opts: &RkOptions,
    record_points: bool,
) -> Result<OvalTrace> {
    let (hx, hy) = h.grad();
    let ctx = FlowContext { hx, hy, center: (center.x, center.y), integrands };
    let poly = h.poly().clone();
    let dim = 3 + integrands.len();
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    state[0] = Complex64::new(seed.0, 0.0);
    state[1] = Complex64::new(seed.1, 0.0);

    // Orientation of the flow around the center at the seed.
    let mut d0 = vec![Complex64::new(0.0, 0.0); dim];
    ctx.derivative(0.0, &state, &mut d0);
    let sigma = d0[2].re.signum();
    if sigma == 0.0 {
        return Err(Error::TraceDiverged);
    }
    let target = sigma * 2.0 * PI;

    let f = |s: f64, y: &[Complex64], dy: &mut [Complex64]| ctx.derivative(s, y, dy);
    let residual_scale = 1.0 + t.abs();
    let mut residual_max = 0.0_f64;
    let mut points: Vec<(f64, f64)> = Vec::new();
    if record_points {
        points.push(seed);
    }
    let mut s = 0.0;
    let mut h_step: f64 = 1e-3;
    let mut error_acc = 0.0;
    let mut steps = 0usize;
    let max_steps = opts.max_steps;
    loop {
        steps += 1;
        if steps > max_steps {
            return Err(Error::NumericalFailure("oval step budget exhausted".into()));
        }
        // Cap the step by the distance to the center (bounds the angle per
        // step) and by a hard diameter guard.
        let rx = state[0].re - center.x;
        let ry = state[1].re - center.y;
        let rdist = (rx * rx + ry * ry).sqrt();
        if rdist > 1e8 {
            return Err(Error::TraceDiverged);
        }
        // Recorded traces use a denser cap so the polyline geometry is
        // usable downstream; pure quadrature runs take larger steps.
        let cap_factor = if record_points { 0.05 } else { 0.2 };
        let cap = (cap_factor * rdist).max(1e-9);
        let h_try = h_step.min(cap);
        let out = try_step(&f, s, &state, h_try, opts);
        if !out.accepted {
            h_step = out.h_next.min(cap);
            if h_step < 1e-16 {
                return Err(Error::StepUnderflow);
            }
            continue;
        }
        // Will this step complete the turn?
        if (out.y_new[2].re - target) * sigma >= 0.0 {
            // Land exactly on theta = target by shrinking the step.
            let mut lo = 0.0_f64;
            let mut hi = h_try;
            let mut y_final = out.y_new.clone();
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let probe = try_step(&f, s, &state, mid, opts);
                if (probe.y_new[2].re - target) * sigma >= 0.0 {
                    hi = mid;
                    y_final = probe.y_new;
                } else {
                    lo = mid;
                }
                if (hi - lo) < 1e-15 * h_try.max(1e-12) {
                    break;
                }
            }
            state = y_final;
            s += hi;
            error_acc += opts.atol + opts.rtol;
            break;
        }
        s += h_try;
        state = out.y_new;
        error_acc += opts.atol + opts.rtol * state[3..].iter().map(|c| c.norm()).fold(0.0, f64::max);
        h_step = out.h_next;
        // Newton projection back onto the level set.
        let resid = poly
            .eval_f64(Complex64::new(state[0].re, 0.0), Complex64::new(state[1].re, 0.0))
            .re
            - t;
        if resid.abs() > 1e-13 * residual_scale {
            project_onto_level(&ctx, &poly, &mut state, t);
        }
        let resid2 = poly
            .eval_f64(Complex64::new(state[0].re, 0.0), Complex64::new(state[1].re, 0.0))
            .re
            - t;
        residual_max = residual_max.max(resid2.abs());
        if residual_max > tol * residual_scale.max(1.0) {
            return Err(Error::TraceDiverged);
        }
        if record_points {
            points.push((state[0].re, state[1].re));
        }
    }

    // Closure check against the seed.
    let gap = ((state[0].re - seed.0).powi(2) + (state[1].re - seed.1).powi(2)).sqrt();
    if gap > 1e-5 * (1.0 + rdist_of(seed, center)) {
        return Err(Error::TraceDiverged);
    }
    if record_points {
        points.push(seed);
    }
    let mut integrals: Vec<f64> = state[3..].iter().map(|c| c.re).collect();
    if sigma < 0.0 {
        // The flow traversed the oval clockwise; report positively oriented
        // values and vertex order.
        for v in integrals.iter_mut() {
            *v = -*v;
        }
        points.reverse();
    }
    Ok(OvalTrace {
        oval: Oval { t, points, orientation: 1, residual: residual_max },
        integrals,
        error_estimate: error_acc,
        circumference: s,
    })
}

fn rdist_of(p: (f64, f64), c: &Center) -> f64 {
    ((p.0 - c.x).powi(2) + (p.1 - c.y).powi(2)).sqrt()
}

fn project_onto_level(ctx: &FlowContext, poly: &BiPoly, state: &mut [Complex64], t: f64) {
    for _ in 0..3 {
        let x = state[0].re;
        let y = state[1].re;
        let cx = Complex64::new(x, 0.0);
        let cy = Complex64::new(y, 0.0);
        let resid = poly.eval_f64(cx, cy).re - t;
        if resid.abs() < 1e-15 * (1.0 + t.abs()) {
            return;
        }
        let gx = ctx.hx.eval_f64(cx, cy).re;
        let gy = ctx.hy.eval_f64(cx, cy).re;
        let g2 = gx * gx + gy * gy;
        if g2 < 1e-300 {
            return;
        }
        state[0] = Complex64::new(x - gx * resid / g2, 0.0);
        state[1] = Complex64::new(y - gy * resid / g2, 0.0);
    }
}

/// Trace the closed oval at level t (no integrands).
pub fn trace_oval(h: &Hamiltonian, t: f64, tol: f64) -> Result<Oval> {
    let opts = RkOptions { rtol: 1e-12, atol: 1e-13, ..Default::default() };
    Ok(flow_oval(h, t, tol, &[], &opts, true)?.oval)
}
