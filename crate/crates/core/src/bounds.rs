//! Explicit zero and index bounds for linear ODEs, and the numerical
//! argument-principle counter used to confront every bound with an actual
//! count.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Open rectilinear triangle, positively oriented (normalised on
/// construction), nonzero area.
#[derive(Clone, Copy, Debug)]
pub struct Triangle {
    vertices: [Complex64; 3],
}

impl Triangle {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let cross = (b - a).re * (c - a).im - (b - a).im * (c - a).re;
        if cross.abs() < 1e-300 {
            return Err(Error::DegenerateTriangle);
        }
        let vertices = if cross > 0.0 { [a, b, c] } else { [a, c, b] };
        Ok(Triangle { vertices })
    }

    pub fn vertices(&self) -> [Complex64; 3] {
        self.vertices
    }

    pub fn perimeter(&self) -> f64 {
        let [a, b, c] = self.vertices;
        (b - a).norm() + (c - b).norm() + (a - c).norm()
    }

    pub fn edges(&self) -> [(Complex64, Complex64); 3] {
        let [a, b, c] = self.vertices;
        [(a, b), (b, c), (c, a)]
    }

    pub fn contains(&self, p: Complex64) -> bool {
        let [a, b, c] = self.vertices;
        let side = |u: Complex64, v: Complex64| (v - u).re * (p - u).im - (v - u).im * (p - u).re;
        side(a, b) > 0.0 && side(b, c) > 0.0 && side(c, a) > 0.0
    }

    pub fn distance_to_boundary(&self, p: Complex64) -> f64 {
        self.edges()
            .iter()
            .map(|&(u, v)| point_segment_distance(p, u, v))
            .fold(f64::INFINITY, f64::min)
    }

    /// True when the closed triangle meets the closed slit
    /// {x <= 0, y = 0} (the branch cut of the principal powers).
    pub fn crosses_negative_axis(&self) -> bool {
        if self.contains(Complex64::new(0.0, 0.0)) {
            return true;
        }
        for (u, v) in self.edges() {
            // Points on the edge with y = 0.
            if u.im == 0.0 && u.re <= 0.0 {
                return true;
            }
            if (u.im <= 0.0) != (v.im <= 0.0) || u.im == 0.0 || v.im == 0.0 {
                let dy = v.im - u.im;
                if dy.abs() > 0.0 {
                    let s = -u.im / dy;
                    if (0.0..=1.0).contains(&s) {
                        let x = u.re + s * (v.re - u.re);
                        if x <= 0.0 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

pub fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * ab.re) + ((p - a).im * ab.im)) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

// ---------------------------------------------------------------------------
// de la Vallee Poussin bounds
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct Disconjugacy {
    pub disconjugate: bool,
    /// 1 - sum c_k r^k / k!.
    pub margin: f64,
}

/// Smallness test sum_{k=1}^n c_k r^k / k! < 1: a disconjugate equation has
/// at most n - 1 isolated real roots on an interval of length r.
pub fn disconjugacy_test(c: &[f64], r: f64) -> Disconjugacy {
    let sum = poussin_sum(c, r);
    Disconjugacy { disconjugate: sum < 1.0, margin: 1.0 - sum }
}

fn poussin_sum(c: &[f64], r: f64) -> f64 {
    let mut factorial = 1.0;
    let mut power = 1.0;
    let mut sum = 0.0;
    for (k, ck) in c.iter().enumerate() {
        debug_assert!(*ck >= 0.0, "coefficient bounds must be nonnegative");
        factorial *= (k + 1) as f64;
        power *= r;
        sum += ck * power / factorial;
    }
    sum
}

/// Subdivide [0, length] into m equal segments with sum c_k (r*)^k / k!
/// <= 1/2 and return m (n - 1). The threshold 1/2 (instead of 1) leaves a
/// robust margin for numeric coefficient bounds.
pub fn interval_zero_bound(c: &[f64], length: f64) -> usize {
    let n = c.len();
    assert!(n >= 1);
    assert!(length > 0.0);
    if poussin_sum(c, length) <= 0.5 {
        return n - 1;
    }
    // Smallest integer m with the condition: the predicate is monotone in m.
    let ok = |m: usize| poussin_sum(c, length / m as f64) <= 0.5;
    let mut hi = 2usize;
    while !ok(hi) {
        hi *= 2;
        assert!(hi < 1 << 40, "coefficient bounds are not finite");
    }
    let mut lo = hi / 2; // ok(lo) is false (lo == 1 handled above)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi * (n - 1)
}

/// Upper bound pi (n+1) (1 + 3 C length) for the variation of argument of
/// any solution along a segment of the given length.
pub fn index_bound(n: usize, c_bound: f64, length: f64) -> f64 {
    assert!(c_bound >= 0.0 && length >= 0.0);
    PI * (n as f64 + 1.0) * (1.0 + 3.0 * c_bound * length)
}

/// Zero bound 3/2 (n+1) (1 + perimeter R) for linear combinations of
/// solutions of a monic order-n equation with |a_i| <= R on a domain
/// containing the triangle.
pub fn triangle_zero_bound(n: usize, r_bound: f64, perimeter: f64) -> f64 {
    assert!(r_bound >= 0.0 && perimeter >= 0.0);
    1.5 * (n as f64 + 1.0) * (1.0 + perimeter * r_bound)
}

// ---------------------------------------------------------------------------
// Quasipolynomials
// ---------------------------------------------------------------------------

/// Finite exponent set with multiplicities.
#[derive(Clone, Debug)]
pub struct ExponentSet {
    pub entries: Vec<(Complex64, u32)>,
}

impl ExponentSet {
    pub fn real(lambdas: &[(f64, u32)]) -> Self {
        ExponentSet {
            entries: lambdas.iter().map(|&(l, m)| (Complex64::new(l, 0.0), m)).collect(),
        }
    }

    /// Total count #S = sum of multiplicities.
    pub fn count(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m as u64).sum()
    }

    /// Max pairwise distance of the support.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0_f64;
        for (i, (a, _)) in self.entries.iter().enumerate() {
            for (b, _) in &self.entries[..i] {
                d = d.max((a - b).norm());
            }
        }
        d
    }
}

/// floor(#S - 1 + 2 diam S): a bound for the isolated roots of any
/// quasipolynomial sum c t^lambda ln^{k-1} t with real exponent set S, in
/// any triangle avoiding 0. Errors with NonRealSpectrum when S is not real.
pub fn quasipolynomial_bound(s: &ExponentSet) -> Result<i64> {
    let scale = s.entries.iter().map(|(l, _)| l.norm()).fold(1.0, f64::max);
    if s.entries.iter().any(|(l, _)| l.im.abs() > 1e-12 * scale) {
        return Err(Error::NonRealSpectrum);
    }
    Ok((s.count() as f64 - 1.0 + 2.0 * s.diameter()).floor() as i64)
}

/// Sum of c t^lambda ln^{k-1} t terms, evaluated on the principal branch
/// (plane slit along the closed negative real axis).
#[derive(Clone, Debug)]
pub struct QuasiPolynomial {
    pub terms: Vec<QpTerm>,
}

#[derive(Clone, Copy, Debug)]
pub struct QpTerm {
    pub lambda: f64,
    /// k >= 1; the term carries ln^{k-1} t.
    pub log_power: u32,
    pub coeff: Complex64,
}

impl QuasiPolynomial {
    /// True when every term is a plain nonnegative integer power (entire).
    pub fn is_entire(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.log_power == 1 && t.lambda >= 0.0 && t.lambda.fract() == 0.0)
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        if self.is_entire() {
            for term in &self.terms {
                acc += term.coeff * t.powu(term.lambda as u32);
            }
            return acc;
        }
        let log_t = t.ln(); // principal branch
        for term in &self.terms {
            let mut v = term.coeff * (log_t * term.lambda).exp();
            for _ in 1..term.log_power {
                v *= log_t;
            }
            acc += v;
        }
        acc
    }

    /// Count isolated zeros inside the triangle by the argument principle.
    /// Non-entire quasipolynomials reject triangles meeting the slit.
    pub fn count_zeros(&self, t: &Triangle, tol: f64) -> Result<i64> {
        if !self.is_entire() && t.crosses_negative_axis() {
            return Err(Error::SlitCrossing);
        }
        argument_principle_count(&|z| self.eval(z), t, tol)
    }
}

// ---------------------------------------------------------------------------
// Argument-principle counting
// ---------------------------------------------------------------------------

/// Sample budget for adaptive boundary refinement.
const MAX_BOUNDARY_SAMPLES: usize = 1 << 20;

/// Default boundary-proximity tolerance for a triangle of the given
/// perimeter.
pub fn default_boundary_tolerance(perimeter: f64) -> f64 {
    1e-9 * (1.0 + perimeter)
}

/// Winding number of f over the positively oriented triangle boundary;
/// equals the number of zeros inside (with multiplicity) for f analytic in
/// a neighbourhood of the closed triangle.
///
/// The boundary sampling is refined until consecutive phase increments stay
/// below pi/2 and the winding differs from an integer by less than 0.25.
pub fn argument_principle_count(
    f: &dyn Fn(Complex64) -> Complex64,
    t: &Triangle,
    tol: f64,
) -> Result<i64> {
    let mut total = 0.0_f64;
    let mut sample_count = 0usize;
    for (a, b) in t.edges() {
        total += edge_phase_variation(f, a, b, tol, &mut sample_count)?;
    }
    let winding = total / (2.0 * PI);
    let nearest = winding.round();
    if (winding - nearest).abs() >= 0.25 {
        return Err(Error::NonConvergent);
    }
    Ok(nearest as i64)
}

fn edge_phase_variation(
    f: &dyn Fn(Complex64) -> Complex64,
    a: Complex64,
    b: Complex64,
    tol: f64,
    sample_count: &mut usize,
) -> Result<f64> {
    // Initial uniform sampling, then midpoint-validated recursive
    // subdivision of each gap. The midpoint consistency test (the two
    // half-increments must add up to the whole within rounding) catches
    // aliasing where a near-2-pi phase jump masquerades as a small
    // principal-value increment.
    let n0 = 8;
    let params: Vec<f64> = (0..=n0).map(|k| k as f64 / n0 as f64).collect();
    let values: Vec<Complex64> = params.iter().map(|&s| f(a + (b - a) * s)).collect();
    *sample_count += values.len();
    let mut scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut total = 0.0;
    for k in 0..n0 {
        total += gap_phase(
            f,
            a,
            b,
            params[k],
            params[k + 1],
            values[k],
            values[k + 1],
            tol,
            sample_count,
            &mut scale,
            0,
        )?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn gap_phase(
    f: &dyn Fn(Complex64) -> Complex64,
    a: Complex64,
    b: Complex64,
    s0: f64,
    s1: f64,
    v0: Complex64,
    v1: Complex64,
    tol: f64,
    sample_count: &mut usize,
    scale: &mut f64,
    depth: u32,
) -> Result<f64> {
    let floor = tol * scale.max(1e-300);
    if v0.norm() <= floor || v1.norm() <= floor {
        return Err(Error::ZeroOnBoundary);
    }
    if *sample_count >= MAX_BOUNDARY_SAMPLES || depth > 48 {
        return Err(Error::NonConvergent);
    }
    let sm = 0.5 * (s0 + s1);
    let vm = f(a + (b - a) * sm);
    *sample_count += 1;
    *scale = scale.max(vm.norm());
    if vm.norm() <= tol * scale.max(1e-300) {
        return Err(Error::ZeroOnBoundary);
    }
    let d = (v1 / v0).arg();
    let d1 = (vm / v0).arg();
    let d2 = (v1 / vm).arg();
    let consistent = (d1 + d2 - d).abs() < 1e-6;
    if consistent && d1.abs() < PI / 2.0 && d2.abs() < PI / 2.0 {
        return Ok(d1 + d2);
    }
    Ok(gap_phase(f, a, b, s0, sm, v0, vm, tol, sample_count, scale, depth + 1)?
        + gap_phase(f, a, b, sm, s1, vm, v1, tol, sample_count, scale, depth + 1)?)
}

/// Winding of a closed sampled curve of nonzero values. Errors with
/// NonConvergent if any consecutive phase increment reaches pi/2 (the
/// sampling is then too coarse to trust) or the total misses an integer by
/// 0.25 or more.
pub fn winding_from_closed_samples(values: &[Complex64]) -> Result<i64> {
    if values.len() < 4 {
        return Err(Error::NonConvergent);
    }
    let mut total = 0.0;
    for k in 0..values.len() {
        let v0 = values[k];
        let v1 = values[(k + 1) % values.len()];
        if v0.norm() == 0.0 || v1.norm() == 0.0 {
            return Err(Error::ZeroOnBoundary);
        }
        let dphi = (v1 / v0).arg();
        if dphi.abs() >= PI / 2.0 {
            return Err(Error::NonConvergent);
        }
        total += dphi;
    }
    let winding = total / (2.0 * PI);
    let nearest = winding.round();
    if (winding - nearest).abs() >= 0.25 {
        return Err(Error::NonConvergent);
    }
    Ok(nearest as i64)
}
