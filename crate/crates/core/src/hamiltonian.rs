//! Hamiltonians transversal to infinity: the transversality criterion via
//! the Sylvester block, division of 2-forms by dH with remainder, and
//! numerically isolated critical values.
//!
//! Division follows the degree-lowering scheme: the top homogeneous part of
//! the dividend is produced exactly by the principal part dL through the
//! homogeneous Sylvester map, the cross terms with dH - dL drop the degree,
//! and iteration terminates once the degree reaches the remainder space.

use crate::bipoly::{BiPoly, Monomial};
use crate::coeff::Coefficient;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::kform::KForm;
use crate::linalg::ExactMat;
use crate::roots::{aberth_roots, cluster_points};
use crate::unipoly::UniPoly;
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct Hamiltonian {
    h: BiPoly,
    /// deg H = n + 1.
    n: u32,
    /// Homogeneous part of degree n + 1.
    principal: BiPoly,
}

#[derive(Clone, Debug)]
pub struct Transversality {
    pub transversal: bool,
    /// Determinant of the homogeneous Sylvester block (the resultant of the
    /// partials of the principal part as binary forms).
    pub witness: Coefficient,
}

#[derive(Clone, Debug)]
pub struct DivisionResult {
    /// The incomplete ratio eta (rank 1).
    pub ratio: KForm,
    /// The remainder R (rank 2) of degree <= 2n.
    pub remainder: KForm,
}

#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub x: Complex64,
    pub y: Complex64,
    pub multiplicity: usize,
    pub value: Complex64,
    /// |grad H| at the polished point.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct CriticalValue {
    pub value: Complex64,
    pub multiplicity: usize,
    /// Largest gradient residual among the contributing critical points.
    pub residual: f64,
}

/// Merging threshold for critical values: closer than 1e-8 * (1 + |v|).
pub const CRITICAL_CLUSTER_TOL: f64 = 1e-8;

impl Hamiltonian {
    /// Errors with `DegreeTooLow` unless deg h >= 2.
    pub fn new(h: BiPoly) -> Result<Self> {
        let deg = match h.degree() {
            Degree::Finite(d) if d >= 2 => d as u32,
            _ => return Err(Error::DegreeTooLow),
        };
        let principal = h.homogeneous_part(deg);
        Ok(Hamiltonian { h, n: deg - 1, principal })
    }

    pub fn poly(&self) -> &BiPoly {
        &self.h
    }

    /// n with deg H = n + 1.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn principal(&self) -> &BiPoly {
        &self.principal
    }

    pub fn grad(&self) -> (BiPoly, BiPoly) {
        (self.h.diff_x(), self.h.diff_y())
    }

    /// Decide transversality to infinity. The witness is the determinant of
    /// the square Sylvester block (a, b) -> a L_x + b L_y on homogeneous
    /// polynomials of degree n - 1; it vanishes iff L_x, L_y share a
    /// projective zero, i.e. iff L has a repeated linear factor.
    pub fn check_transversal(&self) -> Transversality {
        let n = self.n as usize;
        let lx = self.principal.diff_x();
        let ly = self.principal.diff_y();
        // Unknowns: coefficients of a (n entries: x^{n-1}, ..., y^{n-1})
        // then b. Rows: monomials of degree 2n - 1 (2n of them).
        let rows = 2 * n;
        let mut mat = ExactMat::zeros(rows, 2 * n);
        for (col, k) in (0..n).enumerate() {
            // a-monomial x^{n-1-k} y^k times L_x.
            for (m, c) in lx.terms() {
                let target_s = m.s + k as u32;
                mat.set(target_s as usize, col, c.clone());
            }
        }
        for (col, k) in (0..n).enumerate() {
            for (m, c) in ly.terms() {
                let target_s = m.s + k as u32;
                mat.set(target_s as usize, n + col, c.clone());
            }
        }
        let witness = mat.det();
        Transversality { transversal: !witness.is_zero(), witness }
    }

    /// Solve a L_x + b L_y = w for homogeneous a, b of degree m - n, where
    /// w is homogeneous of degree m >= 2n - 1. Always solvable for a
    /// transversal principal part.
    fn solve_homogeneous(&self, w: &BiPoly, m: u32) -> Result<(BiPoly, BiPoly)> {
        let n = self.n;
        debug_assert!(m >= 2 * n - 1);
        let d_ab = (m - n) as usize;
        let lx = self.principal.diff_x();
        let ly = self.principal.diff_y();
        let unknowns = 2 * (d_ab + 1);
        let rows = (m + 1) as usize;
        let mut mat = ExactMat::zeros(rows, unknowns);
        // Column order: a-coefficients by ascending y-power, then b's.
        for k in 0..=d_ab {
            for (mon, c) in lx.terms() {
                let s = mon.s as usize + k;
                let cur = mat.get(s, k).add(c);
                mat.set(s, k, cur);
            }
            for (mon, c) in ly.terms() {
                let s = mon.s as usize + k;
                let cur = mat.get(s, d_ab + 1 + k).add(c);
                mat.set(s, d_ab + 1 + k, cur);
            }
        }
        let mut rhs = vec![Coefficient::zero(); rows];
        for (mon, c) in w.terms() {
            debug_assert_eq!(mon.degree(), m);
            rhs[mon.s as usize] = c.clone();
        }
        let sol = mat.solve(&rhs).ok_or(Error::NonTransversal)?;
        let mut a = BiPoly::zero();
        let mut b = BiPoly::zero();
        for k in 0..=d_ab {
            a.insert_term(Monomial::new((d_ab - k) as u32, k as u32), sol[k].clone());
            b.insert_term(Monomial::new((d_ab - k) as u32, k as u32), sol[d_ab + 1 + k].clone());
        }
        Ok((a, b))
    }

    /// Divide a 2-form Omega by dH with remainder: Omega = dH ^ eta + R
    /// exactly, with deg eta <= deg Omega - (n+1) and deg R <= 2n.
    pub fn divide(&self, omega: &KForm) -> Result<DivisionResult> {
        let KForm::Two(w0) = omega else {
            panic!("divide expects a 2-form");
        };
        if !self.check_transversal().transversal {
            return Err(Error::NonTransversal);
        }
        let n = self.n;
        let (hx, hy) = self.grad();
        let mut w = w0.clone();
        let mut eta_p = BiPoly::zero();
        let mut eta_q = BiPoly::zero();
        // Strip homogeneous tops until only the remainder space is left.
        while let Degree::Finite(m) = w.degree() {
            let m = m as u32;
            if m < 2 * n - 1 {
                break;
            }
            let top = w.homogeneous_part(m);
            let (a, b) = self.solve_homogeneous(&top, m)?;
            // dH ^ (a dy - b dx) = (a H_x + b H_y) dx^dy.
            eta_p = &eta_p - &b;
            eta_q = &eta_q + &a;
            let consumed = &(&a * &hx) + &(&b * &hy);
            w = &w - &consumed;
        }
        Ok(DivisionResult {
            ratio: KForm::one_form(eta_p, eta_q),
            remainder: KForm::two_form(w),
        })
    }

    /// Numerically isolated critical points with multiplicities (Bezout
    /// total n^2 for a transversal Hamiltonian).
    pub fn critical_points(&self, precision: f64) -> Result<Vec<CriticalPoint>> {
        if !self.check_transversal().transversal {
            return Err(Error::NonTransversal);
        }
        let target: usize = (self.n as usize) * (self.n as usize);
        let shears: [i64; 13] = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6];
        'shear: for &lambda in &shears {
            let sheared = self.sheared_poly(lambda);
            let hx = sheared.diff_x();
            let hy = sheared.diff_y();
            let Some(resultant) = resultant_y(&hx, &hy) else { continue };
            if resultant.is_zero() {
                continue;
            }
            let fy = as_y_poly(&hx);
            let gy = as_y_poly(&hy);
            let mut points: Vec<(Complex64, Complex64, usize)> = Vec::new();
            for (factor, mult) in resultant.squarefree_decomposition() {
                for x0 in aberth_roots(&factor.coeffs_f64()) {
                    // Reject shear directions where the leading y-coefficients
                    // degenerate above this root (spurious resultant zeros
                    // would contaminate the multiplicity bookkeeping).
                    let lead_f = fy.last().map(|p| p.eval_f64(x0).norm()).unwrap_or(0.0);
                    let lead_g = gy.last().map(|p| p.eval_f64(x0).norm()).unwrap_or(0.0);
                    if lead_f < 1e-9 && lead_g < 1e-9 {
                        continue 'shear;
                    }
                    let ys = common_y_roots(&fy, &gy, x0);
                    match ys.len() {
                        0 => continue, // spurious root of the resultant
                        1 => points.push((x0, ys[0], mult as usize)),
                        _ => continue 'shear, // two critical points share an x
                    }
                }
            }
            let total: usize = points.iter().map(|p| p.2).sum();
            if total != target {
                continue;
            }
            // Map back through the shear and polish on the original gradient.
            let lam = Complex64::new(lambda as f64, 0.0);
            let mut out = Vec::new();
            for (x, y, mult) in points {
                let (px, py, residual) = self.polish_critical_point(x + lam * y, y, precision);
                let value = self.h.eval_f64(px, py);
                out.push(CriticalPoint { x: px, y: py, multiplicity: mult, value, residual });
            }
            out.sort_by(|a, b| {
                (a.value.re, a.value.im, a.x.re)
                    .partial_cmp(&(b.value.re, b.value.im, b.x.re))
                    .unwrap()
            });
            return Ok(out);
        }
        Err(Error::NumericalFailure(
            "critical point isolation failed for all shear directions".into(),
        ))
    }

    /// Critical values clustered by the 1e-8 (1 + |v|) threshold, sorted by
    /// real then imaginary part; multiplicities sum to n^2.
    pub fn critical_values(&self, precision: f64) -> Result<Vec<CriticalValue>> {
        let points = self.critical_points(precision)?;
        let mut expanded = Vec::new();
        for p in &points {
            for _ in 0..p.multiplicity {
                expanded.push(p.value);
            }
        }
        let clusters = cluster_points(&expanded, CRITICAL_CLUSTER_TOL);
        Ok(clusters
            .into_iter()
            .map(|(value, multiplicity)| {
                let residual = points
                    .iter()
                    .filter(|p| {
                        (p.value - value).norm() <= 2.0 * CRITICAL_CLUSTER_TOL * (1.0 + value.norm())
                    })
                    .map(|p| p.residual)
                    .fold(0.0, f64::max);
                CriticalValue { value, multiplicity, residual }
            })
            .collect())
    }

    fn sheared_poly(&self, lambda: i64) -> BiPoly {
        if lambda == 0 {
            return self.h.clone();
        }
        let u = &BiPoly::var_x()
            + &BiPoly::var_y().scale(&Coefficient::from_int(lambda));
        self.h.compose(&u, &BiPoly::var_y())
    }

    fn polish_critical_point(
        &self,
        mut x: Complex64,
        mut y: Complex64,
        precision: f64,
    ) -> (Complex64, Complex64, f64) {
        let (hx, hy) = self.grad();
        let hxx = hx.diff_x();
        let hxy = hx.diff_y();
        let hyy = hy.diff_y();
        for _ in 0..60 {
            let gx = hx.eval_f64(x, y);
            let gy = hy.eval_f64(x, y);
            if gx.norm() + gy.norm() <= precision * 1e-2 {
                break;
            }
            let a = hxx.eval_f64(x, y);
            let b = hxy.eval_f64(x, y);
            let d = hyy.eval_f64(x, y);
            let det = a * d - b * b;
            if det.norm() < 1e-280 {
                break;
            }
            let dx = (gx * d - b * gy) / det;
            let dy = (a * gy - gx * b) / det;
            x -= dx;
            y -= dy;
            if dx.norm() + dy.norm() < 1e-16 * (1.0 + x.norm() + y.norm()) {
                break;
            }
        }
        let residual = (hx.eval_f64(x, y).norm_sqr() + hy.eval_f64(x, y).norm_sqr()).sqrt();
        (x, y, residual)
    }
}

/// Coefficients of p viewed as a polynomial in y whose coefficients are
/// polynomials in x, by ascending y-power.
fn as_y_poly(p: &BiPoly) -> Vec<UniPoly> {
    let mut out: Vec<UniPoly> = Vec::new();
    for (m, c) in p.terms() {
        if out.len() <= m.s as usize {
            out.resize(m.s as usize + 1, UniPoly::zero());
        }
        let cur = &out[m.s as usize] + &UniPoly::monomial(c.clone(), m.r as usize);
        out[m.s as usize] = cur;
    }
    while out.last().map(|p| p.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

/// Exact resultant of f, g with respect to y (a univariate polynomial in x),
/// computed by evaluation of the formal Sylvester determinant at integer
/// sample points and Lagrange interpolation. Returns None when either
/// polynomial is free of y.
fn resultant_y(f: &BiPoly, g: &BiPoly) -> Option<UniPoly> {
    let fy = as_y_poly(f);
    let gy = as_y_poly(g);
    let df = fy.len().checked_sub(1)?;
    let dg = gy.len().checked_sub(1)?;
    if df == 0 && dg == 0 {
        return None;
    }
    if df == 0 {
        // Res(f, g) = f^{deg_y g}
        let mut acc = UniPoly::one();
        for _ in 0..dg {
            acc = &acc * &fy[0];
        }
        return Some(acc);
    }
    if dg == 0 {
        let mut acc = UniPoly::one();
        for _ in 0..df {
            acc = &acc * &gy[0];
        }
        return Some(acc);
    }
    let deg_x = |polys: &[UniPoly]| -> usize {
        polys
            .iter()
            .filter_map(|p| p.degree().finite())
            .max()
            .unwrap_or(0) as usize
    };
    let bound = dg * deg_x(&fy) + df * deg_x(&gy);
    let size = df + dg;
    let samples: Vec<(Coefficient, Coefficient)> = (0..=bound as i64)
        .map(|k| {
            let x = Coefficient::from_int(k);
            let mut mat = ExactMat::zeros(size, size);
            for row in 0..dg {
                for (j, cf) in fy.iter().enumerate() {
                    mat.set(row, row + j, cf.eval(&x));
                }
            }
            for row in 0..df {
                for (j, cg) in gy.iter().enumerate() {
                    mat.set(dg + row, row + j, cg.eval(&x));
                }
            }
            let det = mat.det();
            (x, det)
        })
        .collect();
    Some(lagrange_interpolate(&samples))
}

fn lagrange_interpolate(samples: &[(Coefficient, Coefficient)]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (k, (xk, vk)) in samples.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut denom = Coefficient::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if j == k {
                continue;
            }
            basis = &basis * &UniPoly::new(vec![-xj, Coefficient::one()]);
            denom *= &xk.sub(xj);
        }
        acc = &acc + &basis.scale(&vk.div(&denom));
    }
    acc
}

/// Common roots in y of f(x0, y) = g(x0, y) = 0 at a fixed numeric x0,
/// clustered to one representative per root.
fn common_y_roots(fy: &[UniPoly], gy: &[UniPoly], x0: Complex64) -> Vec<Complex64> {
    let eval_coeffs = |polys: &[UniPoly]| -> Vec<Complex64> {
        polys.iter().map(|p| p.eval_f64(x0)).collect()
    };
    let fc = eval_coeffs(fy);
    let gc = eval_coeffs(gy);
    let poly_at = |coeffs: &[Complex64], y: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    };
    let scale_f: f64 = fc.iter().map(|c| c.norm()).sum::<f64>().max(1e-300);
    let scale_g: f64 = gc.iter().map(|c| c.norm()).sum::<f64>().max(1e-300);
    let mut candidates = Vec::new();
    // Roots of whichever partial genuinely depends on y, checked on the other.
    for (primary, other, so) in [(&fc, &gc, scale_g), (&gc, &fc, scale_f)] {
        if primary.len() <= 1 {
            continue;
        }
        for y in aberth_roots(primary) {
            let v = poly_at(other, y).norm();
            if v <= 1e-6 * so * (1.0 + y.norm()).powi(other.len() as i32) {
                candidates.push(y);
            }
        }
        break;
    }
    cluster_points(&candidates, 1e-6).into_iter().map(|(c, _)| c).collect()
}
