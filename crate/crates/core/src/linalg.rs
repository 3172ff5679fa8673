//! Dense linear algebra: exact matrices over the Gaussian rationals and
//! small complex floating-point matrices.
//!
//! The exact side provides deterministic Gaussian elimination (leftmost
//! nonzero pivot, first eligible row) for solving the homogeneous Sylvester
//! blocks and indeterminate-coefficient systems, plus Faddeev-LeVerrier for
//! exact characteristic polynomials and adjugates. The floating side covers
//! the numeric needs: LU solve/inverse, matrix exponential and eigenvalues
//! of small matrices.

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::roots::aberth_roots;
use crate::unipoly::UniPoly;
use num_complex::Complex64;

// ---------------------------------------------------------------------------
// Exact matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Coefficient>,
}

impl ExactMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMat { rows, cols, data: vec![Coefficient::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Coefficient::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coefficient>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        ExactMat { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Coefficient {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coefficient) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mat_mul(&self, rhs: &ExactMat) -> ExactMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = ExactMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.mul(rhs.get(k, j));
                    let cur = out.get(i, j).add(&prod);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> ExactMat {
        let data = self.data.iter().map(|v| v.mul(c)).collect();
        ExactMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &ExactMat) -> ExactMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        ExactMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Coefficient {
        let mut acc = Coefficient::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn to_complex(&self) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c.to_complex64()).collect(),
        }
    }

    /// Row-reduce a copy of [A | b...] in place; shared by solve/rank/det.
    /// Returns (echelon matrix, pivot columns, sign flips).
    fn echelon(&self) -> (ExactMat, Vec<(usize, usize)>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        let mut swaps = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
                swaps += 1;
            }
            let inv = m.get(row, col).inv().unwrap();
            for j in col..m.cols {
                let v = m.get(row, j).mul(&inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let sub = factor.mul(m.get(row, j));
                    let cur = m.get(r, j).sub(&sub);
                    m.set(r, j, cur);
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        (m, pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> Coefficient {
        assert_eq!(self.rows, self.cols);
        // Fraction-free style elimination is unnecessary over Q(i); plain
        // exact elimination with pivot tracking gives the determinant.
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Coefficient::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(pr) = pivot_row else { return Coefficient::zero() };
            if pr != col {
                for j in 0..n {
                    let a = m.get(col, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(col, j, b);
                    m.set(pr, j, a);
                }
                det = -det;
            }
            let pv = m.get(col, col).clone();
            det *= &pv;
            let inv = pv.inv().unwrap();
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).mul(&inv);
                for j in col..n {
                    let sub = factor.mul(m.get(col, j));
                    let cur = m.get(r, j).sub(&sub);
                    m.set(r, j, cur);
                }
            }
        }
        det
    }

    /// Solve A x = b exactly. Returns None when inconsistent; an
    /// underdetermined system gets the deterministic solution with all free
    /// variables set to zero.
    pub fn solve(&self, b: &[Coefficient]) -> Option<Vec<Coefficient>> {
        assert_eq!(self.rows, b.len());
        let mut aug = ExactMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (ech, pivots, _) = aug.echelon();
        // Inconsistent iff a pivot lands in the rhs column.
        if pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let mut x = vec![Coefficient::zero(); self.cols];
        for &(r, c) in &pivots {
            x[c] = ech.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Exact characteristic polynomial chi(t) = det(tE - A) and the adjugate
    /// matrix polynomial P(t) with (tE - A) P(t) = chi(t) E, via
    /// Faddeev-LeVerrier.
    pub fn char_adjugate(&self) -> (UniPoly, Vec<ExactMat>) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut chi = vec![Coefficient::zero(); n + 1];
        chi[n] = Coefficient::one();
        // M_1 = E; c_{n-k} = -tr(A M_k)/k; M_{k+1} = A M_k + c_{n-k} E.
        let mut mats = Vec::with_capacity(n);
        let mut m = ExactMat::identity(n);
        for k in 1..=n {
            let am = self.mat_mul(&m);
            let c = -(am.trace().div(&Coefficient::from_int(k as i64)));
            chi[n - k] = c.clone();
            mats.push(m.clone());
            if k < n {
                let mut next = am;
                for i in 0..n {
                    let cur = next.get(i, i).add(&c);
                    next.set(i, i, cur);
                }
                m = next;
            }
        }
        // P(t) = sum_k t^{n-1-k} M_{k+1}; reorder to ascending powers.
        mats.reverse();
        (UniPoly::new(chi), mats)
    }
}

// ---------------------------------------------------------------------------
// Complex floating-point matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        CMat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mat_mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        let data = self.data.iter().map(|a| a * c).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    /// Maximum absolute row sum (the operator norm for the sup norm on
    /// vectors); this is the matrix norm used in all reported metrics.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// LU-based inverse with partial pivoting.
    pub fn inverse(&self) -> Result<CMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let (pr, pmag) = (col..n)
                .map(|r| (r, a.get(r, col).norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pmag < 1e-300 {
                return Err(Error::SingularMatrix);
            }
            if pr != col {
                for j in 0..n {
                    let (u, v) = (a.get(col, j), a.get(pr, j));
                    a.set(col, j, v);
                    a.set(pr, j, u);
                    let (u, v) = (inv.get(col, j), inv.get(pr, j));
                    inv.set(col, j, v);
                    inv.set(pr, j, u);
                }
            }
            let piv = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / piv);
                inv.set(col, j, inv.get(col, j) / piv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - f * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - f * inv.get(col, j));
                }
            }
        }
        Ok(inv)
    }

    /// Matrix exponential by scaling and squaring with a Taylor kernel.
    pub fn expm(&self) -> CMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let norm = self.norm_inf();
        let squarings = if norm > 0.25 { (norm / 0.25).log2().ceil() as u32 } else { 0 };
        let scaled = self.scale(Complex64::new(1.0 / f64::powi(2.0, squarings as i32), 0.0));
        let mut sum = CMat::identity(n);
        let mut term = CMat::identity(n);
        for k in 1..=24 {
            term = term.mat_mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.max_abs() < 1e-300 {
                break;
            }
        }
        let mut result = sum;
        for _ in 0..squarings {
            result = result.mat_mul(&result);
        }
        result
    }

    /// Floating-point characteristic polynomial by Faddeev-LeVerrier,
    /// coefficients by ascending power (monic).
    pub fn char_poly(&self) -> Vec<Complex64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut chi = vec![Complex64::new(0.0, 0.0); n + 1];
        chi[n] = Complex64::new(1.0, 0.0);
        let mut m = CMat::identity(n);
        for k in 1..=n {
            let am = self.mat_mul(&m);
            let tr: Complex64 = (0..n).map(|i| am.get(i, i)).sum();
            let c = -tr / k as f64;
            chi[n - k] = c;
            if k < n {
                let mut next = am;
                for i in 0..n {
                    next.set(i, i, next.get(i, i) + c);
                }
                m = next;
            }
        }
        chi
    }

    /// Eigenvalues of a small matrix: closed forms for n <= 2, otherwise
    /// the characteristic polynomial and a simultaneous (Aberth) root
    /// iteration. Accuracy degrades near multiple eigenvalues for n >= 3
    /// (root clustering); callers pick tolerances accordingly.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        match self.rows {
            1 => vec![self.get(0, 0)],
            2 => {
                let tr = self.get(0, 0) + self.get(1, 1);
                let det = self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0);
                let disc = (tr * tr - det * 4.0).sqrt();
                vec![(tr - disc) * 0.5, (tr + disc) * 0.5]
            }
            _ => aberth_roots(&self.char_poly()),
        }
    }
}
