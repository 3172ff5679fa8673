//! Reduction of first-order linear systems with polynomial coefficient
//! matrices to scalar monic equations via iterated derivations.
//!
//! The covector iterates q_{k+1} = q_k' + q_k A(t) stabilise over the
//! rational-function field no later than after n steps; the first linear
//! dependence yields the monic scalar equation satisfied by y = q_0 x for
//! every solution x. Rank decisions are exact (fraction-free elimination on
//! the polynomial matrix of iterates).

use crate::coeff::Coefficient;
use crate::degree::Degree;
use crate::multipoly::MultiPoly;
use crate::unipoly::UniPoly;
use num_complex::Complex64;

/// A(t) = sum_k A_k t^k with exact entries; entry (i, j) is a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    dim: usize,
    /// Row-major entries.
    entries: Vec<UniPoly>,
}

impl LinearSystem {
    pub fn new(dim: usize, entries: Vec<UniPoly>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        LinearSystem { dim, entries }
    }

    pub fn from_constant(mat: &[Vec<i64>]) -> Self {
        let dim = mat.len();
        let entries = mat
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), dim);
                row.iter().map(|&v| UniPoly::constant(Coefficient::from_int(v)))
            })
            .collect();
        LinearSystem { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &UniPoly {
        &self.entries[i * self.dim + j]
    }

    /// Max degree d of the matrix polynomial.
    pub fn coeff_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(|p| p.degree().finite())
            .max()
            .unwrap_or(0) as usize
    }

    /// Evaluate to a complex matrix at t (row-major).
    pub fn eval_f64(&self, t: Complex64) -> Vec<Complex64> {
        self.entries.iter().map(|p| p.eval_f64(t)).collect()
    }
}

/// Monic scalar equation y^(l) + a_1 y^(l-1) + ... + a_l y = 0 with exact
/// rational-function coefficients a_i = num_i / den_i.
#[derive(Clone, Debug)]
pub struct ScalarOde {
    pub order: usize,
    /// a_1, ..., a_order as (numerator, denominator) pairs, denominators
    /// monic.
    pub coeffs: Vec<(UniPoly, UniPoly)>,
}

impl ScalarOde {
    /// Evaluate (a_1, ..., a_l) at a complex point.
    pub fn coeffs_at(&self, t: Complex64) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|(num, den)| num.eval_f64(t) / den.eval_f64(t))
            .collect()
    }
}

/// Covector of univariate polynomials.
pub type Covector = Vec<UniPoly>;

#[derive(Clone, Debug)]
pub struct CovectorIterates {
    /// q_0, ..., q_kmax.
    pub iterates: Vec<Covector>,
    /// deg_t of each iterate (finite entries; zero covector reports None).
    pub degrees: Vec<Option<i64>>,
    /// The a-priori growth cap deg q0 + k max(1, d) for each k.
    pub degree_caps: Vec<i64>,
}

/// q_0 = q0, q_{k+1} = q_k' + q_k A(t), exactly.
pub fn covector_iterates(sys: &LinearSystem, q0: &Covector, kmax: usize) -> CovectorIterates {
    assert_eq!(q0.len(), sys.dim());
    let d = sys.coeff_degree().max(1) as i64;
    let deg0 = covector_degree(q0).unwrap_or(0);
    let mut iterates = vec![q0.clone()];
    for _ in 0..kmax {
        let prev = iterates.last().unwrap();
        let mut next: Covector = (0..sys.dim()).map(|_| UniPoly::zero()).collect();
        for (j, item) in next.iter_mut().enumerate() {
            let mut acc = prev[j].derivative();
            for (k, qk) in prev.iter().enumerate() {
                acc = &acc + &(qk * sys.entry(k, j));
            }
            *item = acc;
        }
        iterates.push(next);
    }
    let degrees = iterates.iter().map(|q| covector_degree(q)).collect();
    let degree_caps = (0..=kmax as i64).map(|k| deg0 + k * d).collect();
    CovectorIterates { iterates, degrees, degree_caps }
}

fn covector_degree(q: &Covector) -> Option<i64> {
    q.iter().filter_map(|p| p.degree().finite()).max()
}

/// Exact rank over the rational-function field of the matrix whose rows are
/// the given polynomial covectors (fraction-free cross-multiplication
/// elimination with content stripping).
fn polynomial_rank(rows: &[Covector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Covector> = rows.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(pivot) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, pivot);
        let (pnum, rest) = {
            let pivot_entry = m[row][col].clone();
            (pivot_entry, row + 1)
        };
        for r in rest..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..cols {
                let a = &(&m[r][c] * &pnum) - &(&m[row][c] * &factor);
                m[r][c] = a;
            }
            strip_content(&mut m[r]);
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Divide a polynomial covector by the gcd of its entries (keeps degrees
/// small during fraction-free elimination).
fn strip_content(row: &mut Covector) {
    let mut g = UniPoly::zero();
    for p in row.iter() {
        g = g.gcd(p);
        if g.degree() == Degree::Finite(0) {
            return;
        }
    }
    if g.is_zero() || g.degree() == Degree::Finite(0) {
        return;
    }
    for p in row.iter_mut() {
        let (q, r) = p.div_rem(&g);
        debug_assert!(r.is_zero());
        *p = q;
    }
}

/// Find the minimal l <= dim with q_l in the rational-function span of
/// q_0..q_{l-1} and return the monic scalar equation for y = q0 . x.
pub fn reduce_to_scalar(sys: &LinearSystem, q0: &Covector) -> ScalarOde {
    assert!(q0.iter().any(|p| !p.is_zero()), "q0 must be nonzero");
    let n = sys.dim();
    let iter = covector_iterates(sys, q0, n);
    let mut ell = n;
    for l in 1..=n {
        if polynomial_rank(&iter.iterates[..=l]) == l {
            ell = l;
            break;
        }
    }
    // Solve q_ell = sum_i c_i q_i over the rational-function field by
    // clearing denominators: treat entries as a linear system with
    // rational-function arithmetic realised through polynomial Cramer data.
    let coeffs = solve_dependence(&iter.iterates[..=ell]);
    ScalarOde { order: ell, coeffs }
}

/// Given q_0..q_l with q_l dependent on the (full-rank) prefix, return the
/// monic relation coefficients a_1..a_l of y^(l) + sum a_i y^(l-i) = 0,
/// i.e. a_i = -c_{l-i} where q_l = sum c_k q_k.
fn solve_dependence(iterates: &[Covector]) -> Vec<(UniPoly, UniPoly)> {
    let l = iterates.len() - 1;
    let cols = iterates[0].len();
    // Rational-function Gaussian elimination on the transposed system
    // [q_0^T ... q_{l-1}^T | q_l^T].
    #[derive(Clone)]
    struct Rf {
        num: UniPoly,
        den: UniPoly,
    }
    impl Rf {
        fn zero() -> Self {
            Rf { num: UniPoly::zero(), den: UniPoly::one() }
        }
        fn from_poly(p: &UniPoly) -> Self {
            Rf { num: p.clone(), den: UniPoly::one() }
        }
        fn is_zero(&self) -> bool {
            self.num.is_zero()
        }
        fn normalize(mut self) -> Self {
            if self.num.is_zero() {
                return Rf::zero();
            }
            let g = self.num.gcd(&self.den);
            if g.degree() > Degree::Finite(0) {
                self.num = self.num.div_rem(&g).0;
                self.den = self.den.div_rem(&g).0;
            }
            let lead = self.den.leading().unwrap().clone();
            let inv = lead.inv().unwrap();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
            self
        }
        fn mul(&self, o: &Rf) -> Rf {
            Rf { num: &self.num * &o.num, den: &self.den * &o.den }.normalize()
        }
        fn sub(&self, o: &Rf) -> Rf {
            Rf {
                num: &(&self.num * &o.den) - &(&o.num * &self.den),
                den: &self.den * &o.den,
            }
            .normalize()
        }
        fn div(&self, o: &Rf) -> Rf {
            Rf { num: &self.num * &o.den, den: &self.den * &o.num }.normalize()
        }
    }

    let mut mat: Vec<Vec<Rf>> = (0..cols)
        .map(|c| (0..l).map(|k| Rf::from_poly(&iterates[k][c])).collect())
        .collect();
    let mut rhs: Vec<Rf> = (0..cols).map(|c| Rf::from_poly(&iterates[l][c])).collect();

    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut used = vec![false; cols];
    for col in 0..l {
        let Some(pr) = (0..cols).find(|&r| !used[r] && !mat[r][col].is_zero()) else {
            continue;
        };
        used[pr] = true;
        pivot_rows.push(pr);
        let inv_piv = mat[pr][col].clone();
        for r in 0..cols {
            if r == pr || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].div(&inv_piv);
            for c in col..l {
                let delta = factor.mul(&mat[pr][c]);
                mat[r][c] = mat[r][c].sub(&delta);
            }
            let delta = factor.mul(&rhs[pr]);
            rhs[r] = rhs[r].sub(&delta);
        }
    }
    // Back out c_col = rhs[pivot_row] / pivot for each pivot column.
    let mut c: Vec<Rf> = vec![Rf::zero(); l];
    for (col, &pr) in pivot_rows.iter().enumerate() {
        c[col] = rhs[pr].div(&mat[pr][col]);
    }
    // a_i = -c_{l-i}, i = 1..l.
    (1..=l)
        .map(|i| {
            let rf = c[l - i].clone();
            let num = -&rf.num;
            (num, rf.den)
        })
        .collect()
}

/// Lie-derivative iterates q_{k+1} = dq/dt + sum_i dq/dx_i P_i for a
/// polynomial vector field P in variables (t, x_1..x_n).
#[derive(Clone, Debug)]
pub struct LieIterates {
    pub iterates: Vec<MultiPoly>,
    pub degrees: Vec<Option<i64>>,
}

pub fn lie_iterates(p: &[MultiPoly], q: &MultiPoly, kmax: usize) -> LieIterates {
    let nvars = q.nvars();
    assert_eq!(p.len() + 1, nvars, "P must have one entry per x variable");
    let mut iterates = vec![q.clone()];
    for _ in 0..kmax {
        let prev = iterates.last().unwrap();
        let mut next = prev.diff(0);
        for (i, pi) in p.iter().enumerate() {
            next = &next + &(&prev.diff(i + 1) * pi);
        }
        iterates.push(next);
    }
    let degrees = iterates.iter().map(|q| q.degree().finite()).collect();
    LieIterates { iterates, degrees }
}

/// Check that a numeric solution sample satisfies the scalar equation:
/// returns |y^(l) + sum a_i y^(l-i)| given the derivative stack
/// y, y', ..., y^(l) at the point t.
pub fn scalar_residual(ode: &ScalarOde, t: Complex64, derivs: &[Complex64]) -> f64 {
    assert_eq!(derivs.len(), ode.order + 1);
    let mut acc = derivs[ode.order];
    for (i, (num, den)) in ode.coeffs.iter().enumerate() {
        let a = num.eval_f64(t) / den.eval_f64(t);
        acc += a * derivs[ode.order - 1 - i];
    }
    acc.norm()
}

pub use crate::chains::{chain_bound, generalized_exponential, Budget, ChainKind, ExpKind};

impl LinearSystem {
    /// pf-v1 text form: header, dimension, then dim^2 polynomial entries in
    /// t, row-major.
    pub fn serialize_pf1(&self) -> String {
        let mut out = String::from("pf-v1 linsys\n");
        out.push_str(&format!("dim {}\n", self.dim));
        for e in &self.entries {
            out.push_str(&format!("entry {e}\n"));
        }
        out.push_str("end\n");
        out
    }

    pub fn parse_pf1(src: &str) -> crate::error::Result<Self> {
        use crate::error::Error;
        let perr = |line: usize, msg: &str| Error::ParseError {
            line: line + 1,
            col: 1,
            msg: msg.to_string(),
        };
        let mut lines = src.lines().enumerate();
        let (i, header) = lines.next().ok_or(perr(0, "empty input"))?;
        if header.trim() != "pf-v1 linsys" {
            return Err(perr(i, "expected header 'pf-v1 linsys'"));
        }
        let (i, dim_line) = lines.next().ok_or(perr(1, "truncated"))?;
        let dim: usize = dim_line
            .trim()
            .strip_prefix("dim ")
            .and_then(|v| v.parse().ok())
            .ok_or(perr(i, "expected 'dim <int>'"))?;
        if dim == 0 {
            return Err(perr(i, "dimension must be positive"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for _ in 0..dim * dim {
            let (i, line) = lines.next().ok_or(perr(0, "truncated entries"))?;
            let body = line
                .trim()
                .strip_prefix("entry ")
                .ok_or(perr(i, "expected 'entry <polynomial in t>'"))?;
            entries.push(crate::parse::parse_unipoly(body)?);
        }
        Ok(LinearSystem::new(dim, entries))
    }
}
