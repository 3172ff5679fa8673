//! Sparse bivariate polynomials over Gaussian rationals.
//!
//! `BiPoly` is the carrier of all symbolic algebra: a canonical map from
//! exponent pairs (r, s) to nonzero coefficients. Monomials are ordered
//! graded-lexicographically with ties broken by the higher x-power, which
//! fixes both the printing order and the basis enumeration used elsewhere.

use crate::coeff::Coefficient;
use crate::degree::Degree;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent pair (r, s) for x^r y^s.
///
/// The `Ord` instance is graded lex ascending: lower total degree first,
/// and within a degree the higher x-power first (x^2 < xy < y^2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub r: u32,
    pub s: u32,
}

impl Monomial {
    pub fn new(r: u32, s: u32) -> Self {
        Monomial { r, s }
    }

    pub fn degree(&self) -> u32 {
        self.r + self.s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.s).cmp(&(other.degree(), other.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        BiPoly::monomial(Coefficient::one(), 0, 0)
    }

    pub fn monomial(c: Coefficient, r: u32, s: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(r, s), c);
        }
        BiPoly { terms }
    }

    pub fn var_x() -> Self {
        BiPoly::monomial(Coefficient::one(), 1, 0)
    }

    pub fn var_y() -> Self {
        BiPoly::monomial(Coefficient::one(), 0, 1)
    }

    pub fn constant(c: Coefficient) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, r: u32, s: u32) -> Coefficient {
        self.terms.get(&Monomial::new(r, s)).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn insert_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Total degree; the zero polynomial reports the minus-infinity sentinel.
    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .map(Degree::Finite)
            .unwrap_or(Degree::MinusInfinity)
    }

    /// Sum of coefficient magnitudes |re| + |im| (exact rational).
    pub fn norm(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.terms.values() {
            acc += c.magnitude();
        }
        acc
    }

    /// Homogeneous component of total degree d.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.insert_term(*m, c.clone());
            }
        }
        out
    }

    pub fn diff_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            if m.r > 0 {
                let factor = Coefficient::from_int(m.r as i64);
                out.insert_term(Monomial::new(m.r - 1, m.s), (&factor).mul(c));
            }
        }
        out
    }

    pub fn diff_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            if m.s > 0 {
                let factor = Coefficient::from_int(m.s as i64);
                out.insert_term(Monomial::new(m.r, m.s - 1), (&factor).mul(c));
            }
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        let mut out = BiPoly::zero();
        for (m, v) in &self.terms {
            out.insert_term(*m, v.mul(c));
        }
        out
    }

    pub fn mul_monomial(&self, r: u32, s: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, v) in &self.terms {
            out.insert_term(Monomial::new(m.r + r, m.s + s), v.clone());
        }
        out
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval(&self, x: &Coefficient, y: &Coefficient) -> Coefficient {
        let mut acc = Coefficient::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..m.r {
                term *= x;
            }
            for _ in 0..m.s {
                term *= y;
            }
            acc += &term;
        }
        acc
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_f64(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            acc += c.to_complex64() * x.powu(m.r) * y.powu(m.s);
        }
        acc
    }

    /// Substitute polynomials for the variables: p(u(x,y), v(x,y)).
    pub fn compose(&self, u: &BiPoly, v: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = BiPoly::constant(c.clone());
            for _ in 0..m.r {
                term = &term * u;
            }
            for _ in 0..m.s {
                term = &term * v;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Exact primitive in x with zero constant slice: d/dx of the result is self.
    pub fn integrate_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let div = Coefficient::from_int((m.r + 1) as i64);
            out.insert_term(Monomial::new(m.r + 1, m.s), c.div(&div));
        }
        out
    }

    /// Exact primitive in y with zero constant slice.
    pub fn integrate_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let div = Coefficient::from_int((m.s + 1) as i64);
            out.insert_term(Monomial::new(m.r, m.s + 1), c.div(&div));
        }
        out
    }

    /// Restriction y = 0 viewed as a polynomial in x alone: coefficients by x-power.
    pub fn slice_y0(&self) -> Vec<Coefficient> {
        let mut out: Vec<Coefficient> = Vec::new();
        for (m, c) in &self.terms {
            if m.s == 0 {
                if out.len() <= m.r as usize {
                    out.resize(m.r as usize + 1, Coefficient::zero());
                }
                out[m.r as usize] = c.clone();
            }
        }
        out
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(Monomial::new(ma.r + mb.r, ma.s + mb.s), ca.mul(cb));
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            out.insert_term(*m, -c);
        }
        out
    }
}

fn fmt_var(f: &mut String, name: char, exp: u32) {
    if exp == 0 {
        return;
    }
    if !f.is_empty() && !f.ends_with('*') {
        f.push('*');
    }
    f.push(name);
    if exp > 1 {
        f.push('^');
        f.push_str(&exp.to_string());
    }
}

impl fmt::Display for BiPoly {
    /// Canonical printing: descending graded-lex order, `c*x^r*y^s` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            // Fold a leading real sign into the term separator.
            let (sep, printed) = if c.is_real() {
                let mag = c.magnitude();
                let neg = c.re < BigRational::zero();
                let body = Coefficient::new(mag, BigRational::zero());
                (neg, body)
            } else {
                (false, c.clone())
            };
            if first {
                if sep {
                    write!(f, "-")?;
                }
                first = false;
            } else if sep {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut buf = String::new();
            let is_unit = printed == Coefficient::one();
            if !is_unit || (m.r == 0 && m.s == 0) {
                buf.push_str(&printed.to_string());
            }
            fmt_var(&mut buf, 'x', m.r);
            fmt_var(&mut buf, 'y', m.s);
            write!(f, "{buf}")?;
        }
        Ok(())
    }
}
