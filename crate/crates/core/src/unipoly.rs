//! Dense univariate polynomials over the Gaussian rationals.
//!
//! Used for characteristic polynomials, resultant elimination and the
//! rational-function coefficients of derived scalar equations. Arithmetic
//! is exact; gcd computations normalise to monic at every step to keep
//! coefficient growth in check.

use crate::coeff::Coefficient;
use crate::degree::Degree;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    /// Coefficients by ascending power; no trailing zeros.
    coeffs: Vec<Coefficient>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Coefficient>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Coefficient::one()] }
    }

    pub fn constant(c: Coefficient) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial c t^k.
    pub fn monomial(c: Coefficient, k: usize) -> Self {
        let mut coeffs = vec![Coefficient::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    pub fn var() -> Self {
        UniPoly::monomial(Coefficient::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Coefficient {
        self.coeffs.get(k).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn leading(&self) -> Option<&Coefficient> {
        self.coeffs.last()
    }

    pub fn norm(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for c in &self.coeffs {
            acc += c.magnitude();
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&Coefficient::from_int(k as i64)))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn eval(&self, x: &Coefficient) -> Coefficient {
        let mut acc = Coefficient::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x);
            acc += c;
        }
        acc
    }

    pub fn eval_f64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex64();
        }
        acc
    }

    pub fn scale(&self, c: &Coefficient) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|v| v.mul(c)).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: self = q * rhs + r with deg r < deg rhs.
    pub fn div_rem(&self, rhs: &UniPoly) -> (UniPoly, UniPoly) {
        let d_rhs = match rhs.degree().finite() {
            None => panic!("division by zero polynomial"),
            Some(d) => d as usize,
        };
        let lead_inv = rhs.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < d_rhs + 1 {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Coefficient::zero(); rem.len() - d_rhs];
        for k in (d_rhs..rem.len()).rev() {
            let factor = rem[k].mul(&lead_inv);
            if factor.is_zero() {
                continue;
            }
            quot[k - d_rhs] = factor.clone();
            for (j, rc) in rhs.coeffs.iter().enumerate() {
                let sub = factor.mul(rc);
                rem[k - d_rhs + j] -= &sub;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm over the exact field.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.monic();
        let mut b = rhs.monic();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Squarefree part (radical) of the polynomial.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().finite().unwrap_or(0) < 1 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Degree::Finite(0) {
            self.monic()
        } else {
            let (q, _) = self.div_rem(&g);
            q.monic()
        }
    }

    /// Squarefree decomposition: list of (factor, multiplicity) with
    /// pairwise coprime monic squarefree factors (Yun's algorithm).
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        let f = self.monic();
        if f.degree().finite().unwrap_or(0) < 1 {
            return out;
        }
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut i = 1u32;
        loop {
            let d = &c - &b.derivative();
            let g = b.gcd(&d);
            if g.degree().finite().unwrap_or(0) >= 1 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            c = d.div_rem(&g).0;
            i += 1;
            if b.degree() == Degree::Finite(0) {
                break;
            }
        }
        out
    }

    pub fn coeffs_f64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_complex64()).collect()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push((&self.coeff(k)).add(&rhs.coeff(k)));
        }
        UniPoly::new(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push((&self.coeff(k)).sub(&rhs.coeff(k)));
        }
        UniPoly::new(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Coefficient::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a.mul(b);
                coeffs[i + j] += &prod;
            }
        }
        UniPoly::new(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = if c.is_real() && c.re < BigRational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let unit = body == Coefficient::one();
            if !unit || k == 0 {
                write!(f, "{body}")?;
            }
            if k > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "t")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}
