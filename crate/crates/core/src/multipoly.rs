//! Small sparse multivariate polynomials over Gaussian rationals, used for
//! Lie-derivative iterations in (t, x_1, ..., x_n).

use crate::coeff::Coefficient;
use crate::degree::Degree;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Coefficient>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Coefficient) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.insert(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.insert(exps, Coefficient::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, exps: Vec<u32>, c: Coefficient) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as i64)
            .max()
            .map(Degree::Finite)
            .unwrap_or(Degree::MinusInfinity)
    }

    pub fn diff(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (exps, c) in &self.terms {
            if exps[var] == 0 {
                continue;
            }
            let mut e = exps.clone();
            e[var] -= 1;
            out.insert(e, c.mul(&Coefficient::from_int(exps[var] as i64)));
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, ca.mul(cb));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_and_mul() {
        // p = t^2 x1: dp/dt = 2 t x1, dp/dx1 = t^2.
        let t = MultiPoly::var(2, 0);
        let x1 = MultiPoly::var(2, 1);
        let p = &(&t * &t) * &x1;
        assert_eq!(p.diff(0), &(&MultiPoly::constant(2, Coefficient::from_int(2)) * &t) * &x1);
        assert_eq!(p.diff(1), &t * &t);
    }
}
