//! Polynomial differential k-forms on the plane, k in {0, 1, 2}.
//!
//! The degree of a k-form is the maximum of the degrees of its coefficients
//! plus k; the zero form of any rank has degree minus infinity. Under this
//! convention deg(a^b) <= deg a + deg b and the exterior derivative does not
//! increase degree.

use crate::bipoly::BiPoly;
use crate::coeff::Coefficient;
use crate::degree::Degree;
use crate::error::{Error, Result};
use num_rational::BigRational;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum KForm {
    /// A polynomial function.
    Scalar(BiPoly),
    /// p dx + q dy.
    One { p: BiPoly, q: BiPoly },
    /// w dx^dy.
    Two(BiPoly),
}

impl KForm {
    pub fn scalar(p: BiPoly) -> Self {
        KForm::Scalar(p)
    }

    pub fn one_form(p: BiPoly, q: BiPoly) -> Self {
        KForm::One { p, q }
    }

    pub fn two_form(w: BiPoly) -> Self {
        KForm::Two(w)
    }

    pub fn zero(rank: u8) -> Self {
        match rank {
            0 => KForm::Scalar(BiPoly::zero()),
            1 => KForm::One { p: BiPoly::zero(), q: BiPoly::zero() },
            2 => KForm::Two(BiPoly::zero()),
            _ => panic!("rank must be 0, 1 or 2"),
        }
    }

    pub fn rank(&self) -> u8 {
        match self {
            KForm::Scalar(_) => 0,
            KForm::One { .. } => 1,
            KForm::Two(_) => 2,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            KForm::Scalar(p) => p.is_zero(),
            KForm::One { p, q } => p.is_zero() && q.is_zero(),
            KForm::Two(w) => w.is_zero(),
        }
    }

    /// Maximum coefficient degree plus rank; minus infinity for zero forms.
    pub fn degree(&self) -> Degree {
        let coeff_deg = match self {
            KForm::Scalar(p) => p.degree(),
            KForm::One { p, q } => p.degree().max(q.degree()),
            KForm::Two(w) => w.degree(),
        };
        coeff_deg + self.rank() as i64
    }

    /// Sum of coefficient magnitudes over all components.
    pub fn norm(&self) -> BigRational {
        match self {
            KForm::Scalar(p) => p.norm(),
            KForm::One { p, q } => p.norm() + q.norm(),
            KForm::Two(w) => w.norm(),
        }
    }

    /// Exact wedge product. Errors with `RankOverflow` when the rank sum
    /// exceeds 2.
    pub fn wedge(&self, rhs: &KForm) -> Result<KForm> {
        use KForm::*;
        Ok(match (self, rhs) {
            (Scalar(a), Scalar(b)) => Scalar(a * b),
            (Scalar(a), One { p, q }) => One { p: a * p, q: a * q },
            (One { p, q }, Scalar(a)) => One { p: p * a, q: q * a },
            (Scalar(a), Two(w)) => Two(a * w),
            (Two(w), Scalar(a)) => Two(w * a),
            // (p dx + q dy) ^ (u dx + v dy) = (p v - q u) dx^dy
            (One { p, q }, One { p: u, q: v }) => Two(&(p * v) - &(q * u)),
            _ => return Err(Error::RankOverflow),
        })
    }

    /// Exterior derivative; raises rank by 1 and never increases degree.
    pub fn ext_d(&self) -> Result<KForm> {
        match self {
            KForm::Scalar(f) => Ok(KForm::One { p: f.diff_x(), q: f.diff_y() }),
            // d(p dx + q dy) = (q_x - p_y) dx^dy
            KForm::One { p, q } => Ok(KForm::Two(&q.diff_x() - &p.diff_y())),
            KForm::Two(_) => Err(Error::RankOverflow),
        }
    }

    pub fn add(&self, rhs: &KForm) -> KForm {
        use KForm::*;
        match (self, rhs) {
            (Scalar(a), Scalar(b)) => Scalar(a + b),
            (One { p, q }, One { p: u, q: v }) => One { p: p + u, q: q + v },
            (Two(a), Two(b)) => Two(a + b),
            _ => panic!("cannot add forms of different rank"),
        }
    }

    pub fn neg(&self) -> KForm {
        use KForm::*;
        match self {
            Scalar(a) => Scalar(-a),
            One { p, q } => One { p: -p, q: -q },
            Two(a) => Two(-a),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> KForm {
        use KForm::*;
        match self {
            Scalar(a) => Scalar(a.scale(c)),
            One { p, q } => One { p: p.scale(c), q: q.scale(c) },
            Two(a) => Two(a.scale(c)),
        }
    }

    /// Multiply by a polynomial function (0-form coefficientwise).
    pub fn mul_poly(&self, g: &BiPoly) -> KForm {
        use KForm::*;
        match self {
            Scalar(a) => Scalar(a * g),
            One { p, q } => One { p: p * g, q: q * g },
            Two(a) => Two(a * g),
        }
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KForm::Scalar(p) => write!(f, "{p}"),
            KForm::One { p, q } => write!(f, "[{p}, {q}]"),
            KForm::Two(w) => write!(f, "({w}) dx^dy"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_bipoly;

    fn one(p: &str, q: &str) -> KForm {
        KForm::one_form(parse_bipoly(p).unwrap(), parse_bipoly(q).unwrap())
    }

    #[test]
    fn wedge_basis_and_antisymmetry() {
        let dx = one("1", "0");
        let dy = one("0", "1");
        assert_eq!(dx.wedge(&dy).unwrap(), KForm::two_form(parse_bipoly("1").unwrap()));
        assert_eq!(dy.wedge(&dx).unwrap(), KForm::two_form(parse_bipoly("-1").unwrap()));
    }

    #[test]
    fn wedge_circle_fixture() {
        // (2x dx + 2y dy) ^ (1/2)(x dy - y dx) = (x^2 + y^2) dx^dy
        let dh = one("2x", "2y");
        let eta = one("-1/2y", "1/2x");
        let w = dh.wedge(&eta).unwrap();
        assert_eq!(w, KForm::two_form(parse_bipoly("x^2+y^2").unwrap()));
    }

    #[test]
    fn wedge_rank_overflow() {
        let two = KForm::two_form(parse_bipoly("1").unwrap());
        let dx = one("1", "0");
        assert_eq!(two.wedge(&dx).unwrap_err(), Error::RankOverflow);
    }

    #[test]
    fn ext_d_examples() {
        // d(x dy) = dx^dy
        let xdy = one("0", "x");
        assert_eq!(xdy.ext_d().unwrap(), KForm::two_form(parse_bipoly("1").unwrap()));
        // d(x^2 + y^2) = 2x dx + 2y dy
        let f = KForm::scalar(parse_bipoly("x^2+y^2").unwrap());
        assert_eq!(f.ext_d().unwrap(), one("2x", "2y"));
        // d(d(x^3 y)) = 0
        let g = KForm::scalar(parse_bipoly("x^3y").unwrap());
        let dd = g.ext_d().unwrap().ext_d().unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn degree_convention() {
        let w = KForm::two_form(parse_bipoly("x^2y").unwrap());
        assert_eq!(w.degree(), Degree::Finite(5));
        let ydx = one("y", "0");
        assert_eq!(ydx.degree(), Degree::Finite(2));
        let zero1 = KForm::zero(1);
        assert_eq!(zero1.degree(), Degree::MinusInfinity);
    }
}
