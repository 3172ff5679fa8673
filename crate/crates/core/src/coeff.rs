//! Exact Gaussian-rational coefficients.
//!
//! A [`Coefficient`] is an element of Q(i): a pair of arbitrary-precision
//! rationals (re, im). All arithmetic is exact and equality is decidable.
//! The magnitude used by the polynomial norm is |re| + |im|, which is an
//! exact rational upper bound for the complex modulus, so every bound
//! stated in terms of absolute values of coefficients remains valid.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub re: BigRational,
    pub im: BigRational,
}

impl Coefficient {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Coefficient { re, im }
    }

    pub fn zero() -> Self {
        Coefficient { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Coefficient { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Coefficient { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// Exact rational re/im pair p/q + (p'/q')i from four integers.
    pub fn from_ratio(p: i64, q: i64, pi: i64, qi: i64) -> Self {
        Coefficient {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::new(BigInt::from(pi), BigInt::from(qi)),
        }
    }

    pub fn rational(p: i64, q: i64) -> Self {
        Coefficient {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// |re| + |im|: exact, >= 0, and zero iff the coefficient is zero.
    pub fn magnitude(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }

    pub fn conj(&self) -> Self {
        Coefficient { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared complex modulus re^2 + im^2 (exact rational).
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Coefficient { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    // Inherent reference arithmetic: callers use these without importing
    // the operator traits.
    pub fn add(&self, rhs: &Coefficient) -> Coefficient {
        Coefficient { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Coefficient) -> Coefficient {
        Coefficient { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn mul(&self, rhs: &Coefficient) -> Coefficient {
        Coefficient {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn div(&self, rhs: &Coefficient) -> Coefficient {
        let inv = rhs.inv().expect("division by zero coefficient");
        self.mul(&inv)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        Coefficient { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        Coefficient { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        Coefficient {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign<&Coefficient> for Coefficient {
    fn mul_assign(&mut self, rhs: &Coefficient) {
        *self = (&*self).mul(rhs);
    }
}

impl<'a> Div<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        let inv = rhs.inv().expect("division by zero coefficient");
        self.mul(&inv)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { re: -self.re, im: -self.im }
    }
}

impl<'a> Neg for &'a Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coefficient {
    /// Canonical form used by the textual grammar: a plain rational `p/q`
    /// when the imaginary part vanishes, otherwise `(p/q+p'/q'i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "({}{}{}i)", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
        }
    }
}
