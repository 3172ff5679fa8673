//! Parser for the textual polynomial grammar.
//!
//! Signed terms `c*x^r*y^s` where `c` is a rational `p/q` or a Gaussian
//! rational `(p/q+p'/q'i)`. Whitespace-insensitive; an omitted exponent
//! means 1, an omitted coefficient means 1, and the `*` separators are
//! optional. Parse errors carry 1-based line/column positions.
//!
//! The same grammar with the single variable `t` is used for univariate
//! polynomial inputs (see [`parse_unipoly`]).

use crate::bipoly::{BiPoly, Monomial};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.src[..self.pos.min(self.src.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Error::ParseError { line, col, msg: msg.into() }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    /// `p` or `p/q`, with an optional leading sign.
    fn rational(&mut self) -> Result<BigRational> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let p = self.integer()?;
        let q = if self.eat('/') { self.integer()? } else { BigInt::one() };
        if q.is_zero() {
            return Err(self.err("zero denominator"));
        }
        let r = BigRational::new(p, q);
        Ok(if negative { -r } else { r })
    }

    /// Gaussian rational in parentheses: `(a+bi)`, `(a-bi)`, `(bi)`, `(a)`.
    fn gaussian(&mut self) -> Result<Coefficient> {
        // Caller consumed '('.
        let first = self.rational()?;
        if self.eat('i') {
            let c = if self.eat(')') {
                Coefficient::new(BigRational::zero(), first)
            } else {
                return Err(self.err("expected ')' after imaginary part"));
            };
            return Ok(c);
        }
        if self.eat(')') {
            return Ok(Coefficient::new(first, BigRational::zero()));
        }
        let sign = match self.bump() {
            Some('+') => BigRational::one(),
            Some('-') => -BigRational::one(),
            _ => return Err(self.err("expected '+', '-' or ')' in Gaussian coefficient")),
        };
        let imag = {
            let p = self.integer()?;
            let q = if self.eat('/') { self.integer()? } else { BigInt::one() };
            if q.is_zero() {
                return Err(self.err("zero denominator"));
            }
            BigRational::new(p, q)
        };
        if !self.eat('i') {
            return Err(self.err("expected 'i' after imaginary part"));
        }
        if !self.eat(')') {
            return Err(self.err("expected ')' closing Gaussian coefficient"));
        }
        Ok(Coefficient::new(first, sign * imag))
    }

    fn exponent(&mut self) -> Result<u32> {
        let n = self.integer()?;
        u32::try_from(&n).map_err(|_| self.err("exponent too large"))
    }

    /// One signed term; `vars` lists the accepted variable names in order.
    fn term(&mut self, vars: &[char]) -> Result<(Coefficient, Vec<u32>)> {
        let mut sign = Coefficient::one();
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                _ => break,
            }
        }
        let mut coeff: Option<Coefficient> = None;
        let mut exps = vec![0u32; vars.len()];
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let g = self.gaussian()?;
                    coeff = Some(match coeff {
                        Some(c) => c.mul(&g),
                        None => g,
                    });
                    saw_factor = true;
                }
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    let g = Coefficient::new(r, BigRational::zero());
                    coeff = Some(match coeff {
                        Some(c) => c.mul(&g),
                        None => g,
                    });
                    saw_factor = true;
                }
                Some(c) if vars.contains(&c) => {
                    self.pos += 1;
                    let idx = vars.iter().position(|&v| v == c).unwrap();
                    let e = if self.eat('^') {
                        let e = self.exponent()?;
                        if self.peek() == Some('^') {
                            return Err(self.err("repeated '^'"));
                        }
                        e
                    } else {
                        1
                    };
                    exps[idx] += e;
                    saw_factor = true;
                }
                Some('*') => {
                    self.pos += 1;
                    if self.peek().is_none() {
                        return Err(self.err("dangling '*'"));
                    }
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(self.err("expected a term"));
        }
        let c = coeff.unwrap_or_else(Coefficient::one);
        Ok((sign.mul(&c), exps))
    }

    fn polynomial(&mut self, vars: &[char]) -> Result<Vec<(Coefficient, Vec<u32>)>> {
        let mut out = Vec::new();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        loop {
            let term = self.term(vars)?;
            out.push(term);
            match self.peek() {
                None => break,
                Some('+') | Some('-') => continue,
                Some(other) => return Err(self.err(format!("unexpected character '{other}'"))),
            }
        }
        Ok(out)
    }
}

/// Parse a bivariate polynomial in the variables x, y.
pub fn parse_bipoly(src: &str) -> Result<BiPoly> {
    let mut cur = Cursor::new(src);
    let terms = cur.polynomial(&['x', 'y'])?;
    let mut p = BiPoly::zero();
    for (c, exps) in terms {
        p.insert_term(Monomial::new(exps[0], exps[1]), c);
    }
    Ok(p)
}

/// Parse a standalone coefficient: `p/q` or `(p/q+p'/q'i)`.
pub fn parse_coefficient(src: &str) -> Result<Coefficient> {
    let mut cur = Cursor::new(src);
    let c = if cur.eat('(') {
        cur.gaussian()?
    } else {
        Coefficient::new(cur.rational()?, BigRational::zero())
    };
    if cur.peek().is_some() {
        return Err(cur.err("trailing characters after coefficient"));
    }
    Ok(c)
}

/// Parse a univariate polynomial in the variable t.
pub fn parse_unipoly(src: &str) -> Result<UniPoly> {
    let mut cur = Cursor::new(src);
    let terms = cur.polynomial(&['t'])?;
    let mut coeffs: Vec<Coefficient> = Vec::new();
    for (c, exps) in terms {
        let e = exps[0] as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Coefficient::zero());
        }
        coeffs[e] += &c;
    }
    Ok(UniPoly::new(coeffs))
}
