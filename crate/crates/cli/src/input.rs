//! Parsing of command-line payloads: 1-form literals, triangles, loops,
//! sample files, and the pf-v1 system documents.

use num_complex::Complex64;
use pflab_core::analytic::{ComplexPath, OneForm};
use pflab_core::bipoly::BiPoly;
use pflab_core::bounds::Triangle;
use pflab_core::coeff::Coefficient;
use pflab_core::error::{Error, Result};
use pflab_core::parse::parse_bipoly;

pub fn invalid(msg: impl Into<String>) -> Error {
    Error::ParseError { line: 1, col: 1, msg: msg.into() }
}

/// Read a file argument; "-" means standard input.
pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .lock()
            .read_to_string(&mut buf)
            .map_err(|e| invalid(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))
    }
}

/// Split on `sep` at parenthesis depth zero.
fn split_top_level(src: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(cur.clone());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

/// 1-form literal `[p, q]` meaning p dx + q dy.
pub fn parse_one_form_literal(src: &str) -> Result<(BiPoly, BiPoly)> {
    let inner = src
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| invalid("1-form literal must look like [p, q]"))?;
    let parts = split_top_level(inner, ',');
    if parts.len() != 2 {
        return Err(invalid("1-form literal must have exactly two components"));
    }
    Ok((parse_bipoly(&parts[0])?, parse_bipoly(&parts[1])?))
}

/// Rational 1-form literal `[pn | pd, qn | qd]`.
pub fn parse_rational_one_form(src: &str) -> Result<OneForm> {
    let inner = src
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| invalid("rational 1-form literal must look like [pn | pd, qn | qd]"))?;
    let comps = split_top_level(inner, ',');
    if comps.len() != 2 {
        return Err(invalid("rational 1-form literal must have two components"));
    }
    let mut parsed = Vec::new();
    for comp in &comps {
        let halves: Vec<&str> = comp.split('|').collect();
        match halves.len() {
            1 => parsed.push((parse_bipoly(halves[0])?, BiPoly::one())),
            2 => parsed.push((parse_bipoly(halves[0])?, parse_bipoly(halves[1])?)),
            _ => return Err(invalid("component must be 'num' or 'num | den'")),
        }
    }
    let (q_num, q_den) = parsed.pop().unwrap();
    let (p_num, p_den) = parsed.pop().unwrap();
    if p_den.is_zero() || q_den.is_zero() {
        return Err(invalid("zero denominator in rational 1-form"));
    }
    Ok(OneForm::Rational { p_num, p_den, q_num, q_den })
}

pub fn parse_complex_pair(src: &str) -> Result<Complex64> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(invalid(format!("expected 're,im', got '{src}'")));
    }
    let re: f64 = parts[0].parse().map_err(|_| invalid(format!("bad float '{}'", parts[0])))?;
    let im: f64 = parts[1].parse().map_err(|_| invalid(format!("bad float '{}'", parts[1])))?;
    Ok(Complex64::new(re, im))
}

/// Triangle literal `re,im;re,im;re,im`.
pub fn parse_triangle(src: &str) -> Result<Triangle> {
    let pts: Vec<&str> = src.split(';').collect();
    if pts.len() != 3 {
        return Err(invalid("triangle literal needs three ';'-separated vertices"));
    }
    let a = parse_complex_pair(pts[0])?;
    let b = parse_complex_pair(pts[1])?;
    let c = parse_complex_pair(pts[2])?;
    Triangle::new(a, b, c)
}

/// Loop literal: `circle:cx,cy,r[,start_angle]` or
/// `polygon:re,im;re,im;...` (closed automatically).
pub fn parse_loop(src: &str) -> Result<ComplexPath> {
    if let Some(body) = src.strip_prefix("circle:") {
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(invalid("circle loop needs cx,cy,r[,start_angle]"));
        }
        let cx: f64 = parts[0].parse().map_err(|_| invalid("bad circle center"))?;
        let cy: f64 = parts[1].parse().map_err(|_| invalid("bad circle center"))?;
        let r: f64 = parts[2].parse().map_err(|_| invalid("bad circle radius"))?;
        if r <= 0.0 {
            return Err(invalid("circle radius must be positive"));
        }
        let angle: f64 = if parts.len() == 4 {
            parts[3].parse().map_err(|_| invalid("bad start angle"))?
        } else {
            0.0
        };
        return Ok(ComplexPath::circle(Complex64::new(cx, cy), r, angle));
    }
    if let Some(body) = src.strip_prefix("polygon:") {
        let corners: Result<Vec<Complex64>> =
            body.split(';').map(parse_complex_pair).collect();
        let corners = corners?;
        if corners.len() < 3 {
            return Err(invalid("polygon loop needs at least three corners"));
        }
        return Ok(ComplexPath::closed_polyline(&corners));
    }
    Err(invalid("loop must start with 'circle:' or 'polygon:'"))
}

/// Samples file: one complex number per line as `re im` or `re,im`;
/// blank lines and '#' comments ignored.
pub fn parse_samples(text: &str) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let cleaned = body.replace(',', " ");
        let parts: Vec<&str> = cleaned.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::ParseError {
                line: idx + 1,
                col: 1,
                msg: "expected 're im' per line".into(),
            });
        }
        let re: f64 = parts[0].parse().map_err(|_| Error::ParseError {
            line: idx + 1,
            col: 1,
            msg: "bad real part".into(),
        })?;
        let im: f64 = parts[1].parse().map_err(|_| Error::ParseError {
            line: idx + 1,
            col: 1,
            msg: "bad imaginary part".into(),
        })?;
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}

/// Exact rationals printed with an explicit denominator, Gaussian values
/// as `(p/q+p'/q'i)`.
pub fn fmt_exact(c: &Coefficient) -> String {
    use num_traits::Signed;
    let frac = |r: &num_rational::BigRational| format!("{}/{}", r.numer(), r.denom());
    if c.is_real() {
        frac(&c.re)
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        format!("({}{}{}i)", frac(&c.re), sign, frac(&c.im.abs()))
    }
}
