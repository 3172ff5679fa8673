//! Derivation of the redundant hypergeometric Picard-Fuchs system
//! (tE - A) X' = B X for the vector of basic Abelian integrals, its
//! conversion to Fuchsian form, and the residual-norm / spread metrics.
//!
//! The construction divides H d(omega_i) by dH for every monomial
//! primitive omega_i; the remainder rows give A, the exterior derivative
//! of the incomplete ratio gives B (exact forms die under d, so reading
//! b_ij off d(eta_i) agrees with the expansion eta_i = sum b_ij omega_j + dF_i
//! on the level of integrals).

use crate::bipoly::{BiPoly, Monomial};
use crate::coeff::Coefficient;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::exec;
use crate::hamiltonian::Hamiltonian;
use crate::kform::KForm;
use crate::linalg::{CMat, ExactMat};
use crate::parse::parse_coefficient;
use crate::roots::aberth_roots;
use crate::unipoly::UniPoly;
use num_complex::Complex64;

/// Monomial 2-form basis of the remainder space together with the chosen
/// primitives.
#[derive(Clone, Debug)]
pub struct BasisSpec {
    pub n: u32,
    /// nu = n (2n - 1).
    pub nu: usize,
    /// Exponent pairs (r, s), r + s <= 2n - 2, in graded-lex order.
    pub monomials: Vec<Monomial>,
    /// Primitives omega_i with d(omega_i) = x^r y^s dx^dy.
    pub primitives: Vec<KForm>,
}

/// The derived pair of constant nu x nu matrices encoding (tE - A)X' = BX.
#[derive(Clone, Debug)]
pub struct HyperGeomSystem {
    pub basis: BasisSpec,
    pub a: ExactMat,
    pub b: ExactMat,
}

/// chi(t) = det(tE - A) and the adjugate matrix polynomial P with
/// (tE - A) P(t) = chi(t) E.
#[derive(Clone, Debug)]
pub struct CharAdjugate {
    pub chi: UniPoly,
    /// Coefficient matrices of P by ascending power of t (degree nu - 1).
    pub p: Vec<ExactMat>,
}

/// Fuchsian form dX/dt = (sum_j A_j / (t - t_j)) X.
#[derive(Clone, Debug)]
pub struct FuchsianSystem {
    pub points: Vec<Complex64>,
    pub residues: Vec<CMat>,
}

#[derive(Clone, Copy, Debug)]
pub struct GeometryMetrics {
    /// max_j of the maximum-absolute-row-sum norm of the residue A_j.
    pub residual_norm: f64,
    /// max over i != j of 1/|t_i - t_j| and over i of |t_i|.
    pub spread: f64,
}

/// Monomial primitives: omega_{(r,s)} = x^{r+1}/(r+1) y^s dy, so that
/// d(omega) = x^r y^s dx^dy exactly.
pub fn build_basis(n: u32) -> BasisSpec {
    assert!(n >= 1, "basis requires n >= 1");
    let cap = 2 * n - 2;
    let mut monomials = Vec::new();
    for d in 0..=cap {
        for s in 0..=d {
            monomials.push(Monomial::new(d - s, s));
        }
    }
    let nu = n as usize * (2 * n as usize - 1);
    debug_assert_eq!(monomials.len(), nu);
    let primitives = monomials
        .iter()
        .map(|m| {
            let c = Coefficient::rational(1, (m.r + 1) as i64);
            KForm::one_form(BiPoly::zero(), BiPoly::monomial(c, m.r + 1, m.s))
        })
        .collect();
    BasisSpec { n, nu, monomials, primitives }
}

impl BasisSpec {
    /// Coordinates of a 2-form in the monomial basis; errors when a
    /// coefficient of too-high degree appears.
    fn coordinates(&self, form: &KForm) -> Result<Vec<Coefficient>> {
        let KForm::Two(w) = form else {
            panic!("coordinates expects a 2-form");
        };
        let cap = (2 * self.n - 2) as i64;
        if w.degree() > Degree::Finite(cap) {
            return Err(Error::InternalDegreeViolation(format!(
                "2-form coefficient degree {} exceeds {}",
                w.degree(),
                cap
            )));
        }
        let mut coords = vec![Coefficient::zero(); self.nu];
        for (m, c) in w.terms() {
            let idx = self
                .monomials
                .iter()
                .position(|b| b == m)
                .expect("monomial within degree cap");
            coords[idx] = c.clone();
        }
        Ok(coords)
    }
}

/// Derive the redundant hypergeometric system for a transversal Hamiltonian.
pub fn derive_system(h: &Hamiltonian) -> Result<HyperGeomSystem> {
    if !h.check_transversal().transversal {
        return Err(Error::NonTransversal);
    }
    let basis = build_basis(h.n());
    let rows: Vec<Result<(Vec<Coefficient>, Vec<Coefficient>)>> =
        exec::map_slice(&basis.primitives, |omega| {
            let d_omega = omega.ext_d()?;
            let dividend = d_omega.mul_poly(h.poly());
            let div = h.divide(&dividend)?;
            let a_row = basis.coordinates(&div.remainder)?;
            let d_eta = div.ratio.ext_d()?;
            let b_row = basis.coordinates(&d_eta)?;
            Ok((a_row, b_row))
        });
    let mut a = ExactMat::zeros(basis.nu, basis.nu);
    let mut b = ExactMat::zeros(basis.nu, basis.nu);
    for (i, row) in rows.into_iter().enumerate() {
        let (a_row, b_row) = row?;
        for (j, v) in a_row.into_iter().enumerate() {
            a.set(i, j, v);
        }
        for (j, v) in b_row.into_iter().enumerate() {
            b.set(i, j, v);
        }
    }
    Ok(HyperGeomSystem { basis, a, b })
}

/// Exact characteristic polynomial and adjugate of tE - A.
pub fn char_adjugate(sys: &HyperGeomSystem) -> CharAdjugate {
    let (chi, p) = sys.a.char_adjugate();
    CharAdjugate { chi, p }
}

/// Numeric roots of det(tE - A) without multiplicity (from the exact
/// squarefree part, so clusters cannot smear).
pub fn spectrum(sys: &HyperGeomSystem) -> Vec<Complex64> {
    let (chi, _) = sys.a.char_adjugate();
    aberth_roots(&chi.squarefree_part().coeffs_f64())
}

/// Convert to Fuchsian form. Requires chi to have simple roots: the exact
/// gcd(chi, chi') test catches algebraic multiplicity, the pairwise
/// separation test catches numeric near-collision.
pub fn to_fuchsian(sys: &HyperGeomSystem, precision: f64) -> Result<FuchsianSystem> {
    assert!(precision > 0.0);
    let CharAdjugate { chi, p } = char_adjugate(sys);
    let gcd = chi.gcd(&chi.derivative());
    if gcd.degree() >= Degree::Finite(1) {
        return Err(Error::RepeatedSpectrum);
    }
    let points = aberth_roots(&chi.coeffs_f64());
    let scale = 1.0 + points.iter().map(|t| t.norm()).fold(0.0, f64::max);
    for i in 0..points.len() {
        for j in 0..i {
            if (points[i] - points[j]).norm() <= 1e-8 * scale {
                return Err(Error::RepeatedSpectrum);
            }
        }
    }
    let chi_prime = chi.derivative();
    let b = sys.b.to_complex();
    let p_complex: Vec<CMat> = p.iter().map(ExactMat::to_complex).collect();
    let eval_p = |t: Complex64| -> CMat {
        let mut acc = CMat::zeros(sys.basis.nu, sys.basis.nu);
        let mut power = Complex64::new(1.0, 0.0);
        for pk in &p_complex {
            acc = acc.add(&pk.scale(power));
            power *= t;
        }
        acc
    };
    let residues: Vec<CMat> = points
        .iter()
        .map(|&tj| {
            let denom = chi_prime.eval_f64(tj);
            eval_p(tj).mat_mul(&b).scale(denom.inv())
        })
        .collect();
    // Verify the partial-fraction reconstruction at deterministic probe
    // points well away from the poles.
    let fs = FuchsianSystem { points: points.clone(), residues };
    for k in 0..4 {
        let t = Complex64::from_polar(2.0 * scale + k as f64, 0.37 + 1.1 * k as f64);
        let direct = eval_p(t).mat_mul(&b).scale(chi.eval_f64(t).inv());
        let rebuilt = fs.coefficient_matrix(t);
        let err = direct.sub(&rebuilt).norm_inf();
        let mag = direct.norm_inf().max(1.0);
        if err > precision.max(1e-12) * mag * 1e3 {
            return Err(Error::NumericalFailure(format!(
                "partial fraction reconstruction off by {err:.3e} at probe {k}"
            )));
        }
    }
    Ok(fs)
}

impl FuchsianSystem {
    pub fn dim(&self) -> usize {
        self.residues.first().map(|m| m.rows).unwrap_or(0)
    }

    /// Sum of A_j / (t - t_j).
    pub fn coefficient_matrix(&self, t: Complex64) -> CMat {
        let n = self.dim();
        let mut acc = CMat::zeros(n, n);
        for (tj, aj) in self.points.iter().zip(&self.residues) {
            acc = acc.add(&aj.scale((t - tj).inv()));
        }
        acc
    }
}

/// Residual norm and spread of a Fuchsian system.
pub fn geometry_metrics(f: &FuchsianSystem) -> GeometryMetrics {
    assert!(!f.points.is_empty(), "metrics need at least one singular point");
    let residual_norm = f.residues.iter().map(CMat::norm_inf).fold(0.0, f64::max);
    let mut spread = f.points.iter().map(|t| t.norm()).fold(0.0, f64::max);
    for i in 0..f.points.len() {
        for j in 0..i {
            let d = (f.points[i] - f.points[j]).norm();
            if d > 0.0 {
                spread = spread.max(1.0 / d);
            }
        }
    }
    GeometryMetrics { residual_norm, spread }
}

// ---------------------------------------------------------------------------
// pf-v1 serialization
// ---------------------------------------------------------------------------

impl HyperGeomSystem {
    pub fn serialize_pf1(&self) -> String {
        let mut out = String::from("pf-v1 hypergeom\n");
        out.push_str(&format!("n {}\n", self.basis.n));
        out.push_str(&format!("nu {}\n", self.basis.nu));
        out.push_str("monomials\n");
        for m in &self.basis.monomials {
            out.push_str(&format!("{} {}\n", m.r, m.s));
        }
        for (name, mat) in [("A", &self.a), ("B", &self.b)] {
            out.push_str(&format!("matrix {name}\n"));
            for i in 0..mat.rows {
                let row: Vec<String> =
                    (0..mat.cols).map(|j| mat.get(i, j).to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out.push_str("end\n");
        out
    }

    pub fn parse_pf1(src: &str) -> Result<Self> {
        let mut lines = src.lines().enumerate();
        let perr = |line: usize, msg: &str| Error::ParseError {
            line: line + 1,
            col: 1,
            msg: msg.to_string(),
        };
        let (i, header) = lines.next().ok_or(perr(0, "empty input"))?;
        if header.trim() != "pf-v1 hypergeom" {
            return Err(perr(i, "expected header 'pf-v1 hypergeom'"));
        }
        let mut n: Option<u32> = None;
        let mut nu: Option<usize> = None;
        for _ in 0..2 {
            let (i, line) = lines.next().ok_or(perr(1, "truncated header"))?;
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next()) {
                (Some("n"), Some(v)) => n = v.parse().ok(),
                (Some("nu"), Some(v)) => nu = v.parse().ok(),
                _ => return Err(perr(i, "expected 'n <int>' or 'nu <int>'")),
            }
        }
        let n = n.ok_or(perr(1, "missing n"))?;
        let nu = nu.ok_or(perr(2, "missing nu"))?;
        let basis = build_basis(n);
        if basis.nu != nu {
            return Err(perr(2, "nu inconsistent with n"));
        }
        let (i, line) = lines.next().ok_or(perr(3, "truncated"))?;
        if line.trim() != "monomials" {
            return Err(perr(i, "expected 'monomials'"));
        }
        for expected in &basis.monomials {
            let (i, line) = lines.next().ok_or(perr(0, "truncated monomial list"))?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2
                || parts[0] != expected.r.to_string()
                || parts[1] != expected.s.to_string()
            {
                return Err(perr(i, "monomial list does not match graded-lex basis"));
            }
        }
        let mut mats = Vec::new();
        for name in ["A", "B"] {
            let (i, line) = lines.next().ok_or(perr(0, "truncated"))?;
            if line.trim() != format!("matrix {name}") {
                return Err(perr(i, "expected matrix header"));
            }
            let mut mat = ExactMat::zeros(nu, nu);
            for r in 0..nu {
                let (i, line) = lines.next().ok_or(perr(0, "truncated matrix"))?;
                let entries: Vec<&str> = line.split_whitespace().collect();
                if entries.len() != nu {
                    return Err(perr(i, "wrong entry count in matrix row"));
                }
                for (c, e) in entries.iter().enumerate() {
                    mat.set(r, c, parse_coefficient(e)?);
                }
            }
            mats.push(mat);
        }
        let b = mats.pop().unwrap();
        let a = mats.pop().unwrap();
        Ok(HyperGeomSystem { basis, a, b })
    }
}

fn fmt_complex(c: Complex64) -> String {
    format!("[{:.17e}, {:.17e}]", c.re, c.im)
}

fn parse_complex_pair(src: &str) -> Option<Complex64> {
    let inner = src.trim().strip_prefix('[')?.strip_suffix(']')?;
    let mut parts = inner.split(',');
    let re: f64 = parts.next()?.trim().parse().ok()?;
    let im: f64 = parts.next()?.trim().parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(Complex64::new(re, im))
}

impl FuchsianSystem {
    pub fn serialize_pf1(&self) -> String {
        let dim = self.dim();
        let mut out = String::from("pf-v1 fuchsian\n");
        out.push_str(&format!("dim {dim}\n"));
        out.push_str(&format!("points {}\n", self.points.len()));
        for (t, res) in self.points.iter().zip(&self.residues) {
            out.push_str(&format!("point {}\n", fmt_complex(*t)));
            for i in 0..dim {
                let row: Vec<String> =
                    (0..dim).map(|j| fmt_complex(res.get(i, j))).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out.push_str("end\n");
        out
    }

    pub fn parse_pf1(src: &str) -> Result<Self> {
        let perr = |line: usize, msg: &str| Error::ParseError {
            line: line + 1,
            col: 1,
            msg: msg.to_string(),
        };
        let mut lines = src.lines().enumerate();
        let (i, header) = lines.next().ok_or(perr(0, "empty input"))?;
        if header.trim() != "pf-v1 fuchsian" {
            return Err(perr(i, "expected header 'pf-v1 fuchsian'"));
        }
        let (i, dim_line) = lines.next().ok_or(perr(1, "truncated"))?;
        let dim: usize = dim_line
            .trim()
            .strip_prefix("dim ")
            .and_then(|v| v.parse().ok())
            .ok_or(perr(i, "expected 'dim <int>'"))?;
        let (i, pts_line) = lines.next().ok_or(perr(2, "truncated"))?;
        let count: usize = pts_line
            .trim()
            .strip_prefix("points ")
            .and_then(|v| v.parse().ok())
            .ok_or(perr(i, "expected 'points <int>'"))?;
        let mut points = Vec::new();
        let mut residues = Vec::new();
        for _ in 0..count {
            let (i, line) = lines.next().ok_or(perr(0, "truncated point"))?;
            let t = line
                .trim()
                .strip_prefix("point ")
                .and_then(parse_complex_pair)
                .ok_or(perr(i, "expected 'point [re, im]'"))?;
            points.push(t);
            let mut mat = CMat::zeros(dim, dim);
            for r in 0..dim {
                let (i, line) = lines.next().ok_or(perr(0, "truncated residue"))?;
                let entries = split_bracketed(line);
                if entries.len() != dim {
                    return Err(perr(i, "wrong entry count in residue row"));
                }
                for (c, e) in entries.iter().enumerate() {
                    let v = parse_complex_pair(e).ok_or(perr(i, "bad complex entry"))?;
                    mat.set(r, c, v);
                }
            }
            residues.push(mat);
        }
        Ok(FuchsianSystem { points, residues })
    }
}

fn split_bracketed(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in line.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
                if depth == 0 {
                    out.push(cur.trim().to_string());
                    cur.clear();
                }
            }
            _ if depth > 0 => cur.push(ch),
            _ => {}
        }
    }
    out
}
