//! First and second variations of the displacement map under the
//! perturbation dH + eps omega = 0.
//!
//! When the first variation -oint(omega) vanishes identically, omega splits
//! as G dH + dF (the compensator pair); the next variation is then the
//! Abelian integral of G omega. For the rotational Hamiltonian
//! H = (x^2+y^2)/2 the vanishing of all integrals is decided structurally
//! in z, zbar coordinates.

use crate::bipoly::{BiPoly, Monomial};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::kform::KForm;
use crate::linalg::ExactMat;
use crate::parse::parse_bipoly;

/// The pair (G, F) with omega = G dH + dF exactly.
#[derive(Clone, Debug)]
pub struct CompensatorPair {
    pub g: BiPoly,
    pub f: BiPoly,
}

/// Solve d(omega) = dG ^ dH for a polynomial G of degree <= deg_cap by
/// indeterminate coefficients, then recover F as the polynomial primitive
/// of the closed form omega - G dH.
///
/// When the linear system is inconsistent the error reports whether the
/// inconsistency persists at deg_cap + 2, distinguishing a structural
/// obstruction (the integral does not vanish identically) from a cap that
/// was simply too small.
pub fn decompose_relative(
    h: &Hamiltonian,
    omega: &KForm,
    deg_cap: u32,
) -> Result<CompensatorPair> {
    assert_eq!(omega.rank(), 1, "decompose_relative expects a 1-form");
    if !h.check_transversal().transversal {
        return Err(Error::NonTransversal);
    }
    match solve_compensator(h, omega, deg_cap) {
        Some(g) => {
            let f = primitive_of_closed(&remainder_form(omega, h, &g));
            Ok(CompensatorPair { g, f })
        }
        None => {
            let persists = solve_compensator(h, omega, deg_cap + 2).is_none();
            Err(Error::NotDecomposable { cap: deg_cap, persists_at_higher_cap: persists })
        }
    }
}

/// The next-variation form G omega; its Abelian integral is the second
/// variation of the displacement (up to sign), and the step can be
/// iterated.
pub fn second_variation_form(omega: &KForm, pair: &CompensatorPair) -> KForm {
    omega.mul_poly(&pair.g)
}

/// Structural test for identically vanishing integrals over the circles of
/// H = (x^2+y^2)/2: rewrite d(omega) in z, zbar coordinates and check that
/// every diagonal (z zbar)^k coefficient vanishes.
pub fn rotational_center_test(h: &Hamiltonian, omega: &KForm) -> Result<bool> {
    let expected = parse_bipoly("1/2x^2+1/2y^2").expect("static polynomial");
    if h.poly() != &expected {
        return Err(Error::UnsupportedHamiltonian);
    }
    assert_eq!(omega.rank(), 1);
    let KForm::Two(w) = omega.ext_d()? else { unreachable!() };
    // x = (z + zbar)/2, y = (z - zbar)/(2i) = -i(z - zbar)/2.
    let half = Coefficient::rational(1, 2);
    let minus_i_half = Coefficient::from_ratio(0, 1, -1, 2);
    let i_half = Coefficient::from_ratio(0, 1, 1, 2);
    let xz = &BiPoly::var_x().scale(&half) + &BiPoly::var_y().scale(&half);
    let yz = &BiPoly::var_x().scale(&minus_i_half) + &BiPoly::var_y().scale(&i_half);
    let w_z = w.compose(&xz, &yz);
    let diagonal_free = w_z.terms().all(|(m, c)| m.r != m.s || c.is_zero());
    Ok(diagonal_free)
}

fn remainder_form(omega: &KForm, h: &Hamiltonian, g: &BiPoly) -> KForm {
    let dh = KForm::scalar(h.poly().clone()).ext_d().expect("scalar");
    omega.add(&dh.mul_poly(g).neg())
}

/// Polynomial primitive of an exactly closed 1-form p dx + q dy:
/// F(x, y) = int_0^x p(s, y) ds + int_0^y q(0, s) ds.
fn primitive_of_closed(form: &KForm) -> BiPoly {
    let KForm::One { p, q } = form else { panic!("primitive expects a 1-form") };
    debug_assert!(form.ext_d().map(|d| d.is_zero()).unwrap_or(false), "form must be closed");
    let fx = p.integrate_x();
    // q(0, y) as a polynomial in y alone.
    let mut q0 = BiPoly::zero();
    for (m, c) in q.terms() {
        if m.r == 0 {
            q0.insert_term(*m, c.clone());
        }
    }
    &fx + &q0.integrate_y()
}

fn solve_compensator(h: &Hamiltonian, omega: &KForm, deg_cap: u32) -> Option<BiPoly> {
    let KForm::Two(w) = omega.ext_d().expect("rank 1 input") else { unreachable!() };
    let (hx, hy) = h.grad();
    // Unknowns: coefficients of G on monomials of degree <= deg_cap
    // (the constant does not act; keep it anyway, it lands in the kernel).
    let mut unknowns: Vec<Monomial> = Vec::new();
    for d in 0..=deg_cap {
        for s in 0..=d {
            unknowns.push(Monomial::new(d - s, s));
        }
    }
    // Equations: match every monomial up to the maximal degree produced by
    // dG ^ dH or appearing in d(omega).
    let n = h.n();
    let max_deg = (deg_cap as i64 - 1 + n as i64)
        .max(w.degree().finite().unwrap_or(0))
        .max(0) as u32;
    let mut eq_monomials: Vec<Monomial> = Vec::new();
    for d in 0..=max_deg {
        for s in 0..=d {
            eq_monomials.push(Monomial::new(d - s, s));
        }
    }
    let mut mat = ExactMat::zeros(eq_monomials.len(), unknowns.len());
    for (col, u) in unknowns.iter().enumerate() {
        let g = BiPoly::monomial(Coefficient::one(), u.r, u.s);
        // dG ^ dH = (G_x H_y - G_y H_x) dx^dy.
        let contrib = &(&g.diff_x() * &hy) - &(&g.diff_y() * &hx);
        for (m, c) in contrib.terms() {
            let row = eq_monomials.iter().position(|e| e == m)?;
            let cur = mat.get(row, col).add(c);
            mat.set(row, col, cur);
        }
    }
    let mut rhs = vec![Coefficient::zero(); eq_monomials.len()];
    for (m, c) in w.terms() {
        let row = eq_monomials.iter().position(|e| e == m)?;
        rhs[row] = c.clone();
    }
    let sol = mat.solve(&rhs)?;
    let mut g = BiPoly::zero();
    for (u, c) in unknowns.iter().zip(sol) {
        g.insert_term(*u, c);
    }
    Some(g)
}
