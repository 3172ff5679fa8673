//! Abelian integrals over real ovals and the validation harness for the
//! derived Picard-Fuchs systems.

use crate::analytic::oval::{flow_oval, LineIntegrand, OvalTrace};
use crate::analytic::rk::RkOptions;
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::exec;
use crate::hamiltonian::Hamiltonian;
use crate::kform::KForm;
use crate::picard_fuchs::HyperGeomSystem;
use num_complex::Complex64;

/// A 1-form that can be integrated along an oval: polynomial, or rational
/// with denominators (the Gelfand-Leray ratio eta may be rational with
/// vanishing residues on the level curves).
#[derive(Clone, Debug)]
pub enum OneForm {
    Poly { p: BiPoly, q: BiPoly },
    Rational { p_num: BiPoly, p_den: BiPoly, q_num: BiPoly, q_den: BiPoly },
}

impl OneForm {
    pub fn from_kform(form: &KForm) -> Self {
        match form {
            KForm::One { p, q } => OneForm::Poly { p: p.clone(), q: q.clone() },
            _ => panic!("expected a 1-form"),
        }
    }
}

impl LineIntegrand for OneForm {
    fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        let cx = Complex64::new(x, 0.0);
        let cy = Complex64::new(y, 0.0);
        match self {
            OneForm::Poly { p, q } => (p.eval_f64(cx, cy).re, q.eval_f64(cx, cy).re),
            OneForm::Rational { p_num, p_den, q_num, q_den } => (
                p_num.eval_f64(cx, cy).re / p_den.eval_f64(cx, cy).re,
                q_num.eval_f64(cx, cy).re / q_den.eval_f64(cx, cy).re,
            ),
        }
    }
}

fn quadrature_opts(tol: f64) -> RkOptions {
    RkOptions { rtol: (tol * 1e-2).clamp(1e-13, 1e-6), atol: 1e-14, ..Default::default() }
}

/// Line integral of omega over the positively oriented oval at level t.
pub fn abelian_integral(h: &Hamiltonian, omega: &OneForm, t: f64, tol: f64) -> Result<f64> {
    let opts = quadrature_opts(tol);
    let trace = flow_oval(h, t, (tol * 1e2).max(1e-10), &[omega], &opts, false)?;
    Ok(trace.integrals[0])
}

/// Integrate several forms along the same traced oval.
pub fn abelian_integrals(
    h: &Hamiltonian,
    forms: &[OneForm],
    t: f64,
    tol: f64,
) -> Result<OvalTrace> {
    let opts = quadrature_opts(tol);
    let refs: Vec<&dyn LineIntegrand> = forms.iter().map(|f| f as &dyn LineIntegrand).collect();
    flow_oval(h, t, (tol * 1e2).max(1e-10), &refs, &opts, false)
}

#[derive(Clone, Copy, Debug)]
pub struct GelfandLeray {
    /// Central difference (I(t+h) - I(t-h)) / 2h of the omega integral.
    pub lhs: f64,
    /// Integral of eta at t.
    pub rhs: f64,
    pub residual: f64,
}

/// Check d/dt oint omega = oint eta. For a polynomial eta the hypothesis
/// d(omega) = dH ^ eta is verified symbolically first; rational eta is
/// integrated as supplied.
pub fn gelfand_leray_check(
    h: &Hamiltonian,
    omega: &KForm,
    eta: &OneForm,
    t: f64,
    h_step: f64,
    tol: f64,
) -> Result<GelfandLeray> {
    assert_eq!(omega.rank(), 1);
    if let OneForm::Poly { p, q } = eta {
        let eta_form = KForm::one_form(p.clone(), q.clone());
        let dh = KForm::scalar(h.poly().clone()).ext_d()?;
        let expected = dh.wedge(&eta_form)?;
        if omega.ext_d()? != expected {
            return Err(Error::HypothesisViolated);
        }
    }
    let omega_eval = OneForm::from_kform(omega);
    let upper = abelian_integral(h, &omega_eval, t + h_step, tol)?;
    let lower = abelian_integral(h, &omega_eval, t - h_step, tol)?;
    let lhs = (upper - lower) / (2.0 * h_step);
    let rhs = abelian_integral(h, eta, t, tol)?;
    Ok(GelfandLeray { lhs, rhs, residual: (lhs - rhs).abs() })
}

/// Validation harness for the derived system: max over the grid of
/// ||(tE - A) X'(t) - B X(t)||_inf / ||X(t)||_inf with X the vector of
/// integrals of all basis primitives and X' by central differences.
pub fn verify_pf(
    h: &Hamiltonian,
    sys: &HyperGeomSystem,
    t_grid: &[f64],
    h_step: f64,
    tol: f64,
) -> Result<f64> {
    let forms: Vec<OneForm> =
        sys.basis.primitives.iter().map(OneForm::from_kform).collect();
    let nu = sys.basis.nu;
    let a: Vec<f64> = (0..nu * nu)
        .map(|k| sys.a.get(k / nu, k % nu).to_complex64().re)
        .collect();
    let b: Vec<f64> = (0..nu * nu)
        .map(|k| sys.b.get(k / nu, k % nu).to_complex64().re)
        .collect();
    let residuals: Vec<Result<f64>> = exec::map_slice(t_grid, |&t| {
        let x0 = abelian_integrals(h, &forms, t, tol)?.integrals;
        let xp = abelian_integrals(h, &forms, t + h_step, tol)?.integrals;
        let xm = abelian_integrals(h, &forms, t - h_step, tol)?.integrals;
        let xdot: Vec<f64> =
            xp.iter().zip(&xm).map(|(u, v)| (u - v) / (2.0 * h_step)).collect();
        let mut resid: f64 = 0.0;
        for i in 0..nu {
            // (t x'_i - sum_j a_ij x'_j) - sum_j b_ij x_j
            let mut acc = t * xdot[i];
            for j in 0..nu {
                acc -= a[i * nu + j] * xdot[j];
                acc -= b[i * nu + j] * x0[j];
            }
            resid = resid.max(acc.abs());
        }
        let scale = x0.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
        Ok(resid / scale)
    });
    let mut max_resid: f64 = 0.0;
    for r in residuals {
        max_resid = max_resid.max(r?);
    }
    Ok(max_resid)
}
