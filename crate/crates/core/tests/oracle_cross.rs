//! Cross-module validation: every symbolic pipeline confronted with an
//! independent numerical experiment.

use num_complex::Complex64;
use pflab_core::analytic::{
    abelian_integral, integrate_along_path, monodromy, verify_pf, ComplexPath, OdeMatrix,
    OneForm, PathSegment,
};
use pflab_core::bipoly::BiPoly;
use pflab_core::coeff::Coefficient;
use pflab_core::hamiltonian::Hamiltonian;
use pflab_core::kform::KForm;
use pflab_core::linalg::CMat;
use pflab_core::parse::{parse_bipoly, parse_unipoly};
use pflab_core::perturbation::{decompose_relative, second_variation_form};
use pflab_core::picard_fuchs::derive_system;
use pflab_core::reduction::{covector_iterates, reduce_to_scalar, LinearSystem};
use pflab_core::unipoly::UniPoly;
use std::f64::consts::PI;

fn ham(src: &str) -> Hamiltonian {
    Hamiltonian::new(parse_bipoly(src).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// Compensator round trip: decomposable => vanishing first variation
// ---------------------------------------------------------------------------

#[test]
fn decomposable_forms_have_vanishing_integrals() {
    let h = ham("1/2x^2+1/2y^2");
    // d(omega) = (x^3 y + x y^3) dx^dy has no diagonal z zbar part; omega
    // includes an exact admixture.
    let omega = KForm::one_form(
        parse_bipoly("x^2y^3").unwrap(),
        parse_bipoly("1/4x^4y+1/2x^2y^3+x^3y^2").unwrap(),
    );
    let pair = decompose_relative(&h, &omega, 4).unwrap();
    // Reconstruction is exact.
    let dh = KForm::scalar(h.poly().clone()).ext_d().unwrap();
    let rebuilt = dh.mul_poly(&pair.g).add(&KForm::scalar(pair.f.clone()).ext_d().unwrap());
    assert_eq!(rebuilt, omega);
    // The first variation vanishes along ten sampled ovals.
    let eval = OneForm::from_kform(&omega);
    for k in 1..=10 {
        let t = 0.1 * k as f64;
        let v = abelian_integral(&h, &eval, t, 1e-11).unwrap();
        assert!(v.abs() < 1e-8, "t={t}: first variation {v}");
    }
}

// ---------------------------------------------------------------------------
// Second variation against a direct displacement-map simulation
// ---------------------------------------------------------------------------

/// First-return displacement of the foliation dH + eps omega = 0 measured
/// in the Hamiltonian chart, starting on the positive x ray at H = t.
fn displacement(h: &Hamiltonian, omega: &KForm, t: f64, eps: f64) -> f64 {
    use pflab_core::analytic::rk::{try_step, RkOptions};
    let KForm::One { p, q } = omega else { panic!("1-form expected") };
    let (hx, hy) = h.grad();
    let opts = RkOptions { rtol: 1e-13, atol: 1e-15, ..Default::default() };
    let field = |_s: f64, st: &[Complex64], d: &mut [Complex64]| {
        let (x, y) = (st[0].re, st[1].re);
        let cx = Complex64::new(x, 0.0);
        let cy = Complex64::new(y, 0.0);
        let vx = -(hy.eval_f64(cx, cy).re + eps * q.eval_f64(cx, cy).re);
        let vy = hx.eval_f64(cx, cy).re + eps * p.eval_f64(cx, cy).re;
        let speed = (vx * vx + vy * vy).sqrt().max(1e-300);
        d[0] = Complex64::new(vx / speed, 0.0);
        d[1] = Complex64::new(vy / speed, 0.0);
        // Winding angle around the origin.
        let r2 = (x * x + y * y).max(1e-300);
        d[2] = Complex64::new((x * vy - y * vx) / (speed * r2), 0.0);
    };
    // Seed on the positive x axis at radius sqrt(2t) (H = (x^2+y^2)/2).
    let r0 = (2.0 * t).sqrt();
    let mut state = vec![
        Complex64::new(r0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let mut s = 0.0;
    let mut h_step = 1e-3;
    let target = 2.0 * PI;
    loop {
        let out = try_step(&field, s, &state, h_step, &opts);
        if !out.accepted {
            h_step = out.h_next;
            continue;
        }
        if out.y_new[2].re >= target {
            let mut lo = 0.0;
            let mut hi = h_step;
            let mut y_final = out.y_new.clone();
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let probe = try_step(&field, s, &state, mid, &opts);
                if probe.y_new[2].re >= target {
                    hi = mid;
                    y_final = probe.y_new;
                } else {
                    lo = mid;
                }
            }
            state = y_final;
            break;
        }
        s += h_step;
        state = out.y_new;
        h_step = out.h_next.min(0.1);
        assert!(s < 1e4, "return map did not close");
    }
    let (x, y) = (state[0].re, state[1].re);
    h.poly().eval_f64(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).re - t
}

#[test]
fn second_variation_matches_displacement_expansion() {
    let h = ham("1/2x^2+1/2y^2");
    let omega = KForm::one_form(
        parse_bipoly("x^2y^3").unwrap(),
        parse_bipoly("1/4x^4y+1/2x^2y^3+x^3y^2").unwrap(),
    );
    let pair = decompose_relative(&h, &omega, 4).unwrap();
    let next = second_variation_form(&omega, &pair);
    let t = 0.5;
    let oint_gw = abelian_integral(&h, &OneForm::from_kform(&next), t, 1e-11).unwrap();
    // Hand-computed on the unit circle: oint G omega = pi/64.
    assert!((oint_gw - PI / 64.0).abs() < 1e-8, "oint G omega = {oint_gw}");
    // Measured expansion of the first-return displacement in our
    // orientation conventions: f(t, eps) = -eps oint(omega)
    // + eps^2 oint(G omega) + O(eps^3). The first variation term vanishes
    // here, so the eps^2 Taylor coefficient is the integral of the
    // next-variation form up to the overall sign choice.
    let g = |eps: f64| displacement(&h, &omega, t, eps) / (eps * eps);
    let g1 = g(2e-2);
    let g2 = g(1e-2);
    let extrap = 2.0 * g2 - g1;
    assert!(
        (extrap - oint_gw).abs() < 2e-3 * oint_gw.abs(),
        "extrapolated {extrap} vs oint(G omega) {oint_gw} (raw {g1}, {g2})"
    );
}

// ---------------------------------------------------------------------------
// Scalar reduction checked by numeric differentiation
// ---------------------------------------------------------------------------

#[test]
fn reduced_equation_satisfied_by_numeric_solutions() {
    // A 3x3 system with degree-1 polynomial entries.
    let e = |s: &str| parse_unipoly(s).unwrap();
    let sys = LinearSystem::new(
        3,
        vec![
            e("1/2t"), e("-1/2"), e("0"),
            e("1/4"), e("0"), e("1/2t"),
            e("0"), e("1/2"), e("-1/4t"),
        ],
    );
    let q0: Vec<UniPoly> = vec![UniPoly::one(), UniPoly::zero(), UniPoly::zero()];
    let ode = reduce_to_scalar(&sys, &q0);
    assert_eq!(ode.order, 3);

    // Numeric y(t) = x_1(t) by transporting from t = 0 along the real line.
    let x0 = CMat {
        rows: 3,
        cols: 1,
        data: vec![
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.7, 0.0),
            Complex64::new(0.9, 0.0),
        ],
    };
    let y_at = |t: f64| -> f64 {
        if t == 0.0 {
            return x0.get(0, 0).re;
        }
        let path = ComplexPath::new(vec![PathSegment::Line {
            from: Complex64::new(0.0, 0.0),
            to: Complex64::new(t, 0.0),
        }]);
        integrate_along_path(&OdeMatrix::Polynomial(&sys), &path, &x0, 1e-13, 0.0)
            .unwrap()
            .get(0, 0)
            .re
    };
    // Seven-point central differences for y', y'', y''' (O(h^4)).
    let h_fd = 0.02;
    let stencil3 = [1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]; // y''' * 8 h^3
    let stencil2 = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]; // y'' * 180 h^2
    let stencil1 = [-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]; // y' * 60 h
    for k in 0..20 {
        let t = 0.15 + 0.08 * k as f64;
        let samples: Vec<f64> = (-3..=3).map(|j| y_at(t + j as f64 * h_fd)).collect();
        let dot = |w: &[f64; 7]| -> f64 {
            w.iter().zip(&samples).map(|(a, b)| a * b).sum::<f64>()
        };
        let y = samples[3];
        let d1 = dot(&stencil1) / (60.0 * h_fd);
        let d2 = dot(&stencil2) / (180.0 * h_fd * h_fd);
        let d3 = dot(&stencil3) / (8.0 * h_fd.powi(3));
        let a = ode.coeffs_at(Complex64::new(t, 0.0));
        let resid = d3 + a[0].re * d2 + a[1].re * d1 + a[2].re * y;
        let scale = d3.abs() + (a[0].re * d2).abs() + (a[1].re * d1).abs()
            + (a[2].re * y).abs();
        assert!(
            resid.abs() <= 1e-5 * scale.max(1.0),
            "t={t}: residual {resid} against scale {scale}"
        );
    }
}

#[test]
fn iterates_derivative_chain_is_consistent() {
    // y^{(k)}(t) = q_k(t) . x(t) for a numeric trajectory: checks the
    // derivation rule independently of the dependence search.
    let e = |s: &str| parse_unipoly(s).unwrap();
    let sys = LinearSystem::new(2, vec![e("t"), e("1"), e("-1"), e("0")]);
    let q0: Vec<UniPoly> = vec![UniPoly::one(), UniPoly::zero()];
    let iter = covector_iterates(&sys, &q0, 2);
    let x0 = CMat {
        rows: 2,
        cols: 1,
        data: vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)],
    };
    let x_at = |t: f64| -> Vec<Complex64> {
        let path = ComplexPath::new(vec![PathSegment::Line {
            from: Complex64::new(0.0, 0.0),
            to: Complex64::new(t, 0.0),
        }]);
        integrate_along_path(&OdeMatrix::Polynomial(&sys), &path, &x0, 1e-13, 0.0)
            .unwrap()
            .data
    };
    let t = 0.8;
    let h_fd = 1e-3;
    let y = |t: f64| {
        let x = x_at(t);
        x[0].re
    };
    let d1 = (y(t + h_fd) - y(t - h_fd)) / (2.0 * h_fd);
    let x = x_at(t);
    let q1: f64 = iter.iterates[1]
        .iter()
        .zip(&x)
        .map(|(p, xi)| (p.eval_f64(Complex64::new(t, 0.0)) * xi).re)
        .sum();
    assert!((d1 - q1).abs() < 1e-6, "derivative {d1} vs iterate {q1}");
}

// ---------------------------------------------------------------------------
// Richardson refinement of the PF verification residual
// ---------------------------------------------------------------------------

#[test]
fn verify_pf_residual_scales_quadratically() {
    let h = ham("x^3+y^3-3xy");
    let sys = derive_system(&h).unwrap();
    let grid = [-0.5];
    let r2h = verify_pf(&h, &sys, &grid, 2e-3, 1e-11).unwrap();
    let rh = verify_pf(&h, &sys, &grid, 1e-3, 1e-11).unwrap();
    let ratio = r2h / rh;
    assert!(
        (3.2..=4.8).contains(&ratio),
        "central-difference residual ratio {ratio} (r2h={r2h:.3e}, rh={rh:.3e})"
    );
}

// ---------------------------------------------------------------------------
// Monodromy product identity for a two-pole fixture
// ---------------------------------------------------------------------------

#[test]
fn monodromy_product_around_all_poles_is_identity() {
    use pflab_core::picard_fuchs::FuchsianSystem;
    let sys = FuchsianSystem {
        points: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        residues: vec![
            CMat::from_rows(&[
                vec![Complex64::new(0.3, 0.0), Complex64::new(0.2, 0.0)],
                vec![Complex64::new(-0.1, 0.0), Complex64::new(0.4, 0.0)],
            ]),
            CMat::from_rows(&[
                vec![Complex64::new(0.1, 0.0), Complex64::new(-0.3, 0.0)],
                vec![Complex64::new(0.2, 0.0), Complex64::new(0.25, 0.0)],
            ]),
        ],
    };
    let m = OdeMatrix::Fuchsian(&sys);
    let x0 = CMat::identity(2);
    // Base point on the positive real axis beyond all poles; lassos reach
    // each pole through the lower half plane so they compose, ordered
    // counterclockwise by argument seen from the base, into the big loop.
    let base = Complex64::new(3.0, 0.0);
    let lasso = |center: Complex64, rad: f64| -> ComplexPath {
        let entry = center + Complex64::new(0.0, -rad);
        let mut segs = vec![PathSegment::Line { from: base, to: base - Complex64::new(0.0, 2.0) }];
        segs.push(PathSegment::Line {
            from: base - Complex64::new(0.0, 2.0),
            to: entry - Complex64::new(0.0, 0.8),
        });
        segs.push(PathSegment::Line { from: entry - Complex64::new(0.0, 0.8), to: entry });
        segs.push(PathSegment::Arc {
            center,
            radius: rad,
            start_angle: -PI / 2.0,
            end_angle: 3.0 * PI / 2.0,
        });
        // Return leg retraces the approach.
        segs.push(PathSegment::Line { from: entry, to: entry - Complex64::new(0.0, 0.8) });
        segs.push(PathSegment::Line {
            from: entry - Complex64::new(0.0, 0.8),
            to: base - Complex64::new(0.0, 2.0),
        });
        segs.push(PathSegment::Line { from: base - Complex64::new(0.0, 2.0), to: base });
        ComplexPath::new(segs)
    };
    let g0 = lasso(sys.points[0], 0.3);
    let g1 = lasso(sys.points[1], 0.3);
    let m0 = monodromy(&m, &g0, &x0, 1e-12).unwrap();
    let m1 = monodromy(&m, &g1, &x0, 1e-12).unwrap();
    let big = ComplexPath::circle(Complex64::new(0.5, 0.0), 2.5, 0.0);
    // The big circle starts at (3, 0) = base.
    let m_big = monodromy(&m, &big, &x0, 1e-12).unwrap();
    let m_inf = m_big.inverse().unwrap();
    // With both lassos approaching through the lower half plane from a
    // base beyond the poles, the big counterclockwise loop is homotopic to
    // the nearest lasso followed by the farther one; under the
    // right-factor (anti-representation) convention that reads
    // M_big = M_0 M_1, hence M_inf M_0 M_1 = E.
    let product = m_inf.mat_mul(&m0).mat_mul(&m1);
    let err = product.sub(&CMat::identity(2)).norm_inf();
    assert!(err < 1e-8, "product differs from identity by {err}");
}

// ---------------------------------------------------------------------------
// Additivity over disjoint ovals (two-center quartic)
// ---------------------------------------------------------------------------

#[test]
fn abelian_integral_additive_over_disjoint_ovals() {
    // H = x^4 + y^4 - 2x^2 + y^2: transversal, two symmetric Morse minima
    // at (+-1, 0) with value -1 and a saddle at the origin with value 0.
    // For t in (-1, 0) the level set has two mirror-image ovals; oint x dy
    // over each equals the area of one component.
    let h = ham("x^4+y^4-2x^2+y^2");
    assert!(h.check_transversal().transversal);
    let t = -0.5;
    let oval_area =
        abelian_integral(&h, &OneForm::Poly { p: BiPoly::zero(), q: parse_bipoly("x").unwrap() }, t, 1e-11)
            .unwrap();
    // Total area of {H <= t} by grid counting; symmetry doubles one oval.
    let (nx, ny) = (3000usize, 1500usize);
    let (x0, x1, y0, y1) = (-1.8, 1.8, -1.0, 1.0);
    let dx = (x1 - x0) / nx as f64;
    let dy = (y1 - y0) / ny as f64;
    let mut inside = 0usize;
    for i in 0..nx {
        let x: f64 = x0 + (i as f64 + 0.5) * dx;
        for j in 0..ny {
            let y: f64 = y0 + (j as f64 + 0.5) * dy;
            if x.powi(4) + y.powi(4) - 2.0 * x * x + y * y <= t {
                inside += 1;
            }
        }
    }
    let grid_area = inside as f64 * dx * dy;
    let rel = (2.0 * oval_area - grid_area).abs() / grid_area;
    assert!(rel < 5e-3, "2 x oval = {} vs grid {} (rel {rel})", 2.0 * oval_area, grid_area);
}
