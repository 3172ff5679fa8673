//! Polynomial root finding in the complex plane.
//!
//! Aberth-Ehrlich simultaneous iteration with Newton polishing. Callers
//! that need exact multiplicity structure compute a squarefree
//! decomposition first and find the roots of each (well-conditioned)
//! squarefree factor separately.

use num_complex::Complex64;

fn poly_eval(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of the polynomial with the given ascending
/// coefficients. Multiple roots come out as numerically clustered copies.
pub fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    // Trim vanishing leading coefficients.
    let max_mag = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_mag == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() <= 1e-300 * max_mag {
        c.pop();
    }
    let mut roots = Vec::new();
    // Deflate exact zeros at the origin.
    while c.len() > 1 && c[0].norm() <= 1e-300 * max_mag {
        roots.push(Complex64::new(0.0, 0.0));
        c.remove(0);
    }
    let n = c.len() - 1;
    if n == 0 {
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        return roots;
    }
    if n == 1 {
        roots.push(-c[0] / c[1]);
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        return roots;
    }

    // Cauchy-style initial radius, symmetric ring start with an irrational
    // phase offset to avoid stalling on symmetric polynomials.
    let lead = c[n].norm();
    let radius = 1.0 + c.iter().take(n).map(|v| v.norm() / lead).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.354) / n as f64 + 0.7391;
            Complex64::from_polar(0.5 * radius + 1e-3, theta)
        })
        .collect();

    for _ in 0..400 {
        let mut max_step = 0.0_f64;
        for k in 0..n {
            let (p, dp) = poly_eval(&c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { Complex64::new(1e-3, 1e-3) };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > 1e-300 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 1e-12 { newton / denom } else { newton };
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // Newton polish (quadratic convergence near simple roots).
    for zk in z.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = poly_eval(&c, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *zk -= step;
            if step.norm() <= 1e-16 * (1.0 + zk.norm()) {
                break;
            }
        }
    }

    roots.extend(z);
    // Deterministic output order.
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Merge points closer than tol * (1 + |center|) into clusters, returning
/// (center, count) pairs sorted by real then imaginary part.
pub fn cluster_points(points: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut sorted: Vec<Complex64> = points.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for p in sorted {
        match clusters
            .iter_mut()
            .find(|(center, _)| (p - *center).norm() <= tol * (1.0 + center.norm()))
        {
            Some((center, count)) => {
                // Running mean keeps the representative stable.
                let total = *count as f64;
                *center = (*center * total + p) / (total + 1.0);
                *count += 1;
            }
            None => clusters.push((p, 1)),
        }
    }
    clusters.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    clusters
}
