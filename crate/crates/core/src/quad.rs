//! Gauss–Legendre rules and product quadrature for logarithmic kernels.
//!
//! The singular quadrature is built on the moments
//! `I_m(z) = int_{-1}^{1} P_m(t) ln|z - t| dt` with `P_m` the Legendre
//! polynomials and `z = s + i eta` a (possibly complex) target in reference
//! coordinates. Integration by parts with
//! `(2m+1) P_m = (P_{m+1} - P_{m-1})'` reduces `I_m` for `m >= 1` to Legendre
//! functions of the second kind,
//! `I_m(z) = 2 (Re Q_{m+1}(z) - Re Q_{m-1}(z)) / (2m+1)`,
//! where on the cut the principal-value branch of `Q_m` applies.

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; exact symmetry is enforced.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_p_and_deriv(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_p_and_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_p_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 1..n {
        let p2 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p0) / (j + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// P_0(t) .. P_{m_max}(t) by forward recurrence.
pub fn legendre_p_all(m_max: usize, t: f64) -> Vec<f64> {
    let mut p = vec![0.0; m_max + 1];
    p[0] = 1.0;
    if m_max >= 1 {
        p[1] = t;
    }
    for m in 1..m_max {
        p[m + 1] = ((2 * m + 1) as f64 * t * p[m] - m as f64 * p[m - 1]) / (m + 1) as f64;
    }
    p
}

// |z + sqrt(z^2-1)| with the branch that makes the modulus >= 1.
fn ellipse_radius(z: Complex64) -> f64 {
    let s = (z * z - Complex64::new(1.0, 0.0)).sqrt();
    let a = (z + s).norm();
    let b = (z - s).norm();
    a.max(b)
}

/// Q_0(z) .. Q_{m_max}(z), Legendre functions of the second kind.
///
/// On the cut (real z, |z| < 1) this is the principal-value branch
/// `Q_0 = artanh(s)`. Off the cut the principal branch
/// `Q_0 = Ln((z+1)/(z-1))/2` is used. Forward recurrence is fine near the
/// cut where both solutions have comparable size; away from it (Bernstein
/// radius > 1.4) the minimal solution is recovered by a backward
/// continued-fraction sweep.
pub fn legendre_q_all(m_max: usize, z: Complex64) -> Vec<Complex64> {
    let on_cut = z.im == 0.0 && z.re.abs() < 1.0;
    let q0 = if on_cut {
        Complex64::new(0.5 * ((1.0 + z.re) / (1.0 - z.re)).ln(), 0.0)
    } else {
        0.5 * ((z + 1.0) / (z - 1.0)).ln()
    };
    let mut q = vec![Complex64::new(0.0, 0.0); m_max + 1];
    q[0] = q0;
    if m_max == 0 {
        return q;
    }
    if on_cut || ellipse_radius(z) <= 1.4 {
        q[1] = z * q[0] - 1.0;
        for m in 1..m_max {
            q[m + 1] = ((2 * m + 1) as f64 * z * q[m] - m as f64 * q[m - 1]) / (m + 1) as f64;
        }
        return q;
    }
    // backward sweep on ratios r_m = Q_{m+1}/Q_m seeded with the asymptotic
    // ratio 1/(z + sqrt(z^2-1)) of the decaying solution
    let start = m_max + 30;
    let s = (z * z - Complex64::new(1.0, 0.0)).sqrt();
    let big = if (z + s).norm() > (z - s).norm() { z + s } else { z - s };
    let mut r = 1.0 / big;
    let mut ratios = vec![Complex64::new(0.0, 0.0); m_max + 1];
    for m in (0..start).rev() {
        // (m+2) r_{m+1} r_m = (2m+3) z r_m - (m+1)  =>  solve for r_m
        r = (m + 1) as f64 / ((2 * m + 3) as f64 * z - (m + 2) as f64 * r);
        if m <= m_max {
            ratios[m] = r;
        }
    }
    for m in 0..m_max {
        q[m + 1] = ratios[m] * q[m];
    }
    q
}

/// Moments `I_m(z) = int_{-1}^{1} P_m(t) ln|z - t| dt`, m = 0..m_max.
pub fn log_moments(m_max: usize, z: Complex64) -> Vec<f64> {
    let mut out = vec![0.0; m_max + 1];
    out[0] = if z.im == 0.0 {
        let s = z.re;
        let a = if (1.0 - s).abs() < 1e-300 { 0.0 } else { (1.0 - s) * (1.0 - s).abs().ln() };
        let b = if (1.0 + s).abs() < 1e-300 { 0.0 } else { (1.0 + s) * (1.0 + s).abs().ln() };
        a + b - 2.0
    } else {
        let v = (1.0 - z) * (z - 1.0).ln() - (-1.0 - z) * (z + 1.0).ln() - 2.0;
        v.re
    };
    if m_max == 0 {
        return out;
    }
    let q = legendre_q_all(m_max + 1, z);
    for m in 1..=m_max {
        out[m] = 2.0 / (2 * m + 1) as f64 * (q[m + 1].re - q[m - 1].re);
    }
    out
}

/// Per-node weights `u_j` such that `sum_j u_j g(t_j)` integrates
/// `ln|z - t| g(t)` over [-1, 1] exactly for `g` a polynomial of degree
/// `< nodes.len()` interpolated at the given Gauss–Legendre nodes.
pub fn singular_log_weights(z: Complex64, nodes: &[f64], weights: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let m_max = n - 1;
    let im = log_moments(m_max, z);
    let mut out = vec![0.0; n];
    for (j, (&tj, &wj)) in nodes.iter().zip(weights).enumerate() {
        let p = legendre_p_all(m_max, tj);
        let mut acc = 0.0;
        for m in 0..=m_max {
            acc += (2 * m + 1) as f64 / 2.0 * p[m] * im[m];
        }
        out[j] = wj * acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [2usize, 5, 8, 16, 24] {
            let (x, w) = gauss_legendre(n);
            // degree 2n-1 monomial and a transcendental spot check
            let deg = 2 * n - 1;
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            assert!((got - exact).abs() < 1e-13, "n={n} deg={deg}: {got}");
            let s: f64 = w.iter().sum();
            assert_relative_eq!(s, 2.0, max_relative = 1e-14);
        }
        let (x, w) = gauss_legendre(20);
        let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.cos()).sum();
        assert_relative_eq!(got, 2.0 * 1.0f64.sin(), max_relative = 1e-14);
    }

    // brute-force reference for the log moments: composite Gauss, split at the
    // singular abscissa and geometrically graded toward it
    fn integrate_graded(
        a: f64,
        b: f64,
        toward_a: bool,
        endpoint_singular: bool,
        f: &dyn Fn(f64) -> f64,
    ) -> f64 {
        let (x, w) = gauss_legendre(40);
        let mut total = 0.0;
        // fractions of the interval, halving toward the graded end
        let mut hi_frac = 1.0f64;
        for _ in 0..40 {
            let lo_frac = hi_frac * 0.5;
            let (u0, u1) = if toward_a {
                (lo_frac, hi_frac)
            } else {
                (1.0 - hi_frac, 1.0 - lo_frac)
            };
            let (lo, hi) = (a + (b - a) * u0, a + (b - a) * u1);
            let c = 0.5 * (lo + hi);
            let h = 0.5 * (hi - lo);
            for (xi, wi) in x.iter().zip(&w) {
                total += h * wi * f(c + h * xi);
            }
            hi_frac = lo_frac;
        }
        // remaining sliver of width delta at the graded end
        let delta = (b - a) * hi_frac;
        let end = if toward_a { a } else { b };
        let probe = if toward_a { a + delta } else { b - delta };
        if endpoint_singular {
            // integrand ~ g ln|t - end| with smooth cofactor g
            let g_near = f(probe) / (probe - end).abs().ln();
            total + g_near * delta * (delta.ln() - 1.0)
        } else {
            total + f(probe) * delta
        }
    }

    fn moment_ref(m: usize, z: Complex64) -> f64 {
        let f = |t: f64| legendre_p_all(m, t)[m] * (z - Complex64::new(t, 0.0)).norm().ln();
        if z.re > -1.0 && z.re < 1.0 {
            // split at Re z and grade toward it; genuinely singular only on
            // the cut, otherwise a bounded spike of width |Im z|
            let singular = z.im.abs() < 1e-13;
            integrate_graded(-1.0, z.re, false, singular, &f)
                + integrate_graded(z.re, 1.0, true, singular, &f)
        } else {
            // grade toward the endpoint nearest z to resolve a possible
            // near-singularity just outside the cut
            let toward_a = z.re < 0.0;
            integrate_graded(-1.0, 1.0, toward_a, false, &f)
        }
    }

    #[test]
    fn log_moments_match_brute_force() {
        let cases = [
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.9, 0.0),
            Complex64::new(0.99, 0.0),
            Complex64::new(1.0001, 0.0),
            Complex64::new(1.05, 0.0),
            Complex64::new(1.5, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(-2.5, 0.0),
            Complex64::new(0.3, 0.001),
            Complex64::new(0.3, 0.3),
            Complex64::new(1.2, 0.5),
            Complex64::new(0.0, 0.02),
            Complex64::new(-1.0, 0.05),
            Complex64::new(0.0, 3.5),
        ];
        for z in cases {
            let im = log_moments(12, z);
            for m in 0..=12 {
                let r = moment_ref(m, z);
                assert!(
                    (im[m] - r).abs() < 2e-11,
                    "moment mismatch z={z}, m={m}: got {}, ref {r}",
                    im[m]
                );
            }
        }
    }

    #[test]
    fn singular_weights_integrate_log_times_smooth() {
        // int_{-1}^1 ln|0.2 - t| cos(t) dt against brute force
        let (x, w) = gauss_legendre(16);
        let z = Complex64::new(0.2, 0.0);
        let sw = singular_log_weights(z, &x, &w);
        let got: f64 = x.iter().zip(&sw).map(|(t, u)| u * t.cos()).sum();
        let f = |t: f64| (0.2 - t).abs().ln() * t.cos();
        let reference =
            integrate_graded(-1.0, 0.2, false, true, &f) + integrate_graded(0.2, 1.0, true, true, &f);
        assert!((got - reference).abs() < 1e-12, "got {got}, ref {reference}");
    }
}
