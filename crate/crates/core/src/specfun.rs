//! Special functions for the free Green kernel on the principal branch:
//! `K_0` for complex argument in the closed right half-plane, `I_0`, and the
//! real-argument `J_0`.
//!
//! Kernel arguments have the form `w = -i k r` with `k` in the closed upper
//! half-plane and `r > 0`, so `|arg w| <= pi/2` always; the branch cut on the
//! negative real axis is never approached. Three evaluation regimes cover
//! that domain:
//!
//! * power series where `|w| + Re w <= 12` (no exponential cancellation
//!   there; worst relative error ~3e-12),
//! * a rotated-contour Gauss rule for moderate `|w|`,
//!   `K_0(w) = sqrt(2/w) e^{-w} int_0^inf e^{-t^2} (1 + t^2/(2w))^{-1/2} dt`,
//! * the large-argument expansion `sqrt(pi/(2w)) e^{-w} sum a_n w^{-n}` for
//!   `|w| > 30`.
//!
//! Adjacent regimes overlap to better than ten digits; the tests pin this.

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use num_complex::Complex64;
use std::sync::OnceLock;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Radius below which [`k0_log_split`] is valid.
pub const SPLIT_RADIUS: f64 = 8.0;

/// Nonzero complex argument off the negative real axis (principal branch).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(Complex64);

impl ComplexArg {
    pub fn new(w: Complex64) -> Result<Self> {
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {w}")));
        }
        if w.norm() == 0.0 {
            return Err(Error::Domain(
                "logarithmic singularity: argument must be nonzero".into(),
            ));
        }
        if w.im == 0.0 && w.re < 0.0 {
            return Err(Error::Branch(format!(
                "argument {w} lies on the negative real axis (branch cut)"
            )));
        }
        Ok(ComplexArg(w))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Modified Bessel function `K_0(w)` on the principal branch.
pub fn bessel_k0(w: ComplexArg) -> Complex64 {
    let w = w.0;
    let aw = w.norm();
    if aw + w.re <= 12.0 {
        k0_series(w)
    } else if aw <= 30.0 {
        k0_contour(w)
    } else {
        k0_asymptotic(w)
    }
}

/// Modified Bessel function `I_0(w)` by its (entire) power series.
///
/// Intended for moderate `|w|`; the crate only uses it below the split
/// radius where the series is benign.
pub fn bessel_i0(w: Complex64) -> Complex64 {
    let q = w * w * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 1..200 {
        term *= q / ((m * m) as f64);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// Bessel function `J_0(x)` for real `x`. Even; entire.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 12.0 {
        // power series sum (-1)^m (x^2/4)^m / (m!)^2
        let q = ax * ax * 0.25;
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..60 {
            term *= -q / ((m * m) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-2) {
                break;
            }
        }
        sum
    } else {
        // Hankel expansion J0 = sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4
        let (p, q) = j0_pq(ax);
        let w = ax - std::f64::consts::FRAC_PI_4;
        (2.0 / (std::f64::consts::PI * ax)).sqrt() * (p * w.cos() - q * w.sin())
    }
}

// Stokes sums P = sum_k (-1)^k a_{2k} x^{-2k}, Q = sum_k (-1)^k a_{2k+1} x^{-2k-1}
// with a_n = a_{n-1} (-(2n-1)^2)/(8n), truncated at the smallest term.
fn j0_pq(x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut best = f64::INFINITY;
    for n in 0..30usize {
        let t = a / x.powi(n as i32);
        if t.abs() > best {
            break;
        }
        best = t.abs();
        let k = n / 2;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        if n % 2 == 0 {
            p += sign * t;
        } else {
            let k = (n - 1) / 2;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            q += sign * t;
        }
        a *= -(((2 * n + 1) * (2 * n + 1)) as f64) / (8.0 * (n + 1) as f64);
    }
    (p, q)
}

/// Split `K_0(w) = log_coefficient * Ln(w) + smooth_remainder` for small `|w|`.
///
/// `log_coefficient = -I_0(w)`; the remainder `(ln 2 - gamma) I_0(w) +
/// sum H_m (w^2/4)^m / (m!)^2` is analytic at 0. Errors with
/// [`Error::Range`] above [`SPLIT_RADIUS`], where direct evaluation must be
/// used instead.
pub fn k0_log_split(w: ComplexArg) -> Result<(Complex64, Complex64)> {
    let wv = w.0;
    if wv.norm() > SPLIT_RADIUS {
        return Err(Error::Range(format!(
            "|w| = {} exceeds the split radius {SPLIT_RADIUS}",
            wv.norm()
        )));
    }
    Ok(k0_split_unchecked(wv))
}

// Same split without the radius guard; the assembler keeps its arguments in
// a region where the series keeps at least nine digits.
pub(crate) fn k0_split_unchecked(w: Complex64) -> (Complex64, Complex64) {
    let q = w * w * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut i0 = term;
    let mut hsum = Complex64::new(0.0, 0.0);
    let mut h = 0.0;
    for m in 1..240 {
        term *= q / ((m * m) as f64);
        i0 += term;
        h += 1.0 / m as f64;
        hsum += term * h;
        if term.norm() * (h + 1.0) < 1e-18 * (i0.norm() + hsum.norm()) {
            break;
        }
    }
    let remainder = (std::f64::consts::LN_2 - EULER_GAMMA) * i0 + hsum;
    (-i0, remainder)
}

fn k0_series(w: Complex64) -> Complex64 {
    let (log_coef, rem) = k0_split_unchecked(w);
    log_coef * w.ln() + rem
}

fn contour_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let (x, w) = gauss_legendre(48);
        // map [-1,1] -> [0, 6.8]
        let nodes: Vec<f64> = x.iter().map(|t| 3.4 * (t + 1.0)).collect();
        let weights: Vec<f64> = w.iter().map(|wi| 3.4 * wi).collect();
        (nodes, weights)
    })
}

fn k0_contour(w: Complex64) -> Complex64 {
    let (nodes, weights) = contour_rule();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&t, &wt) in nodes.iter().zip(weights) {
        let t2 = t * t;
        acc += wt * (-t2).exp() / (Complex64::new(1.0, 0.0) + t2 / (2.0 * w)).sqrt();
    }
    (2.0 / w).sqrt() * (-w).exp() * acc
}

fn k0_asymptotic(w: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut a = 1.0f64;
    let mut best = f64::INFINITY;
    for n in 0..60u32 {
        let a_next = a * (-(((2 * n + 1) * (2 * n + 1)) as f64)) / (8.0 * (n + 1) as f64);
        let term = a_next / w.powu(n + 1);
        if term.norm() > best {
            break;
        }
        best = term.norm();
        sum += term;
        a = a_next;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * w)).sqrt() * (-w).exp() * sum
}
