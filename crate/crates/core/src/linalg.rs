//! Dense linear algebra kernels: complex LU with partial pivoting (solve,
//! adjoint solve, determinant), power/inverse iterations for extreme
//! singular values, and a Jacobi eigensolver for small real symmetric
//! matrices.

use crate::error::{Error, Result};
use num_complex::Complex64;

type C = Complex64;

/// Dense row-major complex matrix.
#[derive(Debug, Clone)]
pub struct CMatrix {
    pub n: usize,
    pub data: Vec<C>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![C::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = C::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut C {
        &mut self.data[i * self.n + j]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [C] {
        let n = self.n;
        &mut self.data[i * n..(i + 1) * n]
    }

    pub fn matvec(&self, x: &[C]) -> Vec<C> {
        let n = self.n;
        let mut y = vec![C::new(0.0, 0.0); n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let mut acc = C::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            y[i] = acc;
        }
        y
    }

    /// One-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|i| self.at(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// LU factorization PA = LU with partial pivoting.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<C>,
    piv: Vec<usize>,
    swaps: usize,
}

pub fn lu_factor(a: &CMatrix) -> Result<LuFactors> {
    let n = a.n;
    let mut lu = a.data.clone();
    let mut piv: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    for col in 0..n {
        let mut pmax = 0.0;
        let mut prow = col;
        for r in col..n {
            let v = lu[r * n + col].norm();
            if v > pmax {
                pmax = v;
                prow = r;
            }
        }
        if pmax == 0.0 {
            return Err(Error::NearSingular {
                cond: f64::INFINITY,
                context: format!("exact zero pivot at column {col}"),
            });
        }
        if prow != col {
            for j in 0..n {
                lu.swap(col * n + j, prow * n + j);
            }
            piv.swap(col, prow);
            swaps += 1;
        }
        let d = lu[col * n + col];
        for r in col + 1..n {
            let f = lu[r * n + col] / d;
            lu[r * n + col] = f;
            for j in col + 1..n {
                let u = lu[col * n + j];
                lu[r * n + j] -= f * u;
            }
        }
    }
    Ok(LuFactors { n, lu, piv, swaps })
}

impl LuFactors {
    /// Solve A x = b.
    pub fn solve(&self, b: &[C]) -> Vec<C> {
        let n = self.n;
        let mut x: Vec<C> = self.piv.iter().map(|&p| b[p]).collect();
        // forward: L y = Pb (unit lower)
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        // backward: U x = y
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    /// Solve A^H x = b (conjugate-transpose system) using the same factors:
    /// A^H = (PA)^H P = U^H L^H P.
    pub fn solve_adjoint(&self, b: &[C]) -> Vec<C> {
        let n = self.n;
        let mut y = b.to_vec();
        // U^H w = b (lower triangular with conjugated entries)
        for i in 0..n {
            for j in 0..i {
                let u = self.lu[j * n + i].conj();
                let yj = y[j];
                y[i] -= u * yj;
            }
            y[i] /= self.lu[i * n + i].conj();
        }
        // L^H v = w (unit upper with conjugated entries)
        for i in (0..n).rev() {
            for j in i + 1..n {
                let l = self.lu[j * n + i].conj();
                let yj = y[j];
                y[i] -= l * yj;
            }
        }
        // x = P^T v
        let mut x = vec![C::new(0.0, 0.0); n];
        for (i, &p) in self.piv.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }

    /// Determinant of A.
    pub fn det(&self) -> C {
        let n = self.n;
        let mut d = if self.swaps % 2 == 0 { C::new(1.0, 0.0) } else { C::new(-1.0, 0.0) };
        for i in 0..n {
            d *= self.lu[i * n + i];
        }
        d
    }
}

fn norm2(v: &[C]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Smallest singular value via inverse power iteration on (A^H A)^{-1}.
///
/// Returns 0 when the matrix is numerically singular.
pub fn smallest_singular_value(a: &CMatrix) -> f64 {
    let n = a.n;
    let lu = match lu_factor(a) {
        Ok(lu) => lu,
        Err(_) => return 0.0,
    };
    // deterministic pseudo-random start
    let mut v: Vec<C> = (0..n)
        .map(|i| {
            let s = (i as f64 * 0.754_877_666 + 0.1).fract() - 0.5;
            let t = (i as f64 * 0.569_840_29 + 0.37).fract() - 0.5;
            C::new(1.0 + s, t)
        })
        .collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|c| *c /= nv);
    let mut sigma = 0.0;
    for it in 0..200 {
        let w = lu.solve(&v);
        let u = lu.solve_adjoint(&w);
        let nu = norm2(&u);
        if !nu.is_finite() || nu == 0.0 {
            return 0.0;
        }
        let sigma_new = 1.0 / nu.sqrt();
        let rel = (sigma_new - sigma).abs() / sigma_new.max(1e-300);
        sigma = sigma_new;
        for (vi, ui) in v.iter_mut().zip(&u) {
            *vi = ui / nu;
        }
        if it > 3 && rel < 1e-9 {
            break;
        }
    }
    sigma
}

/// Largest singular value by power iteration on A^H A.
pub fn largest_singular_value(a: &CMatrix) -> f64 {
    let n = a.n;
    let mut v: Vec<C> = (0..n)
        .map(|i| C::new(((i as f64 * 0.618_033_99 + 0.21).fract()) - 0.5, 0.3))
        .collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|c| *c /= nv);
    let mut sigma = 0.0;
    for _ in 0..100 {
        let w = a.matvec(&v);
        // u = A^H w
        let mut u = vec![C::new(0.0, 0.0); n];
        for i in 0..n {
            let wi = w[i];
            for j in 0..n {
                u[j] += a.at(i, j).conj() * wi;
            }
        }
        let nu = norm2(&u);
        if nu == 0.0 {
            return 0.0;
        }
        let s = nu.sqrt();
        if (s - sigma).abs() < 1e-10 * s.max(1e-300) {
            sigma = s;
            break;
        }
        sigma = s;
        for (vi, ui) in v.iter_mut().zip(&u) {
            *vi = ui / nu;
        }
    }
    sigma
}

/// Eigen-decomposition of a small real symmetric matrix by cyclic Jacobi.
///
/// Returns (eigenvalues ascending, eigenvectors as columns).
pub fn sym_eig_small(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i * n + j] * m[i * n + j];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frob(&m, n)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| m[a * n + a].partial_cmp(&m[b * n + b]).unwrap());
    let vals: Vec<f64> = idx.iter().map(|&i| m[i * n + i]).collect();
    let mut vecs = vec![0.0; n * n];
    for (col_new, &col_old) in idx.iter().enumerate() {
        for r in 0..n {
            vecs[r * n + col_new] = v[r * n + col_old];
        }
    }
    (vals, vecs)
}

fn frob(m: &[f64], n: usize) -> f64 {
    m.iter().take(n * n).map(|x| x * x).sum::<f64>().sqrt()
}
