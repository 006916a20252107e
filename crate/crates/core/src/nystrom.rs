//! Nystrom discretization of the boundary operator `1 + B(k)` on the two
//! half-lines of the quarter-plane boundary.
//!
//! Both half-lines carry the same panel layout: Gauss–Legendre panels on
//! `[0, X_max]`, geometrically graded (ratio 2) toward the corner where the
//! cross-axis kernel is log-singular, uniform further out. Unknown ordering
//! is all horizontal-axis nodes first, then all vertical-axis nodes.
//!
//! Near-diagonal entries use singularity subtraction: with
//! `K_0(-ikd) = L(d) ln d + S(d)` (both factors analytic in `d^2`, see
//! [`crate::specfun::k0_log_split`]), the `ln d` part is integrated by the
//! product rule of [`crate::quad::singular_log_weights`]. A target at
//! perpendicular offset `eta` from the source line enters as the complex
//! reference point `zeta = s + i eta`, which covers same-axis targets
//! (`eta = 0`), the corner interaction across axes (`zeta = i x`), and
//! interior evaluation points near the boundary with one code path.

use crate::error::{Error, Result};
use crate::kernels::{green_free, Axis, PlanePoint, Wavenumber};
use crate::linalg::{
    largest_singular_value, lu_factor, smallest_singular_value, CMatrix, LuFactors,
};
use crate::potential::{sign, BoundaryPotential};
use crate::quad::{gauss_legendre, singular_log_weights};
use crate::specfun::k0_split_unchecked;
use num_complex::Complex64;
use rayon::prelude::*;

type C = Complex64;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

// reference-coordinate reach of the singular quadrature path
const Z_NEAR: f64 = 4.0;

// |k| * max panel distance beyond which the split series would shed digits
const SPLIT_REACH: f64 = 12.0;

/// Discretization parameters for a boundary grid.
#[derive(Debug, Clone, Copy)]
pub struct GridParams {
    pub panels_per_axis: usize,
    pub nodes_per_panel: usize,
    /// Absolute truncation threshold on |alpha sigma|; `None` -> 1e-10 * sup|alpha sigma|.
    pub truncation_threshold: Option<f64>,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams { panels_per_axis: 10, nodes_per_panel: 10, truncation_threshold: None }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub center: f64,
    pub half: f64,
}

/// Quadrature grid shared by the two boundary half-lines.
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    pub x_max: f64,
    pub panels: Vec<Panel>,
    /// Nodes on one axis, strictly increasing.
    pub nodes: Vec<f64>,
    /// Matching quadrature weights (positive).
    pub weights: Vec<f64>,
    pub nodes_per_panel: usize,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
}

impl BoundaryGrid {
    pub fn n_per_axis(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_total(&self) -> usize {
        2 * self.nodes.len()
    }

    /// (axis, coordinate) of a global unknown index.
    pub fn node_location(&self, global: usize) -> (Axis, f64) {
        let na = self.n_per_axis();
        if global < na {
            (Axis::Horizontal, self.nodes[global])
        } else {
            (Axis::Vertical, self.nodes[global - na])
        }
    }

    pub fn from_params(pot: &BoundaryPotential, params: &GridParams) -> Result<Self> {
        let threshold = params
            .truncation_threshold
            .unwrap_or_else(|| (1e-10 * pot.sup_abs()).max(1e-300));
        build_grid(pot, params.panels_per_axis, params.nodes_per_panel, threshold)
    }
}

/// Build the panel grid for a potential: covers `[0, X_max]` with
/// `X_max = support_radius` (floored at 1 when the support is empty).
pub fn build_grid(
    pot: &BoundaryPotential,
    panels_per_axis: usize,
    nodes_per_panel: usize,
    truncation_threshold: f64,
) -> Result<BoundaryGrid> {
    if panels_per_axis < 1 {
        return Err(Error::Parameter("panels_per_axis must be >= 1".into()));
    }
    if nodes_per_panel < 2 {
        return Err(Error::Parameter("nodes_per_panel must be >= 2".into()));
    }
    if nodes_per_panel > 32 {
        return Err(Error::Parameter(
            "nodes_per_panel > 32 is not supported (log-moment recurrences)".into(),
        ));
    }
    let support = pot.support_radius(truncation_threshold)?;
    let x_max = if support > 0.0 { support } else { 1.0 };

    // edges from the outside in: uniform width u until the remaining piece is
    // comparable to u, then halve toward the corner
    let p = panels_per_axis;
    let u = x_max / ((p as f64) / 2.0).ceil();
    let mut edges = vec![x_max];
    while edges.len() < p {
        let top = *edges.last().unwrap();
        let next = if top <= 1.5 * u { 0.5 * top } else { top - u };
        edges.push(next);
    }
    edges.push(0.0);
    edges.reverse();

    let (ref_nodes, ref_weights) = gauss_legendre(nodes_per_panel);
    let mut panels = Vec::with_capacity(p);
    let mut nodes = Vec::with_capacity(p * nodes_per_panel);
    let mut weights = Vec::with_capacity(p * nodes_per_panel);
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        panels.push(Panel { center, half });
        for (t, w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(center + half * t);
            weights.push(half * w);
        }
    }
    Ok(BoundaryGrid {
        x_max,
        panels,
        nodes,
        weights,
        nodes_per_panel,
        ref_nodes,
        ref_weights,
    })
}

/// Target of a kernel quadrature row.
#[derive(Debug, Clone, Copy)]
pub enum RowTarget {
    Boundary { axis: Axis, coordinate: f64 },
    Plane(PlanePoint),
}

impl RowTarget {
    fn plane_coords(self) -> (f64, f64) {
        match self {
            RowTarget::Boundary { axis: Axis::Horizontal, coordinate } => (coordinate, 0.0),
            RowTarget::Boundary { axis: Axis::Vertical, coordinate } => (0.0, coordinate),
            RowTarget::Plane(p) => (p.x1, p.x2),
        }
    }
}

/// Quadrature weights `u` over all grid nodes (both axes) such that
/// `sum_j u[j] g(y_j)` approximates the boundary integral of
/// `G0(k)(target, y) g(y)`.
pub fn green_row(k: Wavenumber, grid: &BoundaryGrid, target: RowTarget) -> Result<Vec<C>> {
    let na = grid.n_per_axis();
    let mut row = vec![C::new(0.0, 0.0); 2 * na];
    let (x1, x2) = target.plane_coords();
    // horizontal source axis sees (parallel, perpendicular) = (x1, x2);
    // vertical swaps the roles
    for (axis_idx, (par, perp)) in [(0usize, (x1, x2)), (1usize, (x2, x1))] {
        let seg = &mut row[axis_idx * na..(axis_idx + 1) * na];
        axis_green_row(k, grid, C::new(par, perp), seg)?;
        axis_green_row(k, grid, C::new(-par, perp), seg)?;
    }
    Ok(row)
}

// adds 2 * int_axis G(k)(|zeta - y|) . dy  onto `out`
fn axis_green_row(k: Wavenumber, grid: &BoundaryGrid, zeta: C, out: &mut [C]) -> Result<()> {
    let npp = grid.nodes_per_panel;
    for (pi, panel) in grid.panels.iter().enumerate() {
        panel_green_row(
            k,
            panel,
            &grid.ref_nodes,
            &grid.ref_weights,
            &grid.nodes[pi * npp..(pi + 1) * npp],
            zeta,
            2.0,
            &mut out[pi * npp..(pi + 1) * npp],
        )?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn panel_green_row(
    k: Wavenumber,
    panel: &Panel,
    ref_nodes: &[f64],
    ref_weights: &[f64],
    nodes: &[f64],
    zeta: C,
    scale: f64,
    out: &mut [C],
) -> Result<()> {
    let half = panel.half;
    let zr = (zeta - panel.center) / half;
    let kv = k.value();
    if zr.norm() > Z_NEAR {
        for (j, (&y, &wr)) in nodes.iter().zip(ref_weights).enumerate() {
            let d = (zeta - y).norm();
            out[j] += scale * half * wr * green_free(k, d)?;
        }
        return Ok(());
    }
    // singular path: product quadrature for the ln d part
    if kv.norm() * (zr.norm() + 1.0) * half > SPLIT_REACH {
        return Err(Error::Parameter(format!(
            "panel of half-length {half:.3e} too long for |k| = {:.3e} near a \
             kernel singularity; increase panels_per_axis",
            kv.norm()
        )));
    }
    let zr = if zr.im.abs() < 1e-300 { C::new(zr.re, 0.0) } else { C::new(zr.re, zr.im.abs()) };
    let log_w = singular_log_weights(zr, ref_nodes, ref_weights);
    let ln_mik = (C::new(0.0, -1.0) * kv).ln();
    let ln_half = half.ln();
    for (j, (&y, (&wr, &lw))) in nodes.iter().zip(ref_weights.iter().zip(&log_w)).enumerate() {
        let d = (zeta - y).norm();
        let w = C::new(0.0, -1.0) * kv * d;
        let (lcoef, rem) = k0_split_unchecked(w);
        // K0(-ikd) = lcoef (Ln(-ik) + ln half + ln|zr - t|) + rem
        let smooth = rem + lcoef * (ln_mik + ln_half);
        out[j] += scale * (half * wr * smooth + half * lw * lcoef) / TWO_PI;
    }
    Ok(())
}

/// Row of the `B1(k)*` correction kernel at an interior (or boundary)
/// target: `sum_j row[j] h[j]` approximates `[B1(k)* h](x)`.
pub fn b1star_row(
    k: Wavenumber,
    grid: &BoundaryGrid,
    pot: &BoundaryPotential,
    target: RowTarget,
) -> Result<Vec<C>> {
    let mut row = green_row(k, grid, target)?;
    let na = grid.n_per_axis();
    for (j, v) in row.iter_mut().enumerate() {
        let s = pot.eval(grid.nodes[j % na])?;
        *v *= -sign(s) * s.abs().sqrt();
    }
    Ok(row)
}

/// Dense discretization of `1 + B(k)` with quadrature weights folded in.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    k: Wavenumber,
    mat: CMatrix,
    lu: Option<LuFactors>,
    smin: Option<f64>,
    smax: Option<f64>,
}

/// Assemble the dense matrix of `1 + B(k)` on the grid.
pub fn assemble(
    k: Wavenumber,
    grid: &BoundaryGrid,
    pot: &BoundaryPotential,
) -> Result<KernelMatrix> {
    let na = grid.n_per_axis();
    let n = 2 * na;
    let mut sqrt_abs = vec![0.0; na];
    let mut col_factor = vec![0.0; na];
    for (i, &x) in grid.nodes.iter().enumerate() {
        let s = pot.eval(x)?;
        sqrt_abs[i] = s.abs().sqrt();
        col_factor[i] = sign(s) * s.abs().sqrt();
    }

    let mut mat = CMatrix::identity(n);
    let rows: Result<Vec<(usize, Vec<C>)>> = (0..n)
        .into_par_iter()
        .map(|ri| {
            let (axis, coordinate) = grid.node_location(ri);
            if sqrt_abs[ri % na] == 0.0 {
                // row weight vanishes; keep the identity row
                return Ok((ri, Vec::new()));
            }
            let row = green_row(k, grid, RowTarget::Boundary { axis, coordinate })?;
            Ok((ri, row))
        })
        .collect();
    for (ri, row) in rows? {
        if row.is_empty() {
            continue;
        }
        let pref = -sqrt_abs[ri % na];
        let dest = mat.row_mut(ri);
        for (j, v) in row.iter().enumerate() {
            dest[j] += pref * col_factor[j % na] * v;
        }
    }
    Ok(KernelMatrix { k, mat, lu: None, smin: None, smax: None })
}

/// Matrix-free action of `B(k)` on a node vector (no identity part).
pub fn apply_b(
    k: Wavenumber,
    grid: &BoundaryGrid,
    pot: &BoundaryPotential,
    density: &[C],
) -> Result<Vec<C>> {
    let na = grid.n_per_axis();
    let n = 2 * na;
    if density.len() != n {
        return Err(Error::Parameter(format!(
            "density length {} does not match N_total {n}",
            density.len()
        )));
    }
    let mut sqrt_abs = vec![0.0; na];
    let mut col_factor = vec![0.0; na];
    for (i, &x) in grid.nodes.iter().enumerate() {
        let s = pot.eval(x)?;
        sqrt_abs[i] = s.abs().sqrt();
        col_factor[i] = sign(s) * s.abs().sqrt();
    }
    (0..n)
        .into_par_iter()
        .map(|ri| {
            if sqrt_abs[ri % na] == 0.0 {
                return Ok(C::new(0.0, 0.0));
            }
            let (axis, coordinate) = grid.node_location(ri);
            let row = green_row(k, grid, RowTarget::Boundary { axis, coordinate })?;
            let mut acc = C::new(0.0, 0.0);
            for (j, v) in row.iter().enumerate() {
                acc += v * col_factor[j % na] * density[j];
            }
            Ok(-sqrt_abs[ri % na] * acc)
        })
        .collect()
}

impl KernelMatrix {
    pub fn wavenumber(&self) -> Wavenumber {
        self.k
    }

    pub fn n_total(&self) -> usize {
        self.mat.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    fn ensure_lu(&mut self) -> Result<&LuFactors> {
        if self.lu.is_none() {
            self.lu = Some(lu_factor(&self.mat)?);
        }
        Ok(self.lu.as_ref().unwrap())
    }

    /// Smallest singular value of the discrete `1 + B(k)`.
    pub fn min_singular_value(&mut self) -> f64 {
        if let Some(s) = self.smin {
            return s;
        }
        let s = smallest_singular_value(&self.mat);
        self.smin = Some(s);
        s
    }

    /// Condition estimate sigma_max / sigma_min.
    pub fn condition_estimate(&mut self) -> f64 {
        let smin = self.min_singular_value();
        if smin == 0.0 {
            return f64::INFINITY;
        }
        let smax = match self.smax {
            Some(s) => s,
            None => {
                let s = largest_singular_value(&self.mat);
                self.smax = Some(s);
                s
            }
        };
        smax / smin
    }

    /// Determinant of the discrete `1 + B(k)` (real up to roundoff when
    /// `k = i kappa`); used for sign-change bracketing of bound states.
    pub fn determinant(&mut self) -> Result<C> {
        match self.ensure_lu() {
            Ok(lu) => Ok(lu.det()),
            Err(_) => Ok(C::new(0.0, 0.0)),
        }
    }

    /// Solve `(1 + B(k)) h = rhs` with a residual contract of
    /// `1e-10 ||rhs||`; near-singular systems are refused.
    pub fn solve(&mut self, rhs: &[C]) -> Result<Vec<C>> {
        let n = self.mat.n;
        if rhs.len() != n {
            return Err(Error::Parameter(format!(
                "rhs length {} does not match N_total {n}",
                rhs.len()
            )));
        }
        let cond = self.condition_estimate();
        if cond > 1e12 {
            return Err(Error::NearSingular {
                cond,
                context: "1 + B(k) is numerically singular: possible point of the \
                          exceptional set or a bound state"
                    .into(),
            });
        }
        let lu = self.ensure_lu()?;
        let mut h = lu.solve(rhs);
        let rhs_norm = rhs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if rhs_norm == 0.0 {
            return Ok(vec![C::new(0.0, 0.0); n]);
        }
        for _ in 0..3 {
            let mh = self.mat.matvec(&h);
            let resid: Vec<C> = mh.iter().zip(rhs).map(|(a, b)| a - b).collect();
            let rn = resid.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if rn <= 1e-10 * rhs_norm {
                return Ok(h);
            }
            let corr = self.lu.as_ref().unwrap().solve(&resid);
            for (hi, ci) in h.iter_mut().zip(&corr) {
                *hi -= ci;
            }
        }
        let mh = self.mat.matvec(&h);
        let rn = mh
            .iter()
            .zip(rhs)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if rn <= 1e-10 * rhs_norm {
            Ok(h)
        } else {
            Err(Error::Numerics(format!(
                "solve residual {rn:.3e} exceeds 1e-10 * ||rhs|| = {:.3e}",
                1e-10 * rhs_norm
            )))
        }
    }
}
