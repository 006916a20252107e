//! Free Green function on the quarter plane and the integral kernels of the
//! boundary operators.
//!
//! The free kernel is `G(k)(r) = K_0(-i k r) / (2 pi)`; the Neumann quarter-
//! plane kernel `G0(k)(x, y)` sums it over the four reflections of the
//! source, `y -> (+-y_1, +-y_2)`. The boundary operators carry `sqrt|sigma|`
//! factors:
//!
//! * `B0`:      `sqrt|sigma(x)| G0(k)(x, y)`            (x boundary, y plane)
//! * `B1star`:  `-sgn(sigma(y)) sqrt|sigma(y)| G0(k)(x, y)`  (x plane, y boundary)
//! * `B`:       `-sqrt|sigma(x)| sgn(sigma(y)) sqrt|sigma(y)| G0(k)(x, y)`

use crate::error::{Error, Result};
use crate::potential::{sign, BoundaryPotential};
use crate::specfun::{bessel_k0, ComplexArg};
use num_complex::Complex64;

/// Complex wavenumber `k` with `Im k >= 0`, `k != 0`; `z = k^2`.
///
/// `on_real_axis` marks the limiting-absorption boundary value `k + i0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavenumber {
    k: Complex64,
    on_real_axis: bool,
}

impl Wavenumber {
    pub fn new(k: Complex64) -> Result<Self> {
        if !k.re.is_finite() || !k.im.is_finite() {
            return Err(Error::Domain("wavenumber must be finite".into()));
        }
        if k.norm() == 0.0 {
            return Err(Error::Domain("wavenumber must be nonzero".into()));
        }
        if k.im < 0.0 {
            return Err(Error::Domain(format!(
                "wavenumber {k} must lie in the closed upper half-plane"
            )));
        }
        Ok(Wavenumber { k, on_real_axis: k.im == 0.0 })
    }

    /// The limiting-absorption case `k + i0` for real nonzero `k`.
    pub fn real_axis(k: f64) -> Result<Self> {
        Self::new(Complex64::new(k, 0.0))
    }

    /// `k = i kappa` on the positive imaginary axis (bound-state search).
    pub fn imaginary(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::Domain("kappa must be positive".into()));
        }
        Self::new(Complex64::new(0.0, kappa))
    }

    /// `k = sqrt(z)` on the branch with the cut along the positive reals.
    pub fn from_energy(z: Complex64) -> Result<Self> {
        if z.im == 0.0 && z.re >= 0.0 {
            return Err(Error::Domain(
                "z on the positive real axis requires an explicit k + i0 limit".into(),
            ));
        }
        // principal sqrt maps C \ R_+ (cut convention arg in (0, 2pi)) to Im > 0
        let (r, mut th) = z.to_polar();
        if th < 0.0 {
            th += 2.0 * std::f64::consts::PI;
        }
        Self::new(Complex64::from_polar(r.sqrt(), 0.5 * th))
    }

    pub fn value(self) -> Complex64 {
        self.k
    }

    pub fn energy(self) -> Complex64 {
        self.k * self.k
    }

    pub fn on_real_axis(self) -> bool {
        self.on_real_axis
    }
}

/// Which boundary half-line a boundary point sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

/// Point on the boundary of the quarter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub axis: Axis,
    pub coordinate: f64,
}

impl BoundaryPoint {
    pub fn new(axis: Axis, coordinate: f64) -> Result<Self> {
        if !(coordinate >= 0.0) || !coordinate.is_finite() {
            return Err(Error::Domain(format!(
                "boundary coordinate {coordinate} must be >= 0"
            )));
        }
        Ok(BoundaryPoint { axis, coordinate })
    }

    /// Embedding into the closed quarter plane.
    pub fn to_plane(self) -> PlanePoint {
        match self.axis {
            Axis::Horizontal => PlanePoint { x1: self.coordinate, x2: 0.0 },
            Axis::Vertical => PlanePoint { x1: 0.0, x2: self.coordinate },
        }
    }
}

/// Point of the closed quarter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x1: f64,
    pub x2: f64,
}

impl PlanePoint {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        if !(x1 >= 0.0 && x2 >= 0.0) || !x1.is_finite() || !x2.is_finite() {
            return Err(Error::Domain(format!(
                "({x1}, {x2}) is not in the closed quarter plane"
            )));
        }
        Ok(PlanePoint { x1, x2 })
    }
}

/// Free-plane Green kernel `G(k)(r) = K_0(-i k r) / (2 pi)`, `r > 0`.
pub fn green_free(k: Wavenumber, r: f64) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::Singularity(format!(
            "green_free requires r > 0 (got {r})"
        )));
    }
    let w = Complex64::new(0.0, -1.0) * k.value() * r;
    // Im k >= 0 and r > 0 put w in the closed right half-plane, off 0
    let arg = ComplexArg::new(w).expect("kernel argument stays off the branch cut");
    Ok(bessel_k0(arg) / (2.0 * std::f64::consts::PI))
}

/// Image-symmetrized kernel: sum of `green_free` over the four reflections
/// `(+-y1, +-y2)` of the source.
pub fn green_images(k: Wavenumber, x: PlanePoint, y: PlanePoint) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (s1, s2) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
        let d1 = x.x1 - s1 * y.x1;
        let d2 = x.x2 - s2 * y.x2;
        let r = (d1 * d1 + d2 * d2).sqrt();
        if r == 0.0 {
            return Err(Error::Singularity(format!(
                "green_images: target ({}, {}) coincides with an image of ({}, {})",
                x.x1, x.x2, y.x1, y.x2
            )));
        }
        acc += green_free(k, r)?;
    }
    Ok(acc)
}

/// Which boundary-operator kernel to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVariant {
    B0,
    B1Star,
    B,
}

/// Argument of [`kernel_entry`]: boundary or interior point, per variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelPoint {
    Boundary(BoundaryPoint),
    Plane(PlanePoint),
}

impl KernelPoint {
    fn plane(self) -> PlanePoint {
        match self {
            KernelPoint::Boundary(b) => b.to_plane(),
            KernelPoint::Plane(p) => p,
        }
    }

    fn boundary(self) -> Result<BoundaryPoint> {
        match self {
            KernelPoint::Boundary(b) => Ok(b),
            KernelPoint::Plane(_) => Err(Error::Domain(
                "this kernel variant requires a boundary point here".into(),
            )),
        }
    }
}

/// Pointwise kernel of `B0(k)`, `B1(k)*` or `B(k)`.
pub fn kernel_entry(
    k: Wavenumber,
    variant: KernelVariant,
    x: KernelPoint,
    y: KernelPoint,
    pot: &BoundaryPotential,
) -> Result<Complex64> {
    let weight = match variant {
        KernelVariant::B0 => {
            let xb = x.boundary()?;
            let s = pot.eval(xb.coordinate)?;
            Complex64::new(s.abs().sqrt(), 0.0)
        }
        KernelVariant::B1Star => {
            let yb = y.boundary()?;
            let s = pot.eval(yb.coordinate)?;
            Complex64::new(-sign(s) * s.abs().sqrt(), 0.0)
        }
        KernelVariant::B => {
            let xb = x.boundary()?;
            let yb = y.boundary()?;
            let sx = pot.eval(xb.coordinate)?;
            let sy = pot.eval(yb.coordinate)?;
            Complex64::new(-sx.abs().sqrt() * sign(sy) * sy.abs().sqrt(), 0.0)
        }
    };
    if weight.norm() == 0.0 {
        // sgn(sigma) = 0 zeroes the entry; skip the (possibly singular) kernel
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(weight * green_images(k, x.plane(), y.plane())?)
}
