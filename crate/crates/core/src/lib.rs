//! Solver for the two-dimensional Laplacian on the quarter plane with
//! coordinate-dependent Robin boundary conditions `du/dn + sigma u = 0` on the
//! two boundary half-lines.
//!
//! The operator is handled through its boundary-integral reformulation: the
//! resolvent, bound states, generalized eigenfunctions and the on-shell
//! scattering amplitude are all expressed through the boundary operator
//! `1 + B(k)`, where `B(k)` has the image-symmetrized free Green kernel
//! sandwiched between `sqrt(|sigma|)` factors. A dense Nystrom discretization
//! with log-singularity-aware product quadrature turns `1 + B(k)` into a
//! solvable linear system.
//!
//! An independent finite-difference discretization of the same operator
//! ([`fd_oracle`]) cross-validates eigenvalues and resolvent action; the
//! [`acceptance`] module bundles those cross-checks into a runnable suite.

pub mod acceptance;
pub mod error;
pub mod fd_oracle;
pub mod kernels;
pub mod linalg;
pub mod nystrom;
pub mod potential;
pub mod quad;
pub mod resolvent;
pub mod scattering;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use kernels::{Axis, BoundaryPoint, KernelVariant, PlanePoint, Wavenumber};
pub use nystrom::{BoundaryGrid, GridParams, KernelMatrix};
pub use potential::BoundaryPotential;
//RESOLVENT_EXPORT
//SCATTERING_EXPORT
//SPECTRAL_EXPORT
