//! Eigenvalues of the two-dimensional Helmholtz equation on near-circular
//! domains.
//!
//! * [`perturb`] — second-order boundary perturbation theory (Neumann).
//! * [`empirical`] — square/circle blending formula for supercircles.
//! * [`oracle`] — method-of-particular-solutions eigensolver used to check
//!   both.
//! * [`boundary`] — Fourier expansions of boundary families about their
//!   equal-area circle; [`specfun`] — Bessel functions, their zeros, Γ.
//!
//! Numerical routines are generic over [`Real`] (`f32`/`f64`); the aliases
//! below fix the scalar to `f64`.

pub mod boundary;
pub mod empirical;
pub mod error;
pub mod mode;
pub mod oracle;
pub mod perturb;
pub mod report;
pub mod scalar;
pub mod specfun;
pub mod validate;

pub use error::{Error, Result};
pub use mode::{BoundaryCondition, Parity};
pub use scalar::Real;

pub type Boundary = boundary::FourierBoundary<f64>;
pub type Order = boundary::FourierOrder<f64>;
pub type Supercircle = boundary::SupercircleSpec<f64>;
pub type Ellipse = boundary::EllipseSpec<f64>;
pub type Mode = perturb::Mode<f64>;
pub type PerturbedEigenvalue = perturb::PerturbedEigenvalue<f64>;
pub type OracleResult = oracle::OracleResult<f64>;
pub type CircleMode = empirical::CircleMode<f64>;
pub type StatePairing = empirical::StatePairing<f64>;
pub type BesselRoot = specfun::BesselRoot<f64>;
