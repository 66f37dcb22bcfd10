//! Axisymmetric extension of a solid cylinder in the relaxed micromorphic
//! continuum: closed-form solution, limit cases, stored energy, and an
//! independent finite-difference oracle.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix `f64`, with `*32` variants for single precision.

pub mod cli;
pub mod closedform;
pub mod error;
pub mod material;
pub mod oracle;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;
pub use specfun::{bessel_i0, bessel_i1, bessel_i1_over_x};

pub type Params = material::FullParams<f64>;
pub type MacroMicro = material::MacroMicroParams<f64>;
pub type EModuli = material::EModuli<f64>;
pub type Setup = closedform::ProblemSetup<f64>;
pub type Coefficients = closedform::SolutionCoefficients<f64>;
pub type Solution = closedform::ClosedForm<f64>;
pub type Sample = closedform::FieldSample<f64>;
pub type Grid = oracle::RadialGrid<f64>;
pub type GridFields = oracle::GridSolution<f64>;

pub type Params32 = material::FullParams<f32>;
pub type Setup32 = closedform::ProblemSetup<f32>;
pub type Solution32 = closedform::ClosedForm<f32>;
pub type GridFields32 = oracle::GridSolution<f32>;
