//! Nonharmonic Fourier operators on finite node sets: extreme singular
//! values, the known lower bounds with their hypotheses, explicit Lagrange
//! interpolants, and the δ-sweep experiments built on them.
//!
//! Geometry, lattice, special functions, linear algebra and the operators are
//! generic over [`Real`] (`f32`/`f64`); the bound, interpolant and experiment
//! layers work in `f64`.

pub mod error;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod operators;
pub mod scalar;
pub mod specfun;

pub mod bounds;
pub mod experiment;
pub mod interpolants;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Exponent, Real};

pub type PointSet64 = geometry::PointSet<f64>;
pub type PointSet32 = geometry::PointSet<f32>;
pub type FrequencyDomain64 = lattice::FrequencyDomain<f64>;
pub type FrequencyDomain32 = lattice::FrequencyDomain<f32>;
pub type CMatrix64 = linalg::CMatrix<f64>;
pub type CMatrix32 = linalg::CMatrix<f32>;
pub type Complex64 = num_complex::Complex<f64>;
