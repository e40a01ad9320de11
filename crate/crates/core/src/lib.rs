//! Numerical integral geometry built around generalized Fourier transforms.
//!
//! The crate provides, in dependency order:
//!
//! - [`grid`], [`dft`], [`phantom`]: sampled functions on uniform box grids,
//!   unitary discrete Fourier transforms with a fixed sign convention, and
//!   smooth test phantoms;
//! - [`multipliers`]: the power/sign/phase family of 1-D filter kernels
//!   represented by their Fourier transforms, with inversion multipliers and
//!   the unitarity (GFT) conditions;
//! - [`radon`]: forward and inverse generalized Radon transforms on
//!   hyperplane charts, plus Plancherel-defect measurement;
//! - [`sphere`]: the one-parameter family of Funk-type transforms of
//!   even/odd functions on spheres, diagonalized on spherical harmonics;
//! - [`polyexact`]: exact rational polynomial arithmetic (Sturm sequences,
//!   distinct-root counts over the reals and the complexes);
//! - [`complexes`]: complexes of lines, Crofton functions/numbers, the
//!   associated plane-family transforms and their inversion;
//! - [`hypergroup`]: the discrete commutative hypergroup induced by any
//!   unitary transform kernel (generalized translations, duality);
//! - [`io`]: flat binary and CSV serialization of the data types.
//!
//! All floating-point code is generic over the scalar type through the
//! [`Real`] trait; `f64` aliases for the main types live at the crate root
//! and are what the CLI and the test suites use.

pub mod complexes;
pub mod dft;
pub mod error;
pub mod grid;
pub mod hypergroup;
pub mod io;
pub mod multipliers;
pub mod phantom;
pub mod polyexact;
pub mod quad;
pub mod radon;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` grid function (the default precision used by the CLI and tests).
pub type GridFunction64 = grid::GridFunction<f64>;
/// `f32` grid function.
pub type GridFunction32 = grid::GridFunction<f32>;
/// `f64` spectrum.
pub type Spectrum64 = grid::Spectrum<f64>;
/// `f64` multiplier kernel.
pub type MultiplierKernel64 = multipliers::MultiplierKernel<f64>;
