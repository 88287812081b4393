//! Slice monogenic function theory over real Clifford algebras, as numerical
//! procedures.
//!
//! - [`algebra`] and [`frame`]: arithmetic in `R_n`, paravectors, unit
//!   imaginaries and orthonormal frame completion.
//! - [`slice`]: representation formula, slice extension, splitting into
//!   holomorphic components and intrinsic decomposition.
//! - [`fourier`]: the left-sided Clifford Fourier transform with Plancherel,
//!   Hausdorff–Young and spectral-support diagnostics.
//! - [`paley_wiener`]: Hardy, band-limited and Bergman reconstructions with
//!   their reproducing kernels.
//! - [`harness`]: closed-form catalog, suite runner and reports used by the
//!   `slicewave` CLI.

pub mod algebra;
pub mod error;
pub mod fourier;
pub mod frame;
pub mod harness;
mod linalg;
pub mod numerics;
pub mod paley_wiener;
pub mod slice;

pub use error::{Error, Result};
