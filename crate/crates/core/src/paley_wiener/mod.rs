//! Paley–Wiener type theorems as numerical procedures.
//!
//! * [`hardy`]: functions in the slice Hardy space of the right half-space are
//!   rebuilt from boundary values `f(Iv)`, either by the half-line Fourier
//!   integral `(1/√2π) ∫_{-∞}^0 e^{xw} F(w) dw` or by Poisson convolution.
//! * [`compact`]: entire functions of exponential type `B` are synthesized
//!   from spectra on `[−B, B]` and checked against the growth bound.
//! * [`bergman`]: Bergman-space functions are synthesized from half-line
//!   densities, densities are extracted from shifted boundary data, and the
//!   norm inequalities are measured as margins.
//! * [`kernels`]: the Cauchy, Poisson, Hardy-reproducing and band-limited
//!   reproducing kernels in closed form.

pub mod bergman;
pub mod compact;
pub mod hardy;
pub mod kernels;
pub mod norms;

pub use bergman::{
    bergman_density_extract, bergman_norm_margins, bergman_pointwise_margins, bergman_synthesize, density_discrepancy,
    BergmanDensity, BergmanMargins, PointwiseExponents, PointwiseFit,
};
pub use compact::{pw_growth_margin, pw_kernel_reproduce, pw_synthesize, BandlimitedSpectrum, GrowthBound};
pub use hardy::{
    hardy_kernel_reproduce, hardy_reconstruct_fourier, hardy_reconstruct_poisson, HardyBoundaryData, HardyReconstructor,
};
pub use kernels::{cauchy_kernel, cauchy_kernel_quadrature, hardy_kernel, poisson_kernel, pw_kernel, pw_kernel_quadrature};
pub use norms::{bergman_norm, hardy_norm, PlaneQuadrature, SliceNormReport};
