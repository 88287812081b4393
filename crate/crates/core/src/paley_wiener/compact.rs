//! Band-limited (compact-type) synthesis, growth bounds and kernel reproduction.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{imaginary_unit_of, ImaginaryUnit, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::fourier::{SpectrumSamples, INV_SQRT_2PI};
use crate::numerics::{lp_norm, simpson_weights, trapezoid_weights, UniformGrid};

use super::kernels::pw_kernel;

/// Spectrum `F_I(f|ℝ)` of a band-limited function, sampled on a grid inside `[−B, B]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandlimitedSpectrum {
    pub bandwidth: f64,
    pub spectrum: SpectrumSamples,
}

impl BandlimitedSpectrum {
    pub fn new(bandwidth: f64, spectrum: SpectrumSamples) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::InvalidParameter(format!("bandwidth must be positive, got {bandwidth}")));
        }
        let slack = 1e-12 * bandwidth;
        if spectrum.grid.lo() < -bandwidth - slack || spectrum.grid.hi() > bandwidth + slack {
            return Err(Error::Grid(format!(
                "spectral grid [{}, {}] is not inside [-{bandwidth}, {bandwidth}]",
                spectrum.grid.lo(),
                spectrum.grid.hi()
            )));
        }
        Ok(Self { bandwidth, spectrum })
    }

    /// Samples `spectrum(w)` on `count` nodes spanning `[−B, B]`.
    pub fn from_fn(
        bandwidth: f64,
        slice: ImaginaryUnit,
        count: usize,
        spectrum: impl Fn(f64) -> Multivector,
    ) -> Result<Self> {
        let grid = UniformGrid::symmetric(bandwidth, count)?;
        Self::new(bandwidth, SpectrumSamples::from_fn(slice, grid, spectrum)?)
    }

    /// The same function's spectrum on slice `J`.
    ///
    /// `f|ℝ` does not depend on the slice, so with `C, S` its cosine and sine
    /// transforms, `F_I = C − IS` and `F_I(−w) = C + IS` give
    /// `F_J(w) = ½[F_I(w) + F_I(−w)] − ½ J I [F_I(w) − F_I(−w)]`.
    pub fn on_slice(&self, j: &ImaginaryUnit) -> Result<SpectrumSamples> {
        let s = &self.spectrum;
        if j == &s.slice {
            return Ok(s.clone());
        }
        if !s.grid.is_symmetric() {
            return Err(Error::Grid("re-slicing a spectrum needs a symmetric grid".into()));
        }
        let count = s.coeffs.len();
        let coeffs = (0..count)
            .map(|k| {
                let (a, b) = (&s.coeffs[k], &s.coeffs[count - 1 - k]);
                let even = (a + b).scale(0.5);
                let odd = s.slice.left_mul(&(a - b)).scale(0.5);
                &even - &j.left_mul(&odd)
            })
            .collect();
        SpectrumSamples::new(j.clone(), s.grid, coeffs)
    }

    /// `‖F‖₂` over the band by the trapezoid rule, which equals `‖f|ℝ‖₂`.
    pub fn l2_norm(&self) -> Result<f64> {
        lp_norm(&self.spectrum.grid, &self.spectrum.coeffs, 2.0)
    }
}

/// `f(u + Iv) = (1/√2π) ∫_{−B}^{B} e^{I(u+Iv)w} F_I(w) dw`, `I = I_x`,
/// by Simpson quadrature with `e^{I(u+Iv)w} = e^{−vw}(cos uw + I sin uw)`
/// on the left of the coefficients.
pub fn pw_synthesize(s: &BandlimitedSpectrum, target: &Paravector) -> Result<Multivector> {
    let j = imaginary_unit_of(target);
    let spec = s.on_slice(&j)?;
    let (u, v) = (target.x0, target.vector_norm());
    let weights = simpson_weights(spec.grid.count(), spec.grid.spacing())?;
    let n = target.dim();
    let mut cos_part = Multivector::zero(n)?;
    let mut sin_part = Multivector::zero(n)?;
    for (k, w) in spec.grid.nodes().enumerate() {
        let e = weights[k] * (-v * w).exp();
        let (sn, cs) = (u * w).sin_cos();
        cos_part.add_scaled(e * cs, &spec.coeffs[k]);
        sin_part.add_scaled(e * sn, &spec.coeffs[k]);
    }
    Ok((&cos_part + &j.left_mul(&sin_part)).scale(INV_SQRT_2PI))
}

/// Growth bound `|f(x)| ≤ C e^{B|x|}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub bandwidth: f64,
    pub constant: f64,
}

impl GrowthBound {
    pub fn new(bandwidth: f64, constant: f64) -> Result<Self> {
        if !(bandwidth > 0.0) || !(constant > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "growth bound needs B, C > 0 (got B = {bandwidth}, C = {constant})"
            )));
        }
        Ok(Self { bandwidth, constant })
    }

    /// The estimate `C = √(2B/2π) ‖f|ℝ‖₂`, with `‖f|ℝ‖₂ = ‖F‖₂` by Plancherel.
    pub fn from_spectrum(s: &BandlimitedSpectrum) -> Result<Self> {
        let c = (s.bandwidth / PI).sqrt() * s.l2_norm()?;
        Self::new(s.bandwidth, c)
    }
}

/// `min over probes of C e^{B|x|} − |f(x)|`; nonnegative when the bound holds.
pub fn pw_growth_margin<F>(f: F, gb: &GrowthBound, probes: &[Paravector]) -> f64
where
    F: Fn(&Paravector) -> Multivector,
{
    probes
        .iter()
        .map(|x| gb.constant * (gb.bandwidth * x.norm()).exp() - f(x).norm())
        .fold(f64::INFINITY, f64::min)
}

/// `∫ 𝒦_B(x, ξ) f(ξ) dξ` over the real axis by the trapezoid rule on `grid`.
///
/// Both factors are band-limited in `ξ` to `[−B, B]`, so the trapezoid rule is
/// exact up to truncation once the spacing is below `π/B`.
pub fn pw_kernel_reproduce(
    x: &Paravector,
    bandwidth: f64,
    real_values: impl Fn(f64) -> Multivector,
    grid: &UniformGrid,
) -> Result<Multivector> {
    let weights = trapezoid_weights(grid.count(), grid.spacing());
    let mut acc = Multivector::zero(x.dim())?;
    for (k, xi) in grid.nodes().enumerate() {
        let kernel = pw_kernel(x, xi, bandwidth)?;
        acc.add_scaled(weights[k], &(&kernel * &real_values(xi)));
    }
    Ok(acc)
}
