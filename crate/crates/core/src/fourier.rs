//! The one-dimensional left-sided Clifford Fourier transform
//!
//! ```text
//! F_I(f)(w) = (1/√2π) ∫ e^{-Iuw} f(u) du,    f(u) = (1/√2π) ∫ e^{Iuw} F_I(f)(w) dw
//! ```
//!
//! The exponential always multiplies from the left. Since `e^{-Iuw} =
//! cos(uw) - I sin(uw)` and `I` does not depend on `u`, the transform is
//! accumulated as `C(w) - I·S(w)` from the multivector cosine and sine
//! integrals `C` and `S`. Both integrals use composite Simpson weights on the
//! sample grid.

use serde::{Deserialize, Serialize};

use crate::algebra::{ImaginaryUnit, Multivector};
use crate::error::{Error, Result};
use crate::numerics::{lp_norm, simpson_weights, trapezoid_weights, UniformGrid};

pub(crate) const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Multivector samples on a uniform grid of the integration axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineSamples {
    pub grid: UniformGrid,
    pub values: Vec<Multivector>,
}

impl LineSamples {
    pub fn new(grid: UniformGrid, values: Vec<Multivector>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if values.len() != grid.count() {
            return Err(Error::Grid(format!("{} values for {} nodes", values.len(), grid.count())));
        }
        let n = values[0].dim();
        if let Some(bad) = values.iter().find(|m| m.dim() != n) {
            return Err(Error::DimensionMismatch { left: n, right: bad.dim() });
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every grid node.
    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> Multivector) -> Result<Self> {
        Self::new(grid, grid.nodes().map(f).collect())
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|m| m.scale(s)).collect() }
    }
}

/// Transform coefficients `F_I(f)` on a uniform `w`-grid, tagged with `I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSamples {
    pub slice: ImaginaryUnit,
    pub grid: UniformGrid,
    pub coeffs: Vec<Multivector>,
}

impl SpectrumSamples {
    pub fn new(slice: ImaginaryUnit, grid: UniformGrid, coeffs: Vec<Multivector>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if coeffs.len() != grid.count() {
            return Err(Error::Grid(format!("{} coefficients for {} nodes", coeffs.len(), grid.count())));
        }
        if let Some(bad) = coeffs.iter().find(|m| m.dim() != slice.dim()) {
            return Err(Error::DimensionMismatch { left: slice.dim(), right: bad.dim() });
        }
        Ok(Self { slice, grid, coeffs })
    }

    pub fn from_fn(slice: ImaginaryUnit, grid: UniformGrid, f: impl Fn(f64) -> Multivector) -> Result<Self> {
        let coeffs = grid.nodes().map(f).collect();
        Self::new(slice, grid, coeffs)
    }

    pub fn as_line(&self) -> LineSamples {
        LineSamples { grid: self.grid, values: self.coeffs.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Multivector::is_zero)
    }
}

/// Weighted cosine and sine integrals `Σ_j w_j cos(x_j t) m_j`, `Σ_j w_j sin(x_j t) m_j`
/// of flattened samples, for each target `t`.
///
/// Phases advance by complex rotation and are re-anchored with an exact
/// `sin_cos` every [`RESYNC`] nodes, keeping phase error near 1e-14.
struct CosSinKernel<'a> {
    grid: &'a UniformGrid,
    /// `weights[j] * values[j]` restricted to the active coefficients,
    /// flattened with stride `active.len()`.
    weighted: Vec<f64>,
    /// Coefficient indices that are nonzero at some node; the others
    /// integrate to exactly zero and are skipped.
    active: Vec<usize>,
}

const RESYNC: usize = 64;

impl<'a> CosSinKernel<'a> {
    fn new(grid: &'a UniformGrid, weights: &[f64], values: &[Multivector]) -> Self {
        let width = values[0].coeffs().len();
        let active: Vec<usize> = (0..width).filter(|&k| values.iter().any(|m| m.coeffs()[k] != 0.0)).collect();
        let mut weighted = Vec::with_capacity(active.len() * values.len());
        for (w, m) in weights.iter().zip(values) {
            weighted.extend(active.iter().map(|&k| m.coeffs()[k] * w));
        }
        Self { grid, weighted, active }
    }

    fn eval(&self, t: f64, cos_acc: &mut [f64], sin_acc: &mut [f64]) {
        cos_acc.iter_mut().for_each(|c| *c = 0.0);
        sin_acc.iter_mut().for_each(|c| *c = 0.0);
        let h = self.grid.spacing();
        let (step_s, step_c) = (h * t).sin_cos();
        let count = self.grid.count();
        let d = self.active.len();
        if d == 0 {
            return;
        }
        let mut j = 0;
        while j < count {
            let (mut s, mut c) = (self.grid.node(j) * t).sin_cos();
            let end = (j + RESYNC).min(count);
            for k in j..end {
                let row = &self.weighted[k * d..(k + 1) * d];
                for ((ca, sa), &v) in cos_acc.iter_mut().zip(sin_acc.iter_mut()).zip(row) {
                    *ca += c * v;
                    *sa += s * v;
                }
                let next_c = c * step_c - s * step_s;
                s = s * step_c + c * step_s;
                c = next_c;
            }
            j = end;
        }
    }
}

/// Cosine and sine Simpson integrals `∫ cos(ut) f(u) du`, `∫ sin(ut) f(u) du`
/// at every node `t` of `targets`, without the `1/√2π` factor.
pub fn cos_sin_integrals(f: &LineSamples, targets: &UniformGrid) -> Result<(Vec<Multivector>, Vec<Multivector>)> {
    let weights = simpson_weights(f.grid.count(), f.grid.spacing())?;
    let kernel = CosSinKernel::new(&f.grid, &weights, &f.values);
    let n = f.dim();
    let d = 1usize << n;
    let mut cos_out = Vec::with_capacity(targets.count());
    let mut sin_out = Vec::with_capacity(targets.count());
    let mut c = vec![0.0; kernel.active.len()];
    let mut s = vec![0.0; kernel.active.len()];
    for t in targets.nodes() {
        kernel.eval(t, &mut c, &mut s);
        let (mut cf, mut sf) = (vec![0.0; d], vec![0.0; d]);
        for (slot, &k) in kernel.active.iter().enumerate() {
            cf[k] = c[slot];
            sf[k] = s[slot];
        }
        cos_out.push(Multivector::from_coeffs(n, cf)?);
        sin_out.push(Multivector::from_coeffs(n, sf)?);
    }
    Ok((cos_out, sin_out))
}

/// `F_I(f)` on `wgrid` by composite Simpson quadrature over the sample grid.
pub fn cft_forward(f: &LineSamples, unit: &ImaginaryUnit, wgrid: &UniformGrid) -> Result<SpectrumSamples> {
    if f.values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if f.dim() != unit.dim() {
        return Err(Error::DimensionMismatch { left: f.dim(), right: unit.dim() });
    }
    let (cos_part, sin_part) = cos_sin_integrals(f, wgrid)?;
    let coeffs = cos_part
        .into_iter()
        .zip(sin_part)
        .map(|(c, s)| (c - unit.left_mul(&s)).scale(INV_SQRT_2PI))
        .collect();
    SpectrumSamples::new(unit.clone(), *wgrid, coeffs)
}

/// `F_I^{-1}(s)` on `ugrid`, with `e^{Iuw}` on the left of the coefficients.
pub fn cft_inverse(s: &SpectrumSamples, ugrid: &UniformGrid) -> Result<LineSamples> {
    if s.coeffs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let (cos_part, sin_part) = cos_sin_integrals(&s.as_line(), ugrid)?;
    let values = cos_part
        .into_iter()
        .zip(sin_part)
        .map(|(c, si)| (c + s.slice.left_mul(&si)).scale(INV_SQRT_2PI))
        .collect();
    LineSamples::new(*ugrid, values)
}

/// `|‖F_I f‖₂ − ‖f‖₂| / ‖f‖₂`, both norms by the trapezoid rule on their grids.
pub fn plancherel_defect(f: &LineSamples, unit: &ImaginaryUnit, wgrid: &UniformGrid) -> Result<f64> {
    let norm = lp_norm(&f.grid, &f.values, 2.0)?;
    if norm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let spec = cft_forward(f, unit, wgrid)?;
    let spec_norm = lp_norm(&spec.grid, &spec.coeffs, 2.0)?;
    Ok((spec_norm - norm).abs() / norm)
}

/// `‖f‖_p − ‖F_I f‖_q` with `1/p + 1/q = 1`; `p = 1` uses the grid maximum
/// for `q = ∞`.
pub fn hausdorff_young_margin(f: &LineSamples, unit: &ImaginaryUnit, wgrid: &UniformGrid, p: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::ExponentRange(p));
    }
    let q = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
    let spec = cft_forward(f, unit, wgrid)?;
    Ok(lp_norm(&f.grid, &f.values, p)? - lp_norm(&spec.grid, &spec.coeffs, q)?)
}

/// Closed spectral interval `[lo, hi]`; either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn nonpositive() -> Self {
        Self { lo: f64::NEG_INFINITY, hi: 0.0 }
    }

    pub fn nonnegative() -> Self {
        Self { lo: 0.0, hi: f64::INFINITY }
    }

    /// Length of `[a, b] ∩ self`.
    fn overlap(&self, a: f64, b: f64) -> f64 {
        (b.min(self.hi) - a.max(self.lo)).max(0.0)
    }
}

/// Fraction of the spectral energy `∫|F|²` lying outside `interval`.
///
/// Energy is the trapezoid integral; each grid cell contributes in proportion
/// to the part of it outside the interval.
pub fn support_fraction(s: &SpectrumSamples, interval: Interval) -> Result<f64> {
    let e: Vec<f64> = s.coeffs.iter().map(Multivector::norm_sqr).collect();
    let h = s.grid.spacing();
    let total: f64 = trapezoid_weights(e.len(), h).iter().zip(&e).map(|(w, v)| w * v).sum();
    if total == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let mut outside = 0.0;
    for j in 0..e.len() - 1 {
        let (a, b) = (s.grid.node(j), s.grid.node(j + 1));
        let cell = 0.5 * h * (e[j] + e[j + 1]);
        let inside = interval.overlap(a, b) / (b - a);
        outside += cell * (1.0 - inside);
    }
    Ok((outside / total).clamp(0.0, 1.0))
}
