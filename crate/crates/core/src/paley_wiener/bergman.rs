//! Bergman-space synthesis from a half-line density, density extraction from
//! shifted boundary data, and the norm and pointwise inequalities.

use serde::{Deserialize, Serialize};

use crate::algebra::{imaginary_unit_of, ImaginaryUnit, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::fourier::{cft_forward, support_fraction, Interval, INV_SQRT_2PI};
use crate::numerics::{simpson_weights, Tolerances, UniformGrid};

use super::hardy::HardyBoundaryData;
use super::norms::PlaneQuadrature;

/// A density `g_I` on a truncated half-line `[−W, 0]` for the slice `I`,
/// with `f(u + Iv) = (1/√2π) ∫_{-∞}^0 e^{(u+Iv)w} g_I(w) dw`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BergmanDensity {
    pub slice: ImaginaryUnit,
    pub grid: UniformGrid,
    pub values: Vec<Multivector>,
    pub p: f64,
    /// Conjugate exponent `p/(p−1)`, infinite for `p = 1`.
    pub q: f64,
}

impl BergmanDensity {
    pub fn new(slice: ImaginaryUnit, grid: UniformGrid, values: Vec<Multivector>, p: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&p) {
            return Err(Error::ExponentRange(p));
        }
        if grid.hi() > 1e-12 {
            return Err(Error::Grid(format!("density grid must end at or below 0, got {}", grid.hi())));
        }
        if values.len() != grid.count() {
            return Err(Error::Grid(format!("{} density values for {} nodes", values.len(), grid.count())));
        }
        if let Some(bad) = values.iter().find(|m| m.dim() != slice.dim()) {
            return Err(Error::DimensionMismatch { left: slice.dim(), right: bad.dim() });
        }
        let q = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
        Ok(Self { slice, grid, values, p, q })
    }

    pub fn from_fn(slice: ImaginaryUnit, grid: UniformGrid, p: f64, g: impl Fn(f64) -> Multivector) -> Result<Self> {
        let values = grid.nodes().map(g).collect();
        Self::new(slice, grid, values, p)
    }

    /// `(∫ (−pw)^{−q/p} |g|^q dw)^{1/q}` for `p > 1`, and `sup |g(w)|/(−w)`
    /// over `w < 0` for `p = 1`. A node at `w = 0` contributes only when
    /// `g(0) ≠ 0`, in which case the weighted norm is infinite.
    pub fn weighted_norm(&self) -> Result<f64> {
        if self.q.is_infinite() {
            return Ok(self
                .grid
                .nodes()
                .zip(&self.values)
                .filter(|(w, _)| *w < 0.0)
                .map(|(w, g)| g.norm() / -w)
                .fold(0.0, f64::max));
        }
        let integrand = self.weighted_samples(|w, g| (-self.p * w).powf(-self.q / self.p) * g.powf(self.q))?;
        let weights = simpson_weights(self.grid.count(), self.grid.spacing())?;
        let s: f64 = weights.iter().zip(&integrand).map(|(a, b)| a * b).sum();
        Ok(s.powf(1.0 / self.q))
    }

    /// `½ ∫ |g(w)|² / (−w) dw`.
    pub fn converse_integral(&self) -> Result<f64> {
        let integrand = self.weighted_samples(|w, g| g * g / -w)?;
        let weights = simpson_weights(self.grid.count(), self.grid.spacing())?;
        Ok(0.5 * weights.iter().zip(&integrand).map(|(a, b)| a * b).sum::<f64>())
    }

    fn weighted_samples(&self, f: impl Fn(f64, f64) -> f64) -> Result<Vec<f64>> {
        self.grid
            .nodes()
            .zip(&self.values)
            .map(|(w, g)| {
                let m = g.norm();
                if w < 0.0 {
                    Ok(f(w, m))
                } else if m == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(f64::INFINITY)
                }
            })
            .collect()
    }
}

/// `f(x) = (1/√2π) ∫_{-∞}^0 e^{xw} g(w) dw` for `x` on the density's slice
/// (or on the real axis), by Simpson quadrature over the density grid.
pub fn bergman_synthesize(d: &BergmanDensity, target: &Paravector) -> Result<Multivector> {
    if target.x0 <= 0.0 {
        return Err(Error::OutsideDomain(format!("Bergman synthesis needs x0 > 0, got {}", target.x0)));
    }
    let v_abs = target.vector_norm();
    let v = if v_abs == 0.0 {
        0.0
    } else {
        let j = imaginary_unit_of(target);
        let along = j.dot(&d.slice);
        if (along.abs() - 1.0).abs() > 1e-12 {
            return Err(Error::SliceMismatch("target is not on the density's slice".into()));
        }
        v_abs * along.signum()
    };
    let weights = simpson_weights(d.grid.count(), d.grid.spacing())?;
    let n = d.slice.dim();
    let mut cos_part = Multivector::zero(n)?;
    let mut sin_part = Multivector::zero(n)?;
    for (k, w) in d.grid.nodes().enumerate() {
        let e = weights[k] * (target.x0 * w).exp();
        let (s, c) = (v * w).sin_cos();
        cos_part.add_scaled(e * c, &d.values[k]);
        sin_part.add_scaled(e * s, &d.values[k]);
    }
    Ok((&cos_part + &d.slice.left_mul(&sin_part)).scale(INV_SQRT_2PI))
}

/// `g_I(w) = e^{−δw} F_I(f_δ|_{Iℝ})(w)` on the nonpositive nodes of `wgrid`,
/// from samples of `f_δ = f(· + δ)` on the slice.
pub fn bergman_density_extract(
    shifted: &HardyBoundaryData,
    delta: f64,
    wgrid: &UniformGrid,
    tol: &Tolerances,
) -> Result<BergmanDensity> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!("shift δ must be positive, got {delta}")));
    }
    let spec = cft_forward(&shifted.samples, &shifted.slice, wgrid)?;
    if !spec.is_zero() {
        let fraction = support_fraction(&spec, Interval::nonpositive())?;
        if fraction > tol.support_tol {
            return Err(Error::NonHardySpectrum { fraction, tol: tol.support_tol });
        }
    }
    let h = wgrid.spacing();
    let last = ((-wgrid.lo()) / h + 1e-9).floor();
    if wgrid.lo() >= 0.0 || last < 2.0 {
        return Err(Error::Grid("spectral grid needs at least three nonpositive nodes".into()));
    }
    let end = (last as usize).min(wgrid.count() - 1) + 1;
    let grid = UniformGrid::new(wgrid.lo(), wgrid.node(end - 1), end)?;
    let values = (0..end).map(|k| spec.coeffs[k].scale((-delta * wgrid.node(k)).exp())).collect();
    BergmanDensity::new(shifted.slice.clone(), grid, values, shifted.p)
}

/// `max_{w ∈ window} |g_a(w) − g_b(w)| / max_{w ∈ window} |g_a(w)|` for
/// densities on the same grid.
pub fn density_discrepancy(a: &BergmanDensity, b: &BergmanDensity, window: Interval) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::Grid("densities are sampled on different grids".into()));
    }
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    for (k, w) in a.grid.nodes().enumerate() {
        if w >= window.lo && w <= window.hi {
            diff = diff.max(a.values[k].dist(&b.values[k]));
            scale = scale.max(a.values[k].norm());
        }
    }
    if scale == 0.0 {
        return Ok(if diff == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(diff / scale)
}

/// Margins of the forward and converse norm inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BergmanMargins {
    /// `‖f‖_{B^p}` on the truncated quadrature.
    pub norm: f64,
    /// `‖f‖_{B^p} − ‖g‖_weighted`; the forward inequality predicts `≥ 0`.
    pub forward: f64,
    /// `½∫|g|²/(−w) − ‖f‖²_{B²}` for `p = 2`; the converse predicts `≥ 0`.
    pub converse: Option<f64>,
}

/// Forward margin for `d.p` and, when `p = 2`, the converse margin.
/// `‖f‖_{B^p}` is the supremum over `slices` of the area norms on `quad`.
pub fn bergman_norm_margins<F>(
    f: F,
    d: &BergmanDensity,
    slices: &[ImaginaryUnit],
    quad: &PlaneQuadrature,
) -> Result<BergmanMargins>
where
    F: Fn(&Paravector) -> Multivector,
{
    let norm = super::norms::bergman_norm(&f, d.p, slices, quad)?.value;
    let forward = norm - d.weighted_norm()?;
    let converse = if d.p == 2.0 { Some(d.converse_integral()? - norm * norm) } else { None };
    Ok(BergmanMargins { norm, forward, converse })
}

/// Exponents `(a, b)` in `|f(u+Iv)| ≤ C u^{−a} ‖f‖` and `‖f_u|_{Iℝ}‖_p ≤ C u^{−b} ‖f‖`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointwiseExponents {
    /// `a = 4 − 2/p`, `b = 4 − 3/p`.
    Stated,
    /// `a = 2/p`, `b = 1/p`, the scaling-consistent exponents.
    Sharp,
}

impl PointwiseExponents {
    pub fn values(self, p: f64) -> (f64, f64) {
        match self {
            Self::Stated => (4.0 - 2.0 / p, 4.0 - 3.0 / p),
            Self::Sharp => (2.0 / p, 1.0 / p),
        }
    }
}

/// Smallest constants making both pointwise inequalities hold over the probes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointwiseFit {
    pub point_constant: f64,
    pub line_constant: f64,
}

impl PointwiseFit {
    pub fn constant(&self) -> f64 {
        self.point_constant.max(self.line_constant)
    }
}

/// Fits `C` as the supremum over probes of `|f(x)| u^a / ‖f‖` and
/// `‖f_u|_{Iℝ}‖_p u^b / ‖f‖`, the line norm taken with the `v` rule of `quad`.
pub fn bergman_pointwise_margins<F>(
    f: F,
    p: f64,
    norm: f64,
    probes: &[Paravector],
    quad: &PlaneQuadrature,
    exponents: PointwiseExponents,
) -> Result<PointwiseFit>
where
    F: Fn(&Paravector) -> Multivector,
{
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::ExponentRange(p));
    }
    if let Some(x) = probes.iter().find(|x| x.x0 <= 0.0) {
        return Err(Error::OutsideDomain(format!("pointwise probe with x0 = {}", x.x0)));
    }
    let (a, b) = exponents.values(p);
    let ratio = |value: f64| {
        if value == 0.0 {
            0.0
        } else if norm == 0.0 {
            f64::INFINITY
        } else {
            value / norm
        }
    };
    let mut fit = PointwiseFit { point_constant: 0.0, line_constant: 0.0 };
    for x in probes {
        let u = x.x0;
        fit.point_constant = fit.point_constant.max(ratio(f(x).norm()) * u.powf(a));
        let unit = imaginary_unit_of(x);
        let line = quad.line_norm(|v| f(&Paravector::on_slice(u, v, &unit)).norm(), p);
        fit.line_constant = fit.line_constant.max(ratio(line) * u.powf(b));
    }
    Ok(fit)
}
