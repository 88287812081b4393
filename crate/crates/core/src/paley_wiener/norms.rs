//! Hardy and Bergman norms as suprema over a finite set of slices.

use serde::{Deserialize, Serialize};

use crate::algebra::{ImaginaryUnit, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::numerics::{lp_norm_of_magnitudes, simpson_weights, UniformGrid};

/// Product quadrature on `[0, U] × [−V, V]` for area integrals over the right
/// half-plane of a slice.
///
/// Rational integrands vary on the scale `1 + u` and `1 + |v|`, so the axes are
/// mapped by `u = e^s − 1` and `v = sinh r` and composite Simpson weights are
/// used in `s` and `r`. The truncation to `U, V` is the only deliberate
/// approximation; for `|f|² ~ |z|⁻⁴` it drops about `1/(8U²)` of the mass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneQuadrature {
    pub u_max: f64,
    pub v_max: f64,
    pub u_nodes: Vec<f64>,
    pub u_weights: Vec<f64>,
    pub v_nodes: Vec<f64>,
    pub v_weights: Vec<f64>,
}

impl PlaneQuadrature {
    pub fn mapped(u_max: f64, v_max: f64, u_count: usize, v_count: usize) -> Result<Self> {
        if !(u_max > 0.0 && v_max > 0.0) {
            return Err(Error::InvalidParameter(format!("truncation U = {u_max}, V = {v_max} must be positive")));
        }
        let sgrid = UniformGrid::new(0.0, u_max.ln_1p(), u_count)?;
        let rgrid = UniformGrid::symmetric(v_max.asinh(), v_count)?;
        let sw = simpson_weights(u_count, sgrid.spacing())?;
        let rw = simpson_weights(v_count, rgrid.spacing())?;
        let (u_nodes, u_weights) = sgrid.nodes().zip(sw).map(|(s, w)| (s.exp_m1(), w * s.exp())).unzip();
        let (v_nodes, v_weights) = rgrid.nodes().zip(rw).map(|(r, w)| (r.sinh(), w * r.cosh())).unzip();
        Ok(Self { u_max, v_max, u_nodes, u_weights, v_nodes, v_weights })
    }

    /// `(∫ m(v)^p dv)^{1/p}` with the `v` rule.
    pub fn line_norm(&self, magnitude: impl Fn(f64) -> f64, p: f64) -> f64 {
        let s: f64 = self.v_nodes.iter().zip(&self.v_weights).map(|(&v, w)| w * magnitude(v).powf(p)).sum();
        s.powf(1.0 / p)
    }

    /// `(∫∫ m(u, v)^p du dv)^{1/p}`.
    pub fn area_norm(&self, magnitude: impl Fn(f64, f64) -> f64, p: f64) -> f64 {
        let mut s = 0.0;
        for (&u, wu) in self.u_nodes.iter().zip(&self.u_weights) {
            let mut row = 0.0;
            for (&v, wv) in self.v_nodes.iter().zip(&self.v_weights) {
                row += wv * magnitude(u, v).powf(p);
            }
            s += wu * row;
        }
        s.powf(1.0 / p)
    }
}

/// Per-slice norms and their supremum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceNormReport {
    pub slice_norms: Vec<f64>,
    pub value: f64,
    /// Largest relative increase of the line norm between consecutive `u`
    /// values (Hardy norms only; zero when non-increasing).
    pub monotonicity_excess: f64,
}

impl SliceNormReport {
    /// `max − min` of the per-slice norms.
    pub fn spread(&self) -> f64 {
        let lo = self.slice_norms.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.slice_norms.iter().copied().fold(0.0, f64::max);
        if self.slice_norms.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::ExponentRange(p))
    }
}

/// `sup_I sup_u (∫ |f(u + Iv)|^p dv)^{1/p}` over `slices` and `u_values`,
/// with the trapezoid rule on `vgrid`.
pub fn hardy_norm<F>(f: F, p: f64, slices: &[ImaginaryUnit], u_values: &[f64], vgrid: &UniformGrid) -> Result<SliceNormReport>
where
    F: Fn(&Paravector) -> Multivector,
{
    check_p(p)?;
    if u_values.iter().any(|u| *u < 0.0) {
        return Err(Error::OutsideDomain("Hardy norm lines need u ≥ 0".into()));
    }
    let mut slice_norms = Vec::with_capacity(slices.len());
    let mut excess = 0.0f64;
    for unit in slices {
        let mut best = 0.0f64;
        let mut previous: Option<f64> = None;
        for &u in u_values {
            let mags: Vec<f64> = vgrid.nodes().map(|v| f(&Paravector::on_slice(u, v, unit)).norm()).collect();
            let norm = lp_norm_of_magnitudes(vgrid, &mags, p)?;
            if let Some(prev) = previous {
                if prev > 0.0 {
                    excess = excess.max((norm - prev) / prev);
                }
            }
            previous = Some(norm);
            best = best.max(norm);
        }
        slice_norms.push(best);
    }
    let value = slice_norms.iter().copied().fold(0.0, f64::max);
    Ok(SliceNormReport { slice_norms, value, monotonicity_excess: excess.max(0.0) })
}

/// `sup_I (∫_0^U ∫_{−V}^{V} |f(u + Iv)|^p dv du)^{1/p}` over `slices`.
pub fn bergman_norm<F>(f: F, p: f64, slices: &[ImaginaryUnit], quad: &PlaneQuadrature) -> Result<SliceNormReport>
where
    F: Fn(&Paravector) -> Multivector,
{
    check_p(p)?;
    let slice_norms: Vec<f64> = slices
        .iter()
        .map(|unit| quad.area_norm(|u, v| f(&Paravector::on_slice(u, v, unit)).norm(), p))
        .collect();
    let value = slice_norms.iter().copied().fold(0.0, f64::max);
    Ok(SliceNormReport { slice_norms, value, monotonicity_excess: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::intrinsic_from_complex;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn slices2() -> Vec<ImaginaryUnit> {
        vec![
            ImaginaryUnit::basis(2, 1).unwrap(),
            ImaginaryUnit::basis(2, 2).unwrap(),
            ImaginaryUnit::new(vec![1.0, 1.0]).unwrap(),
        ]
    }

    #[test]
    fn intrinsic_norms_do_not_depend_on_the_slice() {
        let f = intrinsic_from_complex(|z: Complex64| 1.0 / ((z + 1.0) * (z + 1.0)));
        let vgrid = UniformGrid::symmetric(200.0, 16385).unwrap();
        let r = hardy_norm(&f, 2.0, &slices2(), &[0.0, 0.5, 1.0], &vgrid).unwrap();
        assert!(r.spread() <= 1e-10);
        assert!(r.slice_norms.iter().all(|s| (r.value - s).abs() <= 1e-10));
        assert!(r.monotonicity_excess <= 1e-12);
        // ∫ dv / (1 + v²)² = π/2 at u = 0
        assert!((r.value - (PI / 2.0).sqrt()).abs() < 1e-6);

        let quad = PlaneQuadrature::mapped(50.0, 200.0, 201, 401).unwrap();
        let b = bergman_norm(&f, 2.0, &slices2(), &quad).unwrap();
        assert!(b.spread() <= 1e-10);
    }

    #[test]
    fn zero_function_has_zero_norms() {
        let zero = |_: &Paravector| Multivector::zero(2).unwrap();
        let vgrid = UniformGrid::symmetric(10.0, 65).unwrap();
        assert_eq!(hardy_norm(zero, 1.0, &slices2(), &[0.0, 1.0], &vgrid).unwrap().value, 0.0);
        let quad = PlaneQuadrature::mapped(5.0, 5.0, 33, 33).unwrap();
        assert_eq!(bergman_norm(zero, 2.0, &slices2(), &quad).unwrap().value, 0.0);
    }

    #[test]
    fn mapped_quadrature_integrates_rational_mass() {
        // ∫_0^U ∫_ℝ dv du / ((u+1)² + v²)² = (π/4)(1 − 1/(U+1)²), up to the v tail
        let quad = PlaneQuadrature::mapped(50.0, 1e4, 401, 1201).unwrap();
        let got = quad.area_norm(|u, v| 1.0 / ((u + 1.0).powi(2) + v * v), 2.0).powi(2);
        let exact = PI / 4.0 * (1.0 - 1.0 / 51.0f64.powi(2));
        assert!((got - exact).abs() < 1e-8, "{got} vs {exact}");
    }
}
