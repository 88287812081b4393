//! Hardy-space reconstruction on the right half-space from boundary values
//! `f(Iv)`, by half-line Fourier synthesis and by Poisson convolution.

use serde::{Deserialize, Serialize};

use crate::algebra::{imaginary_unit_of, ImaginaryUnit, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::fourier::{cft_forward, cos_sin_integrals, support_fraction, Interval, LineSamples, SpectrumSamples, INV_SQRT_2PI};
use crate::numerics::{lp_norm, simpson_weights, trapezoid_weights, Tolerances, UniformGrid};
use crate::slice::{ext_eval, SlicePair};

use super::kernels::{hardy_kernel, poisson_kernel};

/// Boundary values `f(Iv)` of a Hardy-space function on one slice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardyBoundaryData {
    pub slice: ImaginaryUnit,
    pub samples: LineSamples,
    pub p: f64,
}

impl HardyBoundaryData {
    pub fn new(slice: ImaginaryUnit, samples: LineSamples, p: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&p) {
            return Err(Error::ExponentRange(p));
        }
        if samples.dim() != slice.dim() {
            return Err(Error::DimensionMismatch { left: samples.dim(), right: slice.dim() });
        }
        let norm = lp_norm(&samples.grid, &samples.values, p)?;
        if !norm.is_finite() {
            return Err(Error::InvalidParameter("boundary samples have no finite L^p norm".into()));
        }
        Ok(Self { slice, samples, p })
    }

    /// Samples `f(u0 + Iv)` on `vgrid`; `u0 = 0` gives boundary data proper,
    /// `u0 = δ > 0` the data of the shifted function `f(· + δ)`.
    pub fn sample(
        f: impl Fn(&Paravector) -> Multivector,
        slice: &ImaginaryUnit,
        u0: f64,
        vgrid: UniformGrid,
        p: f64,
    ) -> Result<Self> {
        let samples = LineSamples::from_fn(vgrid, |v| f(&Paravector::on_slice(u0, v, slice)))?;
        Self::new(slice.clone(), samples, p)
    }

    /// Boundary values on another slice `J` via the representation formula
    /// applied to the mirrored samples at `±v`.
    pub fn extend_to(&self, target: &ImaginaryUnit) -> Result<LineSamples> {
        let grid = self.samples.grid;
        if !grid.is_symmetric() {
            return Err(Error::Grid("slice extension needs a v grid symmetric about zero".into()));
        }
        let count = grid.count();
        let values = (0..count)
            .map(|j| {
                let pair = SlicePair {
                    fplus: self.samples.values[j].clone(),
                    fminus: self.samples.values[count - 1 - j].clone(),
                    unit: self.slice.clone(),
                    u: 0.0,
                    v: grid.node(j),
                };
                ext_eval(&pair, target)
            })
            .collect();
        LineSamples::new(grid, values)
    }
}

/// The nonpositive part of `wgrid` and its Simpson weights.
fn nonpositive_part(wgrid: &UniformGrid) -> Result<(usize, Vec<f64>)> {
    let h = wgrid.spacing();
    let last = ((-wgrid.lo()) / h + 1e-9).floor();
    if wgrid.lo() >= 0.0 || last < 2.0 {
        return Err(Error::Grid("spectral grid needs at least three nonpositive nodes".into()));
    }
    let end = (last as usize).min(wgrid.count() - 1) + 1;
    Ok((end, simpson_weights(end, h)?))
}

fn check_support(spec: &SpectrumSamples, tol: &Tolerances) -> Result<f64> {
    let fraction = if spec.is_zero() { 0.0 } else { support_fraction(spec, Interval::nonpositive())? };
    if fraction > tol.support_tol {
        return Err(Error::NonHardySpectrum { fraction, tol: tol.support_tol });
    }
    Ok(fraction)
}

fn require_interior(x: &Paravector) -> Result<()> {
    if x.x0 > 0.0 {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!("half-line reconstruction needs x0 > 0, got {}", x.x0)))
    }
}

/// `(1/√2π) ∫_{-∞}^0 e^{(u+Jv)w} F(w) dw` over the nonpositive spectrum nodes,
/// with the exponential on the left.
fn half_line_synthesis(spec: &SpectrumSamples, x: &Paravector) -> Result<Multivector> {
    let (end, weights) = nonpositive_part(&spec.grid)?;
    let (u, v) = (x.x0, x.vector_norm());
    let n = spec.slice.dim();
    let mut cos_part = Multivector::zero(n)?;
    let mut sin_part = Multivector::zero(n)?;
    for k in 0..end {
        let w = spec.grid.node(k);
        let e = weights[k] * (u * w).exp();
        let (s, c) = (v * w).sin_cos();
        cos_part.add_scaled(e * c, &spec.coeffs[k]);
        sin_part.add_scaled(e * s, &spec.coeffs[k]);
    }
    Ok((&cos_part + &spec.slice.left_mul(&sin_part)).scale(INV_SQRT_2PI))
}

/// `f(x)` from boundary data on any slice, following the construction
/// literally: check the boundary spectrum lives on `(−∞, 0]`, extend the
/// data to the slice `J = I_x`, transform there, and integrate
/// `(1/√2π) ∫_{-∞}^0 e^{xw} F_J(w) dw`.
pub fn hardy_reconstruct_fourier(
    bd: &HardyBoundaryData,
    target: &Paravector,
    wgrid: &UniformGrid,
    tol: &Tolerances,
) -> Result<Multivector> {
    require_interior(target)?;
    let own = cft_forward(&bd.samples, &bd.slice, wgrid)?;
    check_support(&own, tol)?;
    let j = imaginary_unit_of(target);
    let spec = if j == bd.slice { own } else { cft_forward(&bd.extend_to(&j)?, &j, wgrid)? };
    half_line_synthesis(&spec, target)
}

/// Reusable form of [`hardy_reconstruct_fourier`] for many targets.
///
/// With `α, β` the slice-independent parts of the boundary data
/// (`f(Jv) = α(v) + Jβ(v)` for every `J`), the spectrum on any slice is
/// `F_J = P + J Q` with `P = (C_α + S_β)/√2π`, `Q = (C_β − S_α)/√2π` built from
/// cosine and sine integrals. `P` and `Q` are computed once.
#[derive(Clone, Debug)]
pub struct HardyReconstructor {
    slice: ImaginaryUnit,
    wgrid: UniformGrid,
    p: Vec<Multivector>,
    q: Vec<Multivector>,
    support_fraction: f64,
}

impl HardyReconstructor {
    pub fn new(bd: &HardyBoundaryData, wgrid: &UniformGrid, tol: &Tolerances) -> Result<Self> {
        let grid = bd.samples.grid;
        if !grid.is_symmetric() {
            return Err(Error::Grid("slice extension needs a v grid symmetric about zero".into()));
        }
        let count = grid.count();
        let mut alpha = Vec::with_capacity(count);
        let mut beta = Vec::with_capacity(count);
        for j in 0..count {
            let pair = SlicePair {
                fplus: bd.samples.values[j].clone(),
                fminus: bd.samples.values[count - 1 - j].clone(),
                unit: bd.slice.clone(),
                u: 0.0,
                v: grid.node(j),
            };
            let (a, b) = crate::slice::alpha_beta(&pair);
            alpha.push(a);
            beta.push(b);
        }
        let (ca, sa) = cos_sin_integrals(&LineSamples::new(grid, alpha)?, wgrid)?;
        let (cb, sb) = cos_sin_integrals(&LineSamples::new(grid, beta)?, wgrid)?;
        let p: Vec<Multivector> = ca.iter().zip(&sb).map(|(c, s)| (c + s).scale(INV_SQRT_2PI)).collect();
        let q: Vec<Multivector> = cb.iter().zip(&sa).map(|(c, s)| (c - s).scale(INV_SQRT_2PI)).collect();
        let mut this = Self { slice: bd.slice.clone(), wgrid: *wgrid, p, q, support_fraction: 0.0 };
        this.support_fraction = check_support(&this.spectrum_on(&bd.slice)?, tol)?;
        Ok(this)
    }

    /// Energy fraction of the boundary spectrum on `(0, ∞)`.
    pub fn support_fraction(&self) -> f64 {
        self.support_fraction
    }

    pub fn slice(&self) -> &ImaginaryUnit {
        &self.slice
    }

    /// `F_J = P + J Q` on the full spectral grid.
    pub fn spectrum_on(&self, j: &ImaginaryUnit) -> Result<SpectrumSamples> {
        let coeffs = self.p.iter().zip(&self.q).map(|(p, q)| p + &j.left_mul(q)).collect();
        SpectrumSamples::new(j.clone(), self.wgrid, coeffs)
    }

    /// `f(x)` for `x0 > 0`: with `F_J = P + JQ`,
    /// `e^{(u+Jv)w} F_J = e^{uw}[(cos P − sin Q) + J(sin P + cos Q)]`.
    pub fn eval(&self, x: &Paravector) -> Result<Multivector> {
        require_interior(x)?;
        if x.dim() != self.slice.dim() {
            return Err(Error::DimensionMismatch { left: x.dim(), right: self.slice.dim() });
        }
        let (end, weights) = nonpositive_part(&self.wgrid)?;
        let (u, v) = (x.x0, x.vector_norm());
        let n = x.dim();
        let mut even = Multivector::zero(n)?;
        let mut odd = Multivector::zero(n)?;
        for k in 0..end {
            let w = self.wgrid.node(k);
            let e = weights[k] * (u * w).exp();
            let (s, c) = (v * w).sin_cos();
            even.add_scaled(e * c, &self.p[k]);
            even.add_scaled(-e * s, &self.q[k]);
            odd.add_scaled(e * s, &self.p[k]);
            odd.add_scaled(e * c, &self.q[k]);
        }
        let j = imaginary_unit_of(x);
        Ok((&even + &j.left_mul(&odd)).scale(INV_SQRT_2PI))
    }
}

/// `f(u + Iv) = ∫ 𝒫(u, v − t) f(It) dt` by the trapezoid rule over the
/// boundary samples; the target must lie on the data slice.
pub fn hardy_reconstruct_poisson(bd: &HardyBoundaryData, target: &crate::slice::SliceComplex) -> Result<Multivector> {
    if target.u <= 0.0 {
        return Err(Error::OutsideDomain(format!("Poisson reconstruction needs u > 0, got {}", target.u)));
    }
    let same = target.slice.components().iter().zip(bd.slice.components()).all(|(a, b)| (a - b).abs() <= 1e-12);
    if !same {
        return Err(Error::SliceMismatch("Poisson reconstruction target is not on the data slice".into()));
    }
    let grid = bd.samples.grid;
    let weights = trapezoid_weights(grid.count(), grid.spacing());
    let mut acc = Multivector::zero(bd.slice.dim())?;
    for (k, t) in grid.nodes().enumerate() {
        acc.add_scaled(weights[k] * poisson_kernel(target.u, target.v - t)?, &bd.samples.values[k]);
    }
    Ok(acc)
}

/// `∫ 𝒦(x, Iξ) f(Iξ) dξ` by the trapezoid rule on `grid`, with the kernel on
/// the left of the boundary values.
pub fn hardy_kernel_reproduce(
    x: &Paravector,
    slice: &ImaginaryUnit,
    boundary: impl Fn(f64) -> Multivector,
    grid: &UniformGrid,
) -> Result<Multivector> {
    let weights = trapezoid_weights(grid.count(), grid.spacing());
    let mut acc = Multivector::zero(x.dim())?;
    for (k, xi) in grid.nodes().enumerate() {
        let kernel = hardy_kernel(x, slice, xi)?;
        acc.add_scaled(weights[k], &(&kernel * &boundary(xi)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::para_inv;
    use crate::slice::{intrinsic_from_complex, SliceComplex};
    use num_complex::Complex64;

    fn e(n: usize, i: usize) -> ImaginaryUnit {
        ImaginaryUnit::basis(n, i).unwrap()
    }

    fn rational() -> impl Fn(&Paravector) -> Multivector + Sync {
        intrinsic_from_complex(|z: Complex64| 1.0 / ((z + 1.0) * (z + 1.0)))
    }

    fn inv_square_shifted(x: &Paravector) -> Multivector {
        let mut y = x.clone();
        y.x0 += 1.0;
        let inv = para_inv(&y).unwrap().to_multivector();
        &inv * &inv
    }

    fn rel(a: &Multivector, b: &Multivector) -> f64 {
        a.dist(b) / b.norm()
    }

    fn small_grids() -> (UniformGrid, UniformGrid) {
        (UniformGrid::symmetric(200.0, 16385).unwrap(), UniformGrid::symmetric(40.0, 8193).unwrap())
    }

    #[test]
    fn reconstructs_rational_on_data_and_other_slices() {
        let (vgrid, wgrid) = small_grids();
        let tol = Tolerances::default();
        let bd = HardyBoundaryData::sample(rational(), &e(2, 1), 0.0, vgrid, 2.0).unwrap();
        let same = Paravector::on_slice(1.0, 0.5, &e(2, 1));
        let got = hardy_reconstruct_fourier(&bd, &same, &wgrid, &tol).unwrap();
        assert!(rel(&got, &inv_square_shifted(&same)) <= 1e-6, "{:e}", rel(&got, &inv_square_shifted(&same)));

        let other = Paravector::on_slice(1.0, 0.5, &ImaginaryUnit::new(vec![1.0, 1.0]).unwrap());
        let got = hardy_reconstruct_fourier(&bd, &other, &wgrid, &tol).unwrap();
        assert!(rel(&got, &inv_square_shifted(&other)) <= 1e-6, "{:e}", rel(&got, &inv_square_shifted(&other)));

        let cached = HardyReconstructor::new(&bd, &wgrid, &tol).unwrap();
        assert!(cached.eval(&other).unwrap().dist(&got) < 1e-12);
        assert!(cached.support_fraction() <= 1e-6);
    }

    #[test]
    fn zero_data_reconstructs_zero() {
        let (vgrid, wgrid) = small_grids();
        let bd = HardyBoundaryData::sample(|_| Multivector::zero(3).unwrap(), &e(3, 2), 0.0, vgrid, 2.0).unwrap();
        let x = Paravector::on_slice(0.5, 1.0, &e(3, 1));
        assert!(hardy_reconstruct_fourier(&bd, &x, &wgrid, &Tolerances::default()).unwrap().is_zero());
        let z = SliceComplex::new(0.5, 1.0, e(3, 2));
        assert!(hardy_reconstruct_poisson(&bd, &z).unwrap().is_zero());
    }

    #[test]
    fn rejects_boundary_targets_and_two_sided_spectra() {
        let (vgrid, wgrid) = small_grids();
        let tol = Tolerances::default();
        let bd = HardyBoundaryData::sample(rational(), &e(2, 1), 0.0, vgrid, 2.0).unwrap();
        let boundary = Paravector::on_slice(0.0, 0.5, &e(2, 1));
        assert!(matches!(hardy_reconstruct_fourier(&bd, &boundary, &wgrid, &tol), Err(Error::OutsideDomain(_))));

        // 1/(1+v²) on the boundary is the trace of 1/(1−z²), not a Hardy function
        let symmetric = HardyBoundaryData::new(
            e(2, 1),
            LineSamples::from_fn(vgrid, |v| Multivector::scalar(2, 1.0 / (1.0 + v * v)).unwrap()).unwrap(),
            2.0,
        )
        .unwrap();
        let x = Paravector::on_slice(1.0, 0.0, &e(2, 1));
        assert!(matches!(hardy_reconstruct_fourier(&symmetric, &x, &wgrid, &tol), Err(Error::NonHardySpectrum { .. })));
        assert!(matches!(HardyReconstructor::new(&symmetric, &wgrid, &tol), Err(Error::NonHardySpectrum { .. })));
    }

    #[test]
    fn poisson_matches_closed_form() {
        let (vgrid, _) = small_grids();
        let bd = HardyBoundaryData::sample(rational(), &e(3, 2), 0.0, vgrid, 2.0).unwrap();
        let z = SliceComplex::new(1.0, 0.5, e(3, 2));
        let got = hardy_reconstruct_poisson(&bd, &z).unwrap();
        assert!(rel(&got, &inv_square_shifted(&z.to_paravector())) <= 1e-5);
        let off = SliceComplex::new(1.0, 0.5, e(3, 1));
        assert!(matches!(hardy_reconstruct_poisson(&bd, &off), Err(Error::SliceMismatch(_))));
    }

    #[test]
    fn kernel_reproduces_rational() {
        let i = e(3, 1);
        let f = rational();
        let boundary = |xi: f64| f(&Paravector::on_slice(0.0, xi, &i));
        let grid = UniformGrid::symmetric(2000.0, 80001).unwrap();
        let j = ImaginaryUnit::new(vec![0.5, -1.0, 0.2]).unwrap();
        for x in [Paravector::on_slice(0.8, 1.2, &i), Paravector::on_slice(0.5, -0.7, &j)] {
            let got = hardy_kernel_reproduce(&x, &i, boundary, &grid).unwrap();
            assert!(rel(&got, &inv_square_shifted(&x)) <= 1e-5, "{:e}", rel(&got, &inv_square_shifted(&x)));
        }
    }

    #[test]
    fn p_outside_range_is_rejected() {
        let vgrid = UniformGrid::symmetric(1.0, 9).unwrap();
        let samples = LineSamples::from_fn(vgrid, |_| Multivector::zero(2).unwrap()).unwrap();
        assert_eq!(HardyBoundaryData::new(e(2, 1), samples, 2.5), Err(Error::ExponentRange(2.5)));
    }
}
