//! Slice structure of left slice monogenic functions.
//!
//! On each slice `L_I = ℝ + Iℝ` a function is determined by two values at
//! `u ± Iv`: the pair gives `α = ½[f(u−Iv) + f(u+Iv)]` and
//! `β = ½ I [f(u−Iv) − f(u+Iv)]`, and then `f(u + Kv) = α + Kβ` on any other
//! slice `K`. This module evaluates that extension, splits slice restrictions
//! into holomorphic components along a frame, and checks the Cauchy–Riemann
//! system for `α, β` on sampled grids.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{imaginary_unit_of, BladeIndex, ImaginaryUnit, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::frame::{BasisFrame, FrameSolver};
use crate::numerics::UniformGrid;

/// Minimum node count of a sampled grid axis.
pub const MIN_SAMPLES: usize = 8;

/// A slice point `u + I v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceComplex {
    pub u: f64,
    pub v: f64,
    pub slice: ImaginaryUnit,
}

impl SliceComplex {
    pub fn new(u: f64, v: f64, slice: ImaginaryUnit) -> Self {
        Self { u, v, slice }
    }

    /// `u − I v` on the same slice.
    pub fn conj(&self) -> Self {
        Self { u: self.u, v: -self.v, slice: self.slice.clone() }
    }

    pub fn to_paravector(&self) -> Paravector {
        Paravector::on_slice(self.u, self.v, &self.slice)
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }
}

/// Values of a function at `u + Jv` and `u − Jv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlicePair {
    pub fplus: Multivector,
    pub fminus: Multivector,
    pub unit: ImaginaryUnit,
    pub u: f64,
    pub v: f64,
}

impl SlicePair {
    /// Samples `f` at `u ± Jv`.
    pub fn sample(f: impl Fn(&Paravector) -> Multivector, unit: &ImaginaryUnit, u: f64, v: f64) -> Self {
        Self {
            fplus: f(&Paravector::on_slice(u, v, unit)),
            fminus: f(&Paravector::on_slice(u, -v, unit)),
            unit: unit.clone(),
            u,
            v,
        }
    }
}

/// `α = ½(f₋ + f₊)`, `β = ½ J (f₋ − f₊)`.
pub fn alpha_beta(p: &SlicePair) -> (Multivector, Multivector) {
    let alpha = (&p.fminus + &p.fplus).scale(0.5);
    let beta = p.unit.left_mul(&(&p.fminus - &p.fplus)).scale(0.5);
    (alpha, beta)
}

/// The slice extension `α + K β` at `u + K v`; returns `f₊` unchanged when
/// `K` is the pair's own unit.
pub fn ext_eval(p: &SlicePair, target: &ImaginaryUnit) -> Multivector {
    if target == &p.unit {
        return p.fplus.clone();
    }
    let (alpha, beta) = alpha_beta(p);
    &alpha + &target.left_mul(&beta)
}

/// Checks that `x` sits at `u ± |v|` on some slice and returns the unit `K`
/// with `x = u + K v`.
fn target_unit_for(p: &SlicePair, x: &Paravector) -> Result<ImaginaryUnit> {
    let xv = x.vector_norm();
    if (x.x0 - p.u).abs() > 1e-10 || (xv - p.v.abs()).abs() > 1e-10 {
        return Err(Error::PointSliceMismatch {
            point: format!("x0 = {}, |x̲| = {xv}", x.x0),
            detail: format!("pair sampled at u = {}, v = {}", p.u, p.v),
        });
    }
    let ix = imaginary_unit_of(x);
    Ok(if p.v < 0.0 { ix.negated() } else { ix })
}

/// Representation formula: `f(x)` from the pair on another slice.
pub fn representation_eval(p: &SlicePair, x: &Paravector) -> Result<Multivector> {
    let k = target_unit_for(p, x)?;
    Ok(ext_eval(p, &k))
}

/// Both closed forms of the representation formula, computed independently:
/// `(1 − KJ)/2 f₊ + (1 + KJ)/2 f₋` and `½[f₋ + f₊] + KJ/2 [f₋ − f₊]`.
pub fn representation_forms(p: &SlicePair, x: &Paravector) -> Result<(Multivector, Multivector)> {
    let k = target_unit_for(p, x)?;
    let n = p.fplus.dim();
    let kj = &k.to_multivector() * &p.unit.to_multivector();
    let one = Multivector::scalar(n, 1.0)?;
    let first = &(&(&one - &kj).scale(0.5) * &p.fplus) + &(&(&one + &kj).scale(0.5) * &p.fminus);
    let second = &(&p.fminus + &p.fplus).scale(0.5) + &(&kj.scale(0.5) * &(&p.fminus - &p.fplus));
    Ok((first, second))
}

/// Multivector samples of a function restricted to one slice.
///
/// With `ugrid` absent, `values[j]` is `f(u0 + I v_j)` for the fixed real
/// part recorded in `u0`. With `ugrid` present, values are row-major in
/// `(u, v)`: `values[i * vgrid.count() + j] = f(u_i + I v_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledSliceFunction {
    pub slice: ImaginaryUnit,
    pub vgrid: UniformGrid,
    pub ugrid: Option<UniformGrid>,
    pub u0: f64,
    pub values: Vec<Multivector>,
}

impl SampledSliceFunction {
    /// Samples along `u0 + I v`.
    pub fn sample_line(
        f: impl Fn(&Paravector) -> Multivector,
        slice: &ImaginaryUnit,
        u0: f64,
        vgrid: UniformGrid,
    ) -> Result<Self> {
        let values = vgrid.nodes().map(|v| f(&Paravector::on_slice(u0, v, slice))).collect();
        Self::new(slice.clone(), vgrid, None, u0, values)
    }

    /// Samples on the `u × v` grid.
    pub fn sample_plane(
        f: impl Fn(&Paravector) -> Multivector,
        slice: &ImaginaryUnit,
        ugrid: UniformGrid,
        vgrid: UniformGrid,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(ugrid.count() * vgrid.count());
        for u in ugrid.nodes() {
            for v in vgrid.nodes() {
                values.push(f(&Paravector::on_slice(u, v, slice)));
            }
        }
        Self::new(slice.clone(), vgrid, Some(ugrid), ugrid.lo(), values)
    }

    pub fn new(
        slice: ImaginaryUnit,
        vgrid: UniformGrid,
        ugrid: Option<UniformGrid>,
        u0: f64,
        values: Vec<Multivector>,
    ) -> Result<Self> {
        if vgrid.count() < MIN_SAMPLES {
            return Err(Error::TooFewNodes { need: MIN_SAMPLES, got: vgrid.count() });
        }
        let expected = vgrid.count() * ugrid.map_or(1, |g| g.count());
        if values.len() != expected {
            return Err(Error::Grid(format!("{} values for {expected} nodes", values.len())));
        }
        if let Some(bad) = values.iter().find(|m| m.dim() != slice.dim()) {
            return Err(Error::DimensionMismatch { left: slice.dim(), right: bad.dim() });
        }
        Ok(Self { slice, vgrid, ugrid, u0, values })
    }

    fn rows(&self) -> usize {
        self.ugrid.map_or(1, |g| g.count())
    }
}

fn same_unit(a: &ImaginaryUnit, b: &ImaginaryUnit) -> bool {
    a.components().iter().zip(b.components()).all(|(x, y)| (x - y).abs() <= 1e-12)
}

/// One holomorphic component `F_{A'}` of the splitting `f_I = Σ F_{A'} I_{A'}`,
/// stored as complex numbers `a + i b ≅ a + I₁ b`.
#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphicComponent {
    /// `A' ⊆ {2, …, n}`.
    pub subset: BladeIndex,
    pub values: Vec<Complex64>,
}

/// Splits every sample as `m = Σ_{A'} (a_{A'} + I₁ b_{A'}) I_{A'}`.
///
/// Returns the `2^{n−1}` components ordered by the bitmask of `A'`.
pub fn split_holomorphic(f: &SampledSliceFunction, frame: &BasisFrame) -> Result<Vec<HolomorphicComponent>> {
    if !same_unit(&f.slice, frame.unit(1)) {
        return Err(Error::SliceMismatch("sampled slice differs from the frame's first unit".into()));
    }
    let solver = FrameSolver::new(frame)?;
    let subsets = primed_subsets(frame.dim());
    let mut comps: Vec<HolomorphicComponent> = subsets
        .iter()
        .map(|&s| HolomorphicComponent { subset: s, values: Vec::with_capacity(f.values.len()) })
        .collect();
    for m in &f.values {
        let c = solver.coords(m)?;
        for comp in comps.iter_mut() {
            let a = c[comp.subset.0 as usize];
            // I₁ I_{A'} = I_{{1} ∪ A'} since 1 precedes every index of A'
            let b = c[(comp.subset.0 | 1) as usize];
            comp.values.push(Complex64::new(a, b));
        }
    }
    Ok(comps)
}

/// Inverse of [`split_holomorphic`].
pub fn recompose_split(components: &[HolomorphicComponent], frame: &BasisFrame) -> Result<Vec<Multivector>> {
    let solver = FrameSolver::new(frame)?;
    let nodes = components.first().map_or(0, |c| c.values.len());
    let dim = 1usize << frame.dim();
    let mut out = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let mut coords = vec![0.0; dim];
        for comp in components {
            let z = comp.values[k];
            coords[comp.subset.0 as usize] += z.re;
            coords[(comp.subset.0 | 1) as usize] += z.im;
        }
        out.push(solver.recompose(&coords));
    }
    Ok(out)
}

/// Subsets `A' ⊆ {2, …, n}` as blade bitmasks, in increasing mask order.
pub fn primed_subsets(n: usize) -> Vec<BladeIndex> {
    (0u32..(1 << n)).filter(|m| m & 1 == 0).map(BladeIndex).collect()
}

/// One intrinsic component `h_A` of `f_I = Σ_A h_A I_A`, with
/// `h_A(u + Iv) = Re + I·Im` stored as a complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicComponent {
    pub blade: BladeIndex,
    pub values: Vec<Complex64>,
}

/// Intrinsic decomposition from samples at `u + Iv` (`fplus`) and `u − Iv`
/// (`fminus`) on matching grids: `α = Σ Re h_A I_A`, `β = Σ Im h_A I_A`.
pub fn intrinsic_decompose(
    fplus: &SampledSliceFunction,
    fminus: &SampledSliceFunction,
    frame: &BasisFrame,
) -> Result<Vec<IntrinsicComponent>> {
    if fplus.vgrid != fminus.vgrid || fplus.ugrid != fminus.ugrid || fplus.values.len() != fminus.values.len() {
        return Err(Error::Grid("f(u+Iv) and f(u-Iv) samples are on different grids".into()));
    }
    if !same_unit(&fplus.slice, frame.unit(1)) || !same_unit(&fminus.slice, frame.unit(1)) {
        return Err(Error::SliceMismatch("sampled slice differs from the frame's first unit".into()));
    }
    let solver = FrameSolver::new(frame)?;
    let dim = 1usize << frame.dim();
    let mut comps: Vec<IntrinsicComponent> = (0..dim)
        .map(|a| IntrinsicComponent { blade: BladeIndex(a as u32), values: Vec::with_capacity(fplus.values.len()) })
        .collect();
    let unit = &fplus.slice;
    for (fp, fm) in fplus.values.iter().zip(&fminus.values) {
        let pair = SlicePair { fplus: fp.clone(), fminus: fm.clone(), unit: unit.clone(), u: 0.0, v: 0.0 };
        let (alpha, beta) = alpha_beta(&pair);
        let ca = solver.coords(&alpha)?;
        let cb = solver.coords(&beta)?;
        for (comp, (re, im)) in comps.iter_mut().zip(ca.into_iter().zip(cb)) {
            comp.values.push(Complex64::new(re, im));
        }
    }
    Ok(comps)
}

/// `f(u + Iv) = Σ_A (Re h_A + I Im h_A) I_A` at every node.
pub fn intrinsic_recompose(components: &[IntrinsicComponent], frame: &BasisFrame) -> Result<Vec<Multivector>> {
    let solver = FrameSolver::new(frame)?;
    let unit = frame.unit(1);
    let nodes = components.first().map_or(0, |c| c.values.len());
    let mut out = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let re: Vec<f64> = components.iter().map(|c| c.values[k].re).collect();
        let im: Vec<f64> = components.iter().map(|c| c.values[k].im).collect();
        let alpha = solver.recompose(&re);
        let beta = solver.recompose(&im);
        out.push(&alpha + &unit.left_mul(&beta));
    }
    Ok(out)
}

/// Max-norm residuals of `∂_u α − ∂_v β = 0` and `∂_v α + ∂_u β = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrResidual {
    pub r1: f64,
    pub r2: f64,
}

/// Central second-order differences of `α, β` over interior nodes.
///
/// `α` and `β` are built from the mirrored samples at `±v`, so the grid's
/// `v` axis must be symmetric about zero; the even/odd symmetry of `α, β`
/// then holds by construction.
pub fn cr_residual(f: &SampledSliceFunction) -> Result<CrResidual> {
    let ugrid = f.ugrid.ok_or_else(|| Error::Grid("Cauchy-Riemann residual needs a u x v grid".into()))?;
    let (nu, nv) = (ugrid.count(), f.vgrid.count());
    if nu < 3 || nv < 3 {
        return Err(Error::TooFewNodes { need: 3, got: nu.min(nv) });
    }
    if !f.vgrid.is_symmetric() {
        return Err(Error::Grid("v grid must be symmetric about zero".into()));
    }
    let (hu, hv) = (ugrid.spacing(), f.vgrid.spacing());
    let at = |i: usize, j: usize| &f.values[i * nv + j];
    let mut alpha = Vec::with_capacity(f.values.len());
    let mut beta = Vec::with_capacity(f.values.len());
    for i in 0..f.rows() {
        for j in 0..nv {
            let pair = SlicePair {
                fplus: at(i, j).clone(),
                fminus: at(i, nv - 1 - j).clone(),
                unit: f.slice.clone(),
                u: ugrid.node(i),
                v: f.vgrid.node(j),
            };
            let (a, b) = alpha_beta(&pair);
            alpha.push(a);
            beta.push(b);
        }
    }
    let idx = |i: usize, j: usize| i * nv + j;
    let (mut r1, mut r2) = (0.0f64, 0.0f64);
    for i in 1..nu - 1 {
        for j in 1..nv - 1 {
            let du_a = (&alpha[idx(i + 1, j)] - &alpha[idx(i - 1, j)]).scale(0.5 / hu);
            let dv_a = (&alpha[idx(i, j + 1)] - &alpha[idx(i, j - 1)]).scale(0.5 / hv);
            let du_b = (&beta[idx(i + 1, j)] - &beta[idx(i - 1, j)]).scale(0.5 / hu);
            let dv_b = (&beta[idx(i, j + 1)] - &beta[idx(i, j - 1)]).scale(0.5 / hv);
            r1 = r1.max((&du_a - &dv_b).norm());
            r2 = r2.max((&dv_a + &du_b).norm());
        }
    }
    Ok(CrResidual { r1, r2 })
}

/// Intrinsic function from a complex-analytic `g` with `g(z̄) = conj g(z)`:
/// `f(u + Iv) = Re g(u+iv) + I Im g(u+iv)` on every slice.
pub fn intrinsic_from_complex<G>(g: G) -> impl Fn(&Paravector) -> Multivector + Sync
where
    G: Fn(Complex64) -> Complex64 + Sync,
{
    move |x: &Paravector| {
        let v = x.vector_norm();
        let unit = imaginary_unit_of(x);
        Multivector::from_slice_complex(g(Complex64::new(x.x0, v)), &unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::complete_basis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn e(n: usize, i: usize) -> ImaginaryUnit {
        ImaginaryUnit::basis(n, i).unwrap()
    }

    fn random_mv(rng: &mut ChaCha8Rng, n: usize) -> Multivector {
        Multivector::from_coeffs(n, (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn alpha_beta_even_pair() {
        let m = Multivector::from_coeffs(2, vec![1.0, 2.0, -3.0, 0.5]).unwrap();
        let p = SlicePair { fplus: m.clone(), fminus: m.clone(), unit: e(2, 1), u: 0.3, v: 0.7 };
        let (a, b) = alpha_beta(&p);
        assert_eq!(a, m);
        assert!(b.is_zero());
    }

    #[test]
    fn alpha_beta_of_exponential() {
        let (u, v, w) = (0.4, 1.3, -0.8);
        let unit = e(3, 1);
        let f = intrinsic_from_complex(move |z: Complex64| (z * w).exp());
        let p = SlicePair::sample(&f, &unit, u, v);
        let (a, b) = alpha_beta(&p);
        let scale = (u * w as f64).exp();
        assert!((a.scalar_part() - scale * (v * w).cos()).abs() < 1e-15);
        assert!((b.scalar_part() - scale * (v * w).sin()).abs() < 1e-15);
        assert!(a.coeffs()[1..].iter().chain(&b.coeffs()[1..]).all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn alpha_beta_are_slice_independent_for_general_f() {
        // f = ext of g e2 + h e13 from slice e1; sample it on two other slices
        let n = 3;
        let base = e(n, 1);
        let g = intrinsic_from_complex(|z: Complex64| 1.0 / (z + 2.0));
        let h = intrinsic_from_complex(|z: Complex64| (z * 0.5).exp());
        let e2 = Multivector::generator(n, 2).unwrap();
        let e13 = Multivector::blade(n, BladeIndex::from_indices(&[1, 3]), 1.0).unwrap();
        let f = move |x: &Paravector| &(&g(x) * &e2) + &(&h(x) * &e13);
        let (u, v) = (0.6, 0.9);
        let p0 = SlicePair::sample(&f, &base, u, v);
        for k in [ImaginaryUnit::new(vec![0.2, 1.0, -0.4]).unwrap(), ImaginaryUnit::new(vec![-1.0, 0.3, 0.3]).unwrap()] {
            let pk = SlicePair {
                fplus: ext_eval(&p0, &k),
                fminus: ext_eval(&p0, &k.negated()),
                unit: k.clone(),
                u,
                v,
            };
            let (a0, b0) = alpha_beta(&p0);
            let (ak, bk) = alpha_beta(&pk);
            assert!(a0.max_abs_diff(&ak) < 1e-12 && b0.max_abs_diff(&bk) < 1e-12);
        }
    }

    #[test]
    fn ext_restricts_bit_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(2..5);
            let unit = ImaginaryUnit::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            let p = SlicePair { fplus: random_mv(&mut rng, n), fminus: random_mv(&mut rng, n), unit: unit.clone(), u: 0.0, v: 1.0 };
            assert_eq!(ext_eval(&p, &unit), p.fplus);
        }
    }

    #[test]
    fn ext_of_exponential_on_other_slices() {
        let w = -1.1;
        let f = intrinsic_from_complex(move |z: Complex64| (z * w).exp());
        let p = SlicePair::sample(&f, &e(3, 2), 0.5, 0.8);
        let k = ImaginaryUnit::new(vec![1.0, -2.0, 0.5]).unwrap();
        let got = ext_eval(&p, &k);
        let exact = f(&Paravector::on_slice(0.5, 0.8, &k));
        assert!(got.max_abs_diff(&exact) < 1e-15);
    }

    #[test]
    fn ext_of_rational_matches_paravector_inverse() {
        // f(z) = 1/(z+1)² from slice e1, evaluated at 1 + K with K = (e1+e2)/√2
        let n = 2;
        let f = intrinsic_from_complex(|z: Complex64| 1.0 / ((z + 1.0) * (z + 1.0)));
        let p = SlicePair::sample(&f, &e(n, 1), 1.0, 1.0);
        let k = ImaginaryUnit::new(vec![1.0, 1.0]).unwrap();
        let got = ext_eval(&p, &k);
        let shifted = Paravector::new(2.0, vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let inv = crate::algebra::para_inv(&shifted).unwrap().to_multivector();
        let exact = &inv * &inv;
        assert!(got.max_abs_diff(&exact) < 1e-15);
    }

    #[test]
    fn conjugation_commutes_with_ext_for_intrinsic() {
        let f = intrinsic_from_complex(|z: Complex64| z * z - z * 3.0 + 1.0 / (z + 4.0));
        let p = SlicePair::sample(&f, &e(3, 1), 0.7, 1.4);
        let k = ImaginaryUnit::new(vec![0.3, 0.4, -1.0]).unwrap();
        let at_k = ext_eval(&p, &k);
        let at_minus_k = ext_eval(&p, &k.negated());
        assert!(at_minus_k.max_abs_diff(&at_k.conj()) < 1e-12);
    }

    #[test]
    fn representation_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let n = rng.gen_range(2..5);
            let unit = ImaginaryUnit::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            let (u, v) = (rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
            let p = SlicePair { fplus: random_mv(&mut rng, n), fminus: random_mv(&mut rng, n), unit, u, v };
            let k = ImaginaryUnit::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            let x = Paravector::on_slice(u, v, &k);
            let (a, b) = representation_forms(&p, &x).unwrap();
            let c = representation_eval(&p, &x).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-12);
            assert!(a.max_abs_diff(&c) < 1e-12);
        }
    }

    #[test]
    fn representation_trivial_cases() {
        let m = Multivector::from_coeffs(2, vec![0.5, 1.0, 2.0, 3.0]).unwrap();
        let real = SlicePair { fplus: m.clone(), fminus: m.clone(), unit: e(2, 2), u: 1.5, v: 0.0 };
        assert!(representation_eval(&real, &Paravector::real(2, 1.5).unwrap()).unwrap().max_abs_diff(&m) < 1e-15);

        let other = Multivector::scalar(2, 7.0).unwrap();
        let own = SlicePair { fplus: m.clone(), fminus: other, unit: e(2, 2), u: 1.0, v: 2.0 };
        let x = Paravector::on_slice(1.0, 2.0, &e(2, 2));
        assert_eq!(representation_eval(&own, &x).unwrap(), m);

        let off = Paravector::on_slice(1.0, 2.5, &e(2, 1));
        assert!(matches!(representation_eval(&own, &off), Err(Error::PointSliceMismatch { .. })));
    }

    #[test]
    fn representation_is_slice_independent() {
        // f built by ext from slice e1; pairs from two other slices reproduce it
        let n = 3;
        let g = intrinsic_from_complex(|z: Complex64| (z * 0.3).exp() / (z + 1.5));
        let e23 = Multivector::blade(n, BladeIndex::from_indices(&[2, 3]), 1.0).unwrap();
        let base = SlicePair::sample(|x| &g(x) * &e23, &e(n, 1), 0.4, 1.1);
        let s1 = ImaginaryUnit::new(vec![0.0, 1.0, 1.0]).unwrap();
        let s2 = ImaginaryUnit::new(vec![1.0, -1.0, 0.5]).unwrap();
        let pair_on = |s: &ImaginaryUnit| SlicePair {
            fplus: ext_eval(&base, s),
            fminus: ext_eval(&base, &s.negated()),
            unit: s.clone(),
            u: 0.4,
            v: 1.1,
        };
        let (p1, p2) = (pair_on(&s1), pair_on(&s2));
        let target = Paravector::on_slice(0.4, 1.1, &ImaginaryUnit::new(vec![-0.2, 0.9, 0.1]).unwrap());
        let a = representation_eval(&p1, &target).unwrap();
        let b = representation_eval(&p2, &target).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn split_by_hand_n2() {
        let n = 2;
        let m = Multivector::from_coeffs(n, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let vgrid = UniformGrid::new(-1.0, 1.0, 9).unwrap();
        let f = SampledSliceFunction::new(e(n, 1), vgrid, None, 0.0, vec![m; 9]).unwrap();
        let comps = split_holomorphic(&f, &BasisFrame::standard(n).unwrap()).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].subset, BladeIndex::SCALAR);
        assert_eq!(comps[1].subset, BladeIndex::generator(2));
        for c in &comps {
            assert!(c.values.iter().all(|z| (z - Complex64::new(1.0, 1.0)).norm() < 1e-14));
        }
    }

    #[test]
    fn split_of_scalar() {
        let n = 3;
        let vgrid = UniformGrid::new(-1.0, 1.0, 8).unwrap();
        let f = SampledSliceFunction::new(e(n, 1), vgrid, None, 0.0, vec![Multivector::scalar(n, 2.5).unwrap(); 8]).unwrap();
        let comps = split_holomorphic(&f, &complete_basis(&e(n, 1), 3).unwrap()).unwrap();
        for c in &comps {
            let expected = if c.subset == BladeIndex::SCALAR { Complex64::new(2.5, 0.0) } else { Complex64::new(0.0, 0.0) };
            assert!(c.values.iter().all(|z| (z - expected).norm() < 1e-12));
        }
    }

    #[test]
    fn split_round_trip_and_pythagoras() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..100u64 {
            let n = 2 + (trial % 3) as usize;
            let unit = ImaginaryUnit::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            let frame = complete_basis(&unit, trial).unwrap();
            let vgrid = UniformGrid::new(-1.0, 1.0, 8).unwrap();
            let values: Vec<Multivector> = (0..8).map(|_| random_mv(&mut rng, n)).collect();
            let f = SampledSliceFunction::new(unit, vgrid, None, 0.0, values.clone()).unwrap();
            let comps = split_holomorphic(&f, &frame).unwrap();
            let back = recompose_split(&comps, &frame).unwrap();
            for (k, (a, b)) in back.iter().zip(&values).enumerate() {
                assert!(a.max_abs_diff(b) < 1e-10);
                let sum: f64 = comps.iter().map(|c| c.values[k].norm_sqr()).sum();
                assert!((sum - b.norm_sqr()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn split_rejects_wrong_slice() {
        let vgrid = UniformGrid::new(-1.0, 1.0, 8).unwrap();
        let f = SampledSliceFunction::new(e(2, 2), vgrid, None, 0.0, vec![Multivector::zero(2).unwrap(); 8]).unwrap();
        assert!(matches!(split_holomorphic(&f, &BasisFrame::standard(2).unwrap()), Err(Error::SliceMismatch(_))));
    }

    fn pm_samples(
        f: impl Fn(&Paravector) -> Multivector,
        unit: &ImaginaryUnit,
        u0: f64,
        vgrid: UniformGrid,
    ) -> (SampledSliceFunction, SampledSliceFunction) {
        let plus = SampledSliceFunction::sample_line(&f, unit, u0, vgrid).unwrap();
        let values = vgrid.nodes().map(|v| f(&Paravector::on_slice(u0, -v, unit))).collect();
        let minus = SampledSliceFunction::new(unit.clone(), vgrid, None, u0, values).unwrap();
        (plus, minus)
    }

    #[test]
    fn intrinsic_decomposition_cases() {
        let n = 3;
        let frame = BasisFrame::standard(n).unwrap();
        let vgrid = UniformGrid::new(-2.0, 2.0, 17).unwrap();
        let g = intrinsic_from_complex(|z: Complex64| 1.0 / (z + 1.0).powu(2));

        let (fp, fm) = pm_samples(&g, frame.unit(1), 0.5, vgrid);
        let comps = intrinsic_decompose(&fp, &fm, &frame).unwrap();
        for (k, v) in vgrid.nodes().enumerate() {
            let expect = 1.0 / (Complex64::new(0.5, v) + 1.0).powu(2);
            assert!((comps[0].values[k] - expect).norm() < 1e-14);
            assert!(comps[1..].iter().all(|c| c.values[k].norm() < 1e-14));
        }

        let e2 = Multivector::generator(n, 2).unwrap();
        let (fp, fm) = pm_samples(|x| &g(x) * &e2, frame.unit(1), 0.5, vgrid);
        let comps = intrinsic_decompose(&fp, &fm, &frame).unwrap();
        for (k, v) in vgrid.nodes().enumerate() {
            let expect = 1.0 / (Complex64::new(0.5, v) + 1.0).powu(2);
            assert!((comps[0b10].values[k] - expect).norm() < 1e-14);
            let others: f64 = comps.iter().filter(|c| c.blade.0 != 0b10).map(|c| c.values[k].norm()).sum();
            assert!(others < 1e-14);
        }
    }

    #[test]
    fn intrinsic_round_trip_and_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let n = 3;
        let unit = ImaginaryUnit::new(vec![0.3, -0.6, 0.2]).unwrap();
        let frame = complete_basis(&unit, 4).unwrap();
        let vgrid = UniformGrid::new(-2.0, 2.0, 9).unwrap();
        let plus: Vec<Multivector> = (0..9).map(|_| random_mv(&mut rng, n)).collect();
        let minus: Vec<Multivector> = (0..9).map(|_| random_mv(&mut rng, n)).collect();
        let fp = SampledSliceFunction::new(unit.clone(), vgrid, None, 0.0, plus.clone()).unwrap();
        let fm = SampledSliceFunction::new(unit, vgrid, None, 0.0, minus.clone()).unwrap();
        let comps = intrinsic_decompose(&fp, &fm, &frame).unwrap();
        let back = intrinsic_recompose(&comps, &frame).unwrap();
        for k in 0..9 {
            assert!(back[k].max_abs_diff(&plus[k]) < 1e-10);
            let bound = FRAC_1_SQRT_2 * (plus[k].norm() + minus[k].norm());
            assert!(comps.iter().all(|c| c.values[k].norm() <= bound + 1e-10));
        }
    }

    #[test]
    fn cr_residuals() {
        let unit = e(2, 1);
        let plane = |f: &dyn Fn(&Paravector) -> Multivector, h: f64| {
            let ugrid = UniformGrid::new(0.5, 0.5 + 16.0 * h, 17).unwrap();
            let vgrid = UniformGrid::symmetric(8.0 * h, 17).unwrap();
            SampledSliceFunction::sample_plane(f, &unit, ugrid, vgrid).unwrap()
        };

        let constant = |_: &Paravector| Multivector::from_coeffs(2, vec![1.0, -2.0, 0.5, 3.0]).unwrap();
        let r = cr_residual(&plane(&constant, 0.1)).unwrap();
        assert_eq!((r.r1, r.r2), (0.0, 0.0));

        let square = intrinsic_from_complex(|z: Complex64| z * z);
        let r = cr_residual(&plane(&square, 0.1)).unwrap();
        assert!(r.r1 < 1e-12 && r.r2 < 1e-12);

        let cube = intrinsic_from_complex(|z: Complex64| z * z * z);
        let coarse = cr_residual(&plane(&cube, 0.1)).unwrap();
        let fine = cr_residual(&plane(&cube, 0.05)).unwrap();
        let ratio = coarse.r1.max(coarse.r2) / fine.r1.max(fine.r2);
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");

        // u - Iv is anti-holomorphic: ∂_u α − ∂_v β = 2
        let anti = |x: &Paravector| {
            let (u, v, k) = crate::algebra::slice_coordinates(x);
            Multivector::from_slice_complex(Complex64::new(u, -v), &k)
        };
        let r = cr_residual(&plane(&anti, 1.0)).unwrap();
        assert!(r.r1 >= 1.0, "{r:?}");
    }

    #[test]
    fn cr_residual_needs_plane() {
        let vgrid = UniformGrid::new(-1.0, 1.0, 9).unwrap();
        let f = SampledSliceFunction::new(e(2, 1), vgrid, None, 0.0, vec![Multivector::zero(2).unwrap(); 9]).unwrap();
        assert!(cr_residual(&f).is_err());
    }
}
