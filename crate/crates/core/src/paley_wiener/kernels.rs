//! Cauchy, Poisson, Hardy-reproducing and band-limited reproducing kernels.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{imaginary_unit_of, ImaginaryUnit, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::numerics::{integrate_simpson_real, HalfLinePlan};
use crate::slice::SliceComplex;

/// Below this `|c|` the band-limited kernel takes its limit value `B/π`.
pub const PW_KERNEL_DEGENERATE: f64 = 1e-8;

fn require_right_half(u: f64) -> Result<()> {
    if u > 0.0 {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!("real part {u} is not positive")))
    }
}

/// `𝒦(z) = (1/2π) ∫_{-∞}^0 e^{zw} dw = 1/(2πz)` for `Re z > 0`.
pub fn cauchy_kernel(z: &SliceComplex) -> Result<Multivector> {
    require_right_half(z.u)?;
    Ok(Multivector::from_slice_complex(1.0 / (2.0 * PI * z.as_complex()), &z.slice))
}

/// [`cauchy_kernel`] by truncated Simpson quadrature of the defining integral.
pub fn cauchy_kernel_quadrature(z: &SliceComplex, tol: f64) -> Result<Multivector> {
    require_right_half(z.u)?;
    // roughly 80 nodes per radian of oscillation and per e-fold of decay
    let density = 80.0 * z.u.max(z.v.abs()).max(1.0);
    let plan = HalfLinePlan::new(z.u, tol, density, 1.0)?;
    let grid = plan.grid()?;
    let (re, im): (Vec<f64>, Vec<f64>) = grid
        .nodes()
        .map(|w| {
            let e = (z.u * w).exp();
            let (s, c) = (z.v * w).sin_cos();
            (e * c, e * s)
        })
        .unzip();
    let k = Complex64::new(integrate_simpson_real(&grid, &re)?, integrate_simpson_real(&grid, &im)?) / (2.0 * PI);
    Ok(Multivector::from_slice_complex(k, &z.slice))
}

/// `𝒫(u, v) = |𝒦(u+Iv)|² / 𝒦(2u)`, which reduces to `u / (π(u² + v²))`.
pub fn poisson_kernel(u: f64, v: f64) -> Result<f64> {
    require_right_half(u)?;
    let k = 1.0 / (2.0 * PI * Complex64::new(u, v));
    let k2u = 1.0 / (2.0 * PI * 2.0 * u);
    Ok(k.norm_sqr() / k2u)
}

/// `∫_{-∞}^0 e^{uw} cos(cw) dw` and `∫_{-∞}^0 e^{uw} sin(cw) dw`.
fn damped_cos_sin(u: f64, c: f64) -> (f64, f64) {
    let d = u * u + c * c;
    (u / d, -c / d)
}

/// Hardy reproducing kernel `𝒦(x, Iξ) = (1/2π) ∫_{-∞}^0 e^{(u+Jv)w} e^{-Iξw} dw`
/// with `x = u + Jv`, `J = I_x`.
///
/// The two exponentials live on different slices, so the integrand is
/// expanded into `cos·cos`, `sin·cos`, `cos·sin`, `sin·sin` terms with the
/// blades `1, J, −I, −JI`, and each scalar integral is evaluated exactly.
pub fn hardy_kernel(x: &Paravector, slice: &ImaginaryUnit, xi: f64) -> Result<Multivector> {
    require_right_half(x.x0)?;
    if x.dim() != slice.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: slice.dim() });
    }
    let (u, v) = (x.x0, x.vector_norm());
    let j = imaginary_unit_of(x);
    let (cm, sm) = damped_cos_sin(u, v - xi);
    let (cp, sp) = damped_cos_sin(u, v + xi);
    let a_cc = 0.5 * (cm + cp);
    let a_sc = 0.5 * (sp + sm);
    let a_cs = 0.5 * (sp - sm);
    let a_ss = 0.5 * (cm - cp);
    let n = x.dim();
    let jm = j.to_multivector();
    let im = slice.to_multivector();
    let mut out = Multivector::scalar(n, a_cc)?;
    out.add_scaled(a_sc, &jm);
    out.add_scaled(-a_cs, &im);
    out.add_scaled(-a_ss, &(&jm * &im));
    Ok(out.scale(1.0 / (2.0 * PI)))
}

/// Band-limited reproducing kernel
/// `𝒦_B(x, ξ) = (1/2π) ∫_{-B}^{B} e^{I_x(x−ξ)w} dw = (e^{cB} − e^{−cB}) / (2πc)`
/// with `c = I_x(u − ξ) − v`; the value is `B/π` when `|c| ≤ 1e-8`.
pub fn pw_kernel(x: &Paravector, xi: f64, b: f64) -> Result<Multivector> {
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!("bandwidth must be positive, got {b}")));
    }
    let j = imaginary_unit_of(x);
    let c = Complex64::new(-x.vector_norm(), x.x0 - xi);
    let k = if c.norm() <= PW_KERNEL_DEGENERATE {
        Complex64::new(b / PI, 0.0)
    } else {
        ((c * b).exp() - (-c * b).exp()) / (2.0 * PI * c)
    };
    Ok(Multivector::from_slice_complex(k, &j))
}

/// [`pw_kernel`] by Simpson quadrature of the defining integral on `nodes` points.
pub fn pw_kernel_quadrature(x: &Paravector, xi: f64, b: f64, nodes: usize) -> Result<Multivector> {
    let grid = crate::numerics::UniformGrid::new(-b, b, nodes)?;
    let v = x.vector_norm();
    let (re, im): (Vec<f64>, Vec<f64>) = grid
        .nodes()
        .map(|w| {
            let e = (-v * w).exp();
            let (s, c) = ((x.x0 - xi) * w).sin_cos();
            (e * c, e * s)
        })
        .unzip();
    let k = Complex64::new(integrate_simpson_real(&grid, &re)?, integrate_simpson_real(&grid, &im)?) / (2.0 * PI);
    Ok(Multivector::from_slice_complex(k, &imaginary_unit_of(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_trapezoid_real, UniformGrid};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> ImaginaryUnit {
        ImaginaryUnit::basis(n, i).unwrap()
    }

    #[test]
    fn cauchy_kernel_examples() {
        let one = cauchy_kernel(&SliceComplex::new(1.0, 0.0, e(2, 1))).unwrap();
        assert!((one.scalar_part() - 1.0 / (2.0 * PI)).abs() < 1e-16);
        let z = cauchy_kernel(&SliceComplex::new(1.0, 1.0, e(2, 1))).unwrap();
        let expected = Multivector::from_coeffs(2, vec![1.0, -1.0, 0.0, 0.0]).unwrap().scale(1.0 / (4.0 * PI));
        assert!(z.max_abs_diff(&expected) < 1e-16);
        assert!(matches!(cauchy_kernel(&SliceComplex::new(0.0, 1.0, e(2, 1))), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn cauchy_kernel_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let unit = ImaginaryUnit::new((0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            let z = SliceComplex::new(rng.gen_range(0.2..3.0), rng.gen_range(-3.0..3.0), unit);
            let exact = cauchy_kernel(&z).unwrap();
            let quad = cauchy_kernel_quadrature(&z, 1e-12).unwrap();
            assert!(exact.max_abs_diff(&quad) <= 1e-9, "{:e}", exact.max_abs_diff(&quad));
        }
    }

    #[test]
    fn poisson_kernel_examples() {
        assert!((poisson_kernel(1.0, 0.0).unwrap() - 1.0 / PI).abs() < 1e-16);
        for (u, v) in [(0.3, 1.7), (2.0, -5.0), (1e-3, 0.4)] {
            assert_eq!(poisson_kernel(u, v).unwrap(), poisson_kernel(u, -v).unwrap());
            let closed = u / (PI * (u * u + v * v));
            assert!((poisson_kernel(u, v).unwrap() - closed).abs() <= 1e-14 * closed);
        }
        assert!(poisson_kernel(0.0, 1.0).is_err());
    }

    #[test]
    fn poisson_kernel_has_unit_mass() {
        for u in [0.1, 1.0, 10.0] {
            let l = 1e4 * u;
            // fine enough to resolve the peak of width u; the tails lose 2/(π·10⁴)
            let grid = UniformGrid::symmetric(l, 4_000_001).unwrap();
            let vals: Vec<f64> = grid.nodes().map(|v| poisson_kernel(u, v).unwrap()).collect();
            let mass = integrate_trapezoid_real(&grid, &vals);
            let tail = 2.0 * (1.0 / 1e4f64).atan() / PI;
            assert!((mass + tail - 1.0).abs() < 1e-8, "u = {u}: {mass}");
        }
    }

    #[test]
    fn hardy_kernel_same_slice_collapses_to_cauchy() {
        let i = ImaginaryUnit::new(vec![0.3, -0.2, 0.9]).unwrap();
        for (u, v, xi) in [(0.5, 1.0, 0.3), (2.0, 0.2, -1.5), (1.0, 3.0, 3.0)] {
            let x = Paravector::on_slice(u, v, &i);
            let k = hardy_kernel(&x, &i, xi).unwrap();
            let c = cauchy_kernel(&SliceComplex::new(u, v - xi, i.clone())).unwrap();
            assert!(k.max_abs_diff(&c) < 1e-15);
        }
        let x = Paravector::on_slice(0.7, 1.3, &i);
        let at_origin = hardy_kernel(&x, &i, 0.0).unwrap();
        let c = cauchy_kernel(&SliceComplex::new(0.7, 1.3, i.clone())).unwrap();
        assert!(at_origin.max_abs_diff(&c) < 1e-15);
        assert!(hardy_kernel(&Paravector::on_slice(0.0, 1.0, &i), &i, 0.0).is_err());
    }

    #[test]
    fn hardy_kernel_matches_direct_quadrature_on_mixed_slices() {
        let i = e(3, 1);
        let j = ImaginaryUnit::new(vec![0.2, 1.0, -0.5]).unwrap();
        let (u, v, xi) = (0.8, 1.1, -0.4);
        let x = Paravector::on_slice(u, v, &j);
        let plan = HalfLinePlan::new(u, 1e-14, 400.0, 1.0).unwrap();
        let grid = plan.grid().unwrap();
        let mut acc = vec![Multivector::zero(3).unwrap(); grid.count()];
        for (slot, w) in acc.iter_mut().zip(grid.nodes()) {
            let left = Multivector::from_slice_complex(Complex64::new(u * w, v * w).exp(), &j);
            let right = Multivector::from_slice_complex(Complex64::new(0.0, -xi * w).exp(), &i);
            *slot = (&left * &right).scale(1.0 / (2.0 * PI));
        }
        let quad = crate::numerics::integrate_simpson(&grid, &acc).unwrap();
        assert!(hardy_kernel(&x, &i, xi).unwrap().max_abs_diff(&quad) < 1e-10);
    }

    #[test]
    fn pw_kernel_examples() {
        let b = 1.7;
        let x = Paravector::real(3, 0.4).unwrap();
        assert_eq!(pw_kernel(&x, 0.4, b).unwrap().scalar_part(), b / PI);
        let shifted = Paravector::real(2, 0.4 + PI / b).unwrap();
        assert!(pw_kernel(&shifted, 0.4, b).unwrap().norm() < 1e-15);
        assert!(pw_kernel(&x, 0.0, -1.0).is_err());
    }

    #[test]
    fn pw_kernel_matches_quadrature() {
        let j = ImaginaryUnit::new(vec![1.0, -1.0, 0.5]).unwrap();
        for (u, v, xi) in [(0.3, 0.5, 1.2), (-2.0, 1.5, 0.0), (1.0, 0.0, 1.0 + 1e-9)] {
            let x = Paravector::on_slice(u, v, &j);
            let exact = pw_kernel(&x, xi, 1.3).unwrap();
            let quad = pw_kernel_quadrature(&x, xi, 1.3, 4097).unwrap();
            assert!(exact.max_abs_diff(&quad) < 1e-9, "{:e}", exact.max_abs_diff(&quad));
        }
    }
}
