//! Plancherel, Hausdorff–Young, inversion and slice independence of
//! intrinsic spectra.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{ImaginaryUnit, Multivector};
use crate::error::Result;
use crate::fourier::{cft_forward, cft_inverse, plancherel_defect, LineSamples, SpectrumSamples};
use crate::numerics::{lp_norm, UniformGrid};

use super::super::catalog::CatalogEntry;
use super::super::config::GridSpec;
use super::super::report::Relation;
use super::super::{Context, Recorder};
use super::{anchor, natural_samples};

/// Spectral grid for the slice-independence comparison.
const COMPARE_W: (f64, usize) = (8.0, 257);

pub(super) fn run(ctx: &Context<'_>, rec: &mut Recorder) {
    let cfg = ctx.cfg;
    let th = &cfg.thresholds;
    let slice = &ctx.slices[0];
    let (vspec, wspec) = (cfg.grids.v, cfg.grids.w);

    for entry in &ctx.entries {
        let reference: Result<(LineSamples, SpectrumSamples)> = natural_samples(entry, slice, vspec.symmetric())
            .and_then(|s| cft_forward(&s, slice, &wspec.symmetric()).map(|spec| (s, spec)));
        let reference = reference.as_ref().map_err(Clone::clone);

        let mut ref_defect = None;
        rec.check(format!("plancherel {entry}"), anchor::PLANCHEREL, Relation::AtMost, th.plancherel, || {
            let (s, spec) = reference.clone()?;
            let d = norm_defect(s, spec)?;
            ref_defect = Some(d);
            Ok(d)
        });
        rec.check(
            format!("plancherel-convergence {entry}"),
            anchor::PLANCHEREL,
            Relation::AtLeast,
            th.plancherel_ratio,
            || {
                let ref_defect = ref_defect.ok_or(crate::Error::ZeroFunction)?;
                convergence_ratio(entry, slice, vspec, wspec, ref_defect, th.plancherel_floor)
            },
        );
        for &p in &cfg.p_list {
            rec.check(
                format!("hausdorff-young {entry} p={p}"),
                anchor::HAUSDORFF_YOUNG,
                Relation::AtLeast,
                -cfg.tolerances.theorem_tol,
                || {
                    let (s, spec) = reference.clone()?;
                    let q = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
                    Ok(lp_norm(&s.grid, &s.values, p)? - lp_norm(&spec.grid, &spec.coeffs, q)?)
                },
            );
        }
        rec.check(
            format!("intrinsic-spectrum-slice-independence {entry}"),
            anchor::FOURIER,
            Relation::AtMost,
            th.slice_independence,
            || spectrum_slice_spread(entry, &ctx.slices, vspec),
        );
    }

    let mut rng = ctx.rng(3);
    rec.check("inverse-round-trip gaussian", anchor::FOURIER, Relation::AtMost, cfg.tolerances.quadrature_tol, || {
        let n = slice.dim();
        let m = Multivector::from_coeffs(n, (0..1usize << n).map(|_| rng.gen_range(-1.0..1.0)).collect())?;
        let grid = UniformGrid::symmetric(20.0, 1025)?;
        let f = LineSamples::from_fn(grid, |t| m.scale((-0.5 * t * t).exp()))?;
        let back = cft_inverse(&cft_forward(&f, slice, &grid)?, &grid)?;
        Ok(back.values.iter().zip(&f.values).map(|(a, b)| a.dist(b)).fold(0.0, f64::max) / m.norm())
    });
}

fn norm_defect(s: &LineSamples, spec: &SpectrumSamples) -> Result<f64> {
    let norm = lp_norm(&s.grid, &s.values, 2.0)?;
    let spec_norm = lp_norm(&spec.grid, &spec.coeffs, 2.0)?;
    Ok((spec_norm - norm).abs() / norm)
}

/// Smallest defect reduction per doubling of both node counts, over the
/// sequence from the configured grids coarsened twice up to one doubling
/// beyond them. The sequence stops once the defect reaches `floor`.
fn convergence_ratio(
    entry: &CatalogEntry,
    slice: &ImaginaryUnit,
    v: GridSpec,
    w: GridSpec,
    ref_defect: f64,
    floor: f64,
) -> Result<f64> {
    let coarsen = |g: GridSpec, times: u32| {
        let m = (g.count - 1) >> times;
        (m >= 8 && m << times == g.count - 1).then(|| GridSpec::new(g.extent, m + 1))
    };
    let defect = |v: GridSpec, w: GridSpec| -> Result<f64> {
        plancherel_defect(&natural_samples(entry, slice, v.symmetric())?, slice, &w.symmetric())
    };
    let mut defects = Vec::new();
    for times in [2, 1] {
        if let (Some(vc), Some(wc)) = (coarsen(v, times), coarsen(w, times)) {
            defects.push(defect(vc, wc)?);
        }
    }
    defects.push(ref_defect);
    if ref_defect > floor {
        defects.push(defect(v.doubled(), w.doubled())?);
    }
    let mut ratio = f64::INFINITY;
    for pair in defects.windows(2) {
        if pair[0] > floor {
            ratio = ratio.min(pair[0] / pair[1].max(f64::MIN_POSITIVE));
        }
    }
    Ok(ratio)
}

/// Writes a spectrum coefficient as `a + I b` and returns `(a + ib, residual)`
/// where the residual is the part outside `span{1, I}`.
fn as_slice_complex(m: &Multivector, unit: &ImaginaryUnit) -> (Complex64, f64) {
    let a = m.scalar_part();
    let b: f64 = unit.components().iter().enumerate().map(|(i, c)| c * m.coeffs()[1 << i]).sum();
    let rebuilt = Multivector::from_slice_complex(Complex64::new(a, b), unit);
    (Complex64::new(a, b), m.dist(&rebuilt))
}

/// Relative spread across slices of the complex spectra of an intrinsic
/// entry, plus any energy outside the slice planes.
fn spectrum_slice_spread(entry: &CatalogEntry, slices: &[ImaginaryUnit], v: GridSpec) -> Result<f64> {
    let wgrid = UniformGrid::symmetric(COMPARE_W.0, COMPARE_W.1)?;
    let mut spectra: Vec<Vec<Complex64>> = Vec::with_capacity(slices.len());
    let mut residual = 0.0f64;
    for unit in slices {
        let spec = cft_forward(&natural_samples(entry, unit, v.symmetric())?, unit, &wgrid)?;
        let mut zs = Vec::with_capacity(spec.coeffs.len());
        for c in &spec.coeffs {
            let (z, r) = as_slice_complex(c, unit);
            zs.push(z);
            residual = residual.max(r);
        }
        spectra.push(zs);
    }
    let scale = spectra[0].iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut spread = 0.0f64;
    for other in &spectra[1..] {
        for (a, b) in spectra[0].iter().zip(other) {
            spread = spread.max((a - b).norm());
        }
    }
    Ok((spread + residual) / scale)
}
