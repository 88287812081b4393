//! Hardy-space reconstruction: spectral support, Fourier and Poisson
//! formulas, kernel reproduction and slice norms.

use num_complex::Complex64;

use crate::algebra::{slice_coordinates, Multivector, Paravector};
use crate::fourier::{cft_forward, support_fraction, Interval};
use crate::numerics::{Tolerances, UniformGrid};
use crate::paley_wiener::{
    cauchy_kernel, cauchy_kernel_quadrature, hardy_kernel_reproduce, hardy_norm, hardy_reconstruct_fourier,
    hardy_reconstruct_poisson, HardyBoundaryData, HardyReconstructor,
};
use crate::slice::SliceComplex;

use super::super::catalog::CatalogEntry;
use super::super::report::Relation;
use super::super::{Context, Recorder};
use super::{anchor, boundary_samples, probe, rel_err};

/// Probes on the data slice and on other slices.
const PROBES: usize = 20;
const TWO_FORMULA_PROBES: usize = 10;
const KERNEL_PROBES: usize = 6;
/// `(V, N, W, M)` of the coarse grids used to compare the two Fourier paths.
const LITERAL_GRID: (f64, usize, f64, usize) = (200.0, 4097, 32.0, 2049);

pub(super) fn run(ctx: &Context<'_>, rec: &mut Recorder) {
    let cfg = ctx.cfg;
    let th = &cfg.thresholds;
    let tol = &cfg.tolerances;
    let data_slice = &ctx.slices[0];
    let vgrid = cfg.grids.hardy_v.symmetric();
    let wgrid = cfg.grids.hardy_w.symmetric();
    let mut rng = ctx.rng(4);
    // support is reported as a check of its own; reconstruction proceeds regardless
    let lenient = Tolerances { support_tol: 1.0, ..*tol };

    for (index, entry) in ctx.entries.iter().filter(|e| e.is_hardy()).enumerate() {
        let f = entry.evaluator();
        let bd = HardyBoundaryData::new(
            data_slice.clone(),
            boundary_samples(entry, data_slice, vgrid).expect("validated grid"),
            2.0,
        );
        let recon = bd.as_ref().map_err(Clone::clone).and_then(|bd| HardyReconstructor::new(bd, &wgrid, &lenient));
        let recon = recon.as_ref().map_err(Clone::clone);

        rec.check(format!("support-fraction {entry}"), anchor::HARDY_PW, Relation::AtMost, tol.support_tol, || {
            Ok(recon.clone()?.support_fraction())
        });

        let same: Vec<Paravector> = (0..PROBES).map(|_| probe(&mut rng, data_slice, (0.2, 3.0), (-5.0, 5.0))).collect();
        let cross: Vec<Paravector> = (0..PROBES)
            .map(|k| probe(&mut rng, &ctx.slices[1 + k % (ctx.slices.len() - 1)], (0.2, 3.0), (-5.0, 5.0)))
            .collect();
        for (label, points) in [("same-slice", &same), ("cross-slice", &cross)] {
            rec.check(
                format!("fourier-reconstruction-{label} {entry}"),
                anchor::HARDY_PW,
                Relation::AtMost,
                tol.theorem_tol,
                || {
                    let r = recon.clone()?;
                    let mut worst = 0.0f64;
                    for x in points.iter() {
                        worst = worst.max(rel_err(&r.eval(x)?, &f(x)));
                    }
                    Ok(worst)
                },
            );
        }
        if index == 0 {
            // the literal path transforms the extended boundary data itself; both
            // paths see the same coarse data, so they must agree to rounding
            rec.check(format!("fourier-literal-path {entry}"), anchor::PLUMBING, Relation::AtMost, tol.identity_tol, || {
                let (cv, cw) = (UniformGrid::symmetric(LITERAL_GRID.0, LITERAL_GRID.1)?, UniformGrid::symmetric(LITERAL_GRID.2, LITERAL_GRID.3)?);
                let bd = HardyBoundaryData::new(data_slice.clone(), boundary_samples(entry, data_slice, cv)?, 2.0)?;
                let r = HardyReconstructor::new(&bd, &cw, &lenient)?;
                let mut worst = 0.0f64;
                for x in [&same[0], &cross[0]] {
                    worst = worst.max(rel_err(&hardy_reconstruct_fourier(&bd, x, &cw, &lenient)?, &r.eval(x)?));
                }
                Ok(worst)
            });
        }
        rec.check(format!("poisson-vs-fourier {entry}"), anchor::HARDY_POISSON, Relation::AtMost, th.two_formula, || {
            let (r, bd) = (recon.clone()?, bd.as_ref().map_err(Clone::clone)?);
            let mut worst = 0.0f64;
            for x in &same[..TWO_FORMULA_PROBES] {
                let (u, v, _) = slice_coordinates(x);
                // slice_coordinates returns v ≥ 0 with its own unit; re-sign it for the data slice
                let along: f64 = x.xvec.iter().zip(data_slice.components()).map(|(a, b)| a * b).sum();
                let v = v.copysign(along);
                let poisson = hardy_reconstruct_poisson(bd, &SliceComplex::new(u, v, data_slice.clone()))?;
                worst = worst.max(rel_err(&poisson, &r.eval(x)?));
            }
            Ok(worst)
        });
        rec.check(
            format!("hardy-kernel-reproduction {entry}"),
            anchor::HARDY_KERNEL,
            Relation::AtMost,
            th.kernel_reproduction,
            || {
                let mut worst = 0.0f64;
                for k in 0..KERNEL_PROBES {
                    let x = probe(&mut rng, &ctx.slices[k % ctx.slices.len()], (0.3, 2.0), (-3.0, 3.0));
                    let boundary = |xi: f64| f(&Paravector::on_slice(0.0, xi, data_slice));
                    let got = hardy_kernel_reproduce(&x, data_slice, boundary, &vgrid)?;
                    worst = worst.max(rel_err(&got, &f(&x)));
                }
                Ok(worst)
            },
        );
        rec.check(format!("hardy-norm-slice-spread {entry}"), anchor::HARDY_NORM, Relation::AtMost, tol.identity_tol, || {
            let r = hardy_norm(f, 2.0, &ctx.slices, &[0.0, 0.5, 1.0, 2.0], &vgrid)?;
            Ok(r.spread() / r.value)
        });
        rec.check(
            format!("hardy-norm-monotone-in-u {entry}"),
            anchor::HARDY_NORM,
            Relation::AtMost,
            tol.identity_tol,
            || Ok(hardy_norm(f, 2.0, &ctx.slices[..1], &[0.0, 0.25, 0.5, 1.0, 2.0, 4.0], &vgrid)?.monotonicity_excess),
        );
    }

    if let Some(control) = ctx.entries.iter().find(|e| matches!(e, CatalogEntry::NegativeControl)) {
        rec.check(
            format!("support-fraction {control}"),
            anchor::HARDY_PW,
            Relation::AtLeast,
            th.negative_control,
            || {
                let spec = cft_forward(&boundary_samples(control, data_slice, vgrid)?, data_slice, &wgrid)?;
                support_fraction(&spec, Interval::nonpositive())
            },
        );
    }

    rec.check("cauchy-kernel-closed-form", anchor::CAUCHY_KERNEL, Relation::AtMost, tol.quadrature_tol, || {
        let mut worst = 0.0f64;
        for (u, v) in [(0.5, 0.0), (1.0, -2.0), (0.2, 3.0), (3.0, 1.0)] {
            let z = SliceComplex::new(u, v, data_slice.clone());
            let exact = cauchy_kernel(&z)?;
            let quad = cauchy_kernel_quadrature(&z, tol.quadrature_tol * 1e-2)?;
            worst = worst.max(rel_err(&quad, &exact));
        }
        Ok(worst)
    });
    rec.check("cauchy-kernel-value", anchor::CAUCHY_KERNEL, Relation::AtMost, tol.identity_tol, || {
        // 𝒦(z) = 1/(2π z)
        let z = SliceComplex::new(0.7, -1.3, data_slice.clone());
        let want = Multivector::from_slice_complex(1.0 / (2.0 * std::f64::consts::PI * Complex64::new(0.7, -1.3)), data_slice);
        Ok(rel_err(&cauchy_kernel(&z)?, &want))
    });
}
