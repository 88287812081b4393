//! Band-limited synthesis, the exponential-type growth bound and kernel
//! reproduction.

use std::f64::consts::PI;

use rand::Rng;

use crate::algebra::{Multivector, Paravector};
use crate::error::Result;
use crate::paley_wiener::{
    pw_growth_margin, pw_kernel, pw_kernel_quadrature, pw_kernel_reproduce, pw_synthesize, BandlimitedSpectrum,
    GrowthBound,
};

use super::super::catalog::CatalogEntry;
use super::super::report::Relation;
use super::super::{Context, Recorder};
use super::{anchor, probe, rel_err};

/// Spectral nodes on `[−B, B]`.
const SPECTRUM_NODES: usize = 2049;
const SYNTHESIS_PROBES_PER_SLICE: usize = 4;
const GROWTH_PROBES: usize = 1000;
const KERNEL_PROBES: usize = 5;
/// Bandwidth factor of the function tested against a too-small bound.
const LEAK_FACTOR: f64 = 1.5;

pub(super) fn run(ctx: &Context<'_>, rec: &mut Recorder) {
    let cfg = ctx.cfg;
    let th = &cfg.thresholds;
    let tol = &cfg.tolerances;
    let n = cfg.n;
    let mut rng = ctx.rng(5);

    for entry in ctx.entries.iter().filter(|e| e.bandwidth().is_some()) {
        let b = entry.bandwidth().expect("filtered");
        let f = entry.evaluator();
        let spectrum = BandlimitedSpectrum::from_fn(b, ctx.slices[0].clone(), SPECTRUM_NODES, |w| {
            Multivector::scalar(n, entry.transform(w)).expect("validated dimension")
        });
        let spectrum = spectrum.as_ref().map_err(Clone::clone);

        rec.check(format!("synthesis {entry}"), anchor::COMPACT_PW, Relation::AtMost, tol.theorem_tol, || {
            let s = spectrum.clone()?;
            let mut worst = 0.0f64;
            for slice in &ctx.slices {
                for _ in 0..SYNTHESIS_PROBES_PER_SLICE {
                    let v = rng.gen_range(0.1..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    let x = Paravector::on_slice(rng.gen_range(-5.0..5.0), v, slice);
                    worst = worst.max(rel_err(&pw_synthesize(s, &x)?, &f(&x)));
                }
            }
            Ok(worst)
        });
        let probes: Vec<Paravector> = (0..GROWTH_PROBES)
            .map(|k| probe(&mut rng, &ctx.slices[k % ctx.slices.len()], (-10.0, 10.0), (-3.0, 3.0)))
            .collect();
        rec.check(format!("growth-margin {entry}"), anchor::GROWTH, Relation::AtLeast, -th.growth, || {
            let gb = GrowthBound::from_spectrum(spectrum.clone()?)?;
            Ok(pw_growth_margin(f, &gb, &probes))
        });
        rec.check(format!("growth-margin-wider-band {entry}"), anchor::GROWTH, Relation::AtMost, 0.0, || {
            // a function of type 1.5B must eventually exceed the type-B bound
            let gb = GrowthBound::from_spectrum(spectrum.clone()?)?;
            let wide = CatalogEntry::BandlimitedSinc { b: LEAK_FACTOR * b }.evaluator();
            let far: Vec<Paravector> =
                (1..=40).map(|k| Paravector::on_slice(0.0, k as f64, &ctx.slices[k % ctx.slices.len()])).collect();
            Ok(pw_growth_margin(wide, &gb, &far))
        });
        rec.check(
            format!("kernel-reproduction {entry}"),
            anchor::PW_KERNEL,
            Relation::AtMost,
            th.kernel_reproduction,
            || {
                let grid = cfg.grids.kernel_v.symmetric();
                let mut worst = 0.0f64;
                for k in 0..KERNEL_PROBES {
                    let x = probe(&mut rng, &ctx.slices[k % ctx.slices.len()], (-3.0, 3.0), (-1.0, 1.0));
                    let real = |t: f64| f(&Paravector::real(n, t).expect("validated dimension"));
                    worst = worst.max(rel_err(&pw_kernel_reproduce(&x, b, real, &grid)?, &f(&x)));
                }
                Ok(worst)
            },
        );
        rec.check(format!("kernel-closed-form {entry}"), anchor::PW_KERNEL, Relation::AtMost, tol.quadrature_tol, || {
            let mut worst = 0.0f64;
            for k in 0..KERNEL_PROBES {
                let x = probe(&mut rng, &ctx.slices[k % ctx.slices.len()], (-3.0, 3.0), (-1.0, 1.0));
                let xi = rng.gen_range(-3.0..3.0);
                worst = worst.max(rel_err(&pw_kernel_quadrature(&x, xi, b, 4097)?, &pw_kernel(&x, xi, b)?));
            }
            Ok(worst)
        });
        rec.check(format!("kernel-diagonal {entry}"), anchor::PW_KERNEL, Relation::AtMost, 0.0, || {
            let mut worst = 0.0f64;
            for xi in [-2.5, 0.0, 0.75, 3.0] {
                let k: Result<Multivector> = pw_kernel(&Paravector::real(n, xi)?, xi, b);
                worst = worst.max(k?.dist(&Multivector::scalar(n, b / PI)?));
            }
            Ok(worst)
        });
    }
}
