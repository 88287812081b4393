//! Bergman-space synthesis, density extraction and the norm and pointwise
//! inequalities.

use crate::algebra::{Multivector, Paravector};
use crate::error::Result;
use crate::fourier::Interval;
use crate::numerics::UniformGrid;
use crate::paley_wiener::{
    bergman_density_extract, bergman_norm, bergman_norm_margins, bergman_pointwise_margins, bergman_synthesize,
    density_discrepancy, BergmanDensity, HardyBoundaryData, PlaneQuadrature, PointwiseExponents,
};

use super::super::report::Relation;
use super::super::{Context, Recorder};
use super::{anchor, probe, rel_err};

const DENSITY_NODES: usize = 4097;
/// Density grid extends to `w = −DENSITY_DECAYS / a`.
const DENSITY_DECAYS: f64 = 40.0;
const SYNTHESIS_PROBES_PER_SLICE: usize = 4;
const DELTAS: [f64; 3] = [0.25, 0.5, 1.0];
const POINTWISE_PROBES: usize = 100;

pub(super) fn run(ctx: &Context<'_>, rec: &mut Recorder) {
    let cfg = ctx.cfg;
    let th = &cfg.thresholds;
    let tol = &cfg.tolerances;
    let g = &cfg.grids;
    let n = cfg.n;
    let data_slice = &ctx.slices[0];
    let mut rng = ctx.rng(6);
    let quad = PlaneQuadrature::mapped(g.area_u.extent, g.area_v.extent, g.area_u.count, g.area_v.count);
    let quad = quad.as_ref().map_err(Clone::clone);

    for entry in ctx.entries.iter().filter(|e| matches!(e, crate::harness::CatalogEntry::BergmanRational { .. })) {
        let a = match entry {
            crate::harness::CatalogEntry::BergmanRational { a } => *a,
            _ => unreachable!(),
        };
        let f = entry.evaluator();
        let density = |slice: &crate::algebra::ImaginaryUnit, p: f64| -> Result<BergmanDensity> {
            let grid = UniformGrid::new(-DENSITY_DECAYS / a, 0.0, DENSITY_NODES)?;
            BergmanDensity::from_fn(slice.clone(), grid, p, |w| Multivector::scalar(n, entry.transform(w)).expect("validated dimension"))
        };

        rec.check(format!("synthesis {entry}"), anchor::BERGMAN_PW, Relation::AtMost, tol.theorem_tol, || {
            let mut worst = 0.0f64;
            for slice in &ctx.slices {
                let d = density(slice, 2.0)?;
                for _ in 0..SYNTHESIS_PROBES_PER_SLICE {
                    let x = probe(&mut rng, slice, (0.2, 3.0), (-4.0, 4.0));
                    worst = worst.max(rel_err(&bergman_synthesize(&d, &x)?, &f(&x)));
                }
                let x = Paravector::real(n, 0.7)?;
                worst = worst.max(rel_err(&bergman_synthesize(&d, &x)?, &f(&x)));
            }
            Ok(worst)
        });

        let margins = quad.clone().and_then(|q| bergman_norm_margins(f, &density(data_slice, 2.0)?, &ctx.slices, q));
        let margins = margins.as_ref().map_err(Clone::clone);
        rec.check(format!("forward-margin-equality-case {entry} p=2"), anchor::BERGMAN_NORM, Relation::AtMost, th.bergman_margin, || {
            Ok(margins.clone()?.forward.abs())
        });
        rec.check(format!("converse-margin-equality-case {entry} p=2"), anchor::BERGMAN_NORM, Relation::AtMost, th.bergman_margin, || {
            margins.clone()?.converse.map(f64::abs).ok_or(crate::Error::ZeroFunction)
        });
        for &p in cfg.p_list.iter().filter(|&&p| p != 2.0) {
            rec.check(format!("forward-margin {entry} p={p}"), anchor::BERGMAN_NORM, Relation::AtLeast, -th.bergman_margin, || {
                Ok(bergman_norm_margins(f, &density(data_slice, p)?, &ctx.slices, quad.clone()?)?.forward)
            });
        }

        let extracted: Result<Vec<BergmanDensity>> = DELTAS
            .iter()
            .map(|&delta| {
                let shifted = |x: &Paravector| f(&Paravector::new(x.x0 + delta, x.xvec.clone()).expect("same dimension"));
                let bd = HardyBoundaryData::sample(shifted, data_slice, 0.0, g.extract_v.symmetric(), 2.0)?;
                bergman_density_extract(&bd, delta, &g.extract_w.symmetric(), tol)
            })
            .collect();
        let extracted = extracted.as_ref().map_err(Clone::clone);
        let window = Interval::new(-g.extract_w.extent, 0.0);
        rec.check(format!("density-delta-independence {entry}"), anchor::BERGMAN_PW, Relation::AtMost, th.delta_independence, || {
            let ds = extracted.clone()?;
            let mut worst = 0.0f64;
            for i in 0..ds.len() {
                for j in i + 1..ds.len() {
                    worst = worst.max(density_discrepancy(&ds[i], &ds[j], window)?);
                }
            }
            Ok(worst)
        });
        rec.check(format!("density-extraction-vs-closed-form {entry}"), anchor::BERGMAN_PW, Relation::AtMost, th.delta_independence, || {
            let ds = extracted.clone()?;
            // the node w = 0 carries the whole truncated tail ∫_{|v|>V} f(δ + Iv) dv
            // of the boundary integral, about 2/(√2π V) here, so it is left out
            let window = Interval::new(window.lo, -0.5 * ds[0].grid.spacing());
            let exact = BergmanDensity::from_fn(data_slice.clone(), ds[0].grid, 2.0, |w| {
                Multivector::scalar(n, entry.transform(w)).expect("validated dimension")
            })?;
            Ok(ds.iter().map(|d| density_discrepancy(&exact, d, window)).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max))
        });

        let probes: Vec<Paravector> = (0..2 * POINTWISE_PROBES)
            .map(|k| probe(&mut rng, &ctx.slices[k % ctx.slices.len()], (0.25, 4.0), (-4.0, 4.0)))
            .collect();
        for &p in &cfg.p_list {
            for (label, exponents) in [("sharp", PointwiseExponents::Sharp), ("stated", PointwiseExponents::Stated)] {
                rec.check(
                    format!("pointwise-constant-stability {entry} p={p} {label}"),
                    anchor::BERGMAN_POINTWISE,
                    Relation::AtMost,
                    th.pointwise_stability,
                    || {
                        let q = quad.clone()?;
                        let norm = bergman_norm(f, p, &ctx.slices, q)?.value;
                        let base = bergman_pointwise_margins(f, p, norm, &probes[..POINTWISE_PROBES], q, exponents)?.constant();
                        let doubled = bergman_pointwise_margins(f, p, norm, &probes, q, exponents)?.constant();
                        Ok((doubled - base).abs() / doubled)
                    },
                );
            }
        }
        rec.check(format!("norm-slice-spread {entry}"), anchor::BERGMAN_NORM, Relation::AtMost, tol.identity_tol, || {
            let r = bergman_norm(f, 2.0, &ctx.slices, quad.clone()?)?;
            Ok(r.spread() / r.value)
        });
    }
}
