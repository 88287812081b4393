//! Splitting, intrinsic decomposition, representation formula and the slice
//! Cauchy–Riemann residual.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{slice_coordinates, Multivector, Paravector};
use crate::error::Result;
use crate::frame::complete_basis;
use crate::numerics::UniformGrid;
use crate::slice::{
    alpha_beta, cr_residual, intrinsic_decompose, intrinsic_recompose, recompose_split, representation_eval,
    split_holomorphic, SampledSliceFunction, SlicePair,
};

use super::super::report::Relation;
use super::super::{Context, Recorder};
use super::{anchor, probe, rel_err, relative_spread};

/// Probes per entry for the slice-independence battery.
const PROBES: usize = 10;
/// A second-order difference scheme should gain about 4× per halving.
const CR_ORDER_RATIO: f64 = 3.5;

pub(super) fn run(ctx: &Context<'_>, rec: &mut Recorder) {
    let cfg = ctx.cfg;
    let n = cfg.n;
    let tol = cfg.tolerances.identity_tol;
    let slice = &ctx.slices[0];
    let mut rng = ctx.rng(2);
    let Some(&first) = ctx.entries.first() else { return };

    // f(x) = Σ_k h_k(x) M_k with intrinsic h_k and constant M_k is slice
    // monogenic but not intrinsic
    let consts: Vec<Multivector> = ctx
        .entries
        .iter()
        .map(|_| Multivector::from_coeffs(n, (0..1usize << n).map(|_| rng.gen_range(-1.0..1.0)).collect()))
        .collect::<Result<_>>()
        .expect("validated dimension");
    let evals: Vec<_> = ctx.entries.iter().map(|e| e.evaluator()).collect();
    let combo = |x: &Paravector| {
        let mut acc = Multivector::zero(x.dim()).expect("validated dimension");
        for (h, m) in evals.iter().zip(&consts) {
            acc += &(&h(x) * m);
        }
        acc
    };
    let u0 = 0.5;
    let vgrid = UniformGrid::symmetric(4.0, 257).expect("static grid");
    let sampled = || -> Result<(SampledSliceFunction, SampledSliceFunction)> {
        let plus = SampledSliceFunction::sample_line(combo, slice, u0, vgrid)?;
        let minus_values = vgrid.nodes().map(|v| combo(&Paravector::on_slice(u0, -v, slice))).collect();
        let minus = SampledSliceFunction::new(slice.clone(), vgrid, None, u0, minus_values)?;
        Ok((plus, minus))
    };

    rec.check("split-round-trip", anchor::SPLITTING, Relation::AtMost, tol, || {
        let frame = complete_basis(slice, cfg.rng_seed)?;
        let (plus, _) = sampled()?;
        let back = recompose_split(&split_holomorphic(&plus, &frame)?, &frame)?;
        Ok(back.iter().zip(&plus.values).map(|(a, b)| rel_err(a, b)).fold(0.0, f64::max))
    });
    rec.check("split-pythagorean-identity", anchor::SPLITTING, Relation::AtMost, tol, || {
        let frame = complete_basis(slice, cfg.rng_seed)?;
        let (plus, _) = sampled()?;
        let comps = split_holomorphic(&plus, &frame)?;
        let mut worst = 0.0f64;
        for (k, m) in plus.values.iter().enumerate() {
            let sum: f64 = comps.iter().map(|c| c.values[k].norm_sqr()).sum();
            worst = worst.max((sum - m.norm_sqr()).abs() / m.norm_sqr().max(1.0));
        }
        Ok(worst)
    });
    rec.check("intrinsic-round-trip", anchor::INTRINSIC, Relation::AtMost, tol, || {
        let frame = complete_basis(slice, cfg.rng_seed)?;
        let (plus, minus) = sampled()?;
        let back = intrinsic_recompose(&intrinsic_decompose(&plus, &minus, &frame)?, &frame)?;
        Ok(back.iter().zip(&plus.values).map(|(a, b)| rel_err(a, b)).fold(0.0, f64::max))
    });
    rec.check("intrinsic-component-bound", anchor::INTRINSIC, Relation::AtMost, tol, || {
        let frame = complete_basis(slice, cfg.rng_seed)?;
        let (plus, minus) = sampled()?;
        let comps = intrinsic_decompose(&plus, &minus, &frame)?;
        let mut excess = f64::NEG_INFINITY;
        for k in 0..plus.values.len() {
            let bound = FRAC_1_SQRT_2 * (plus.values[k].norm() + minus.values[k].norm());
            for c in &comps {
                excess = excess.max(c.values[k].norm() - bound);
            }
        }
        Ok(excess)
    });

    let thr = cfg.thresholds.slice_independence;
    for entry in &ctx.entries {
        let f = entry.evaluator();
        let points: Vec<Paravector> =
            (0..PROBES).map(|k| probe(&mut rng, &ctx.slices[k % ctx.slices.len()], (0.2, 2.0), (0.3, 2.0))).collect();
        rec.check(format!("representation-slice-independence {entry}"), anchor::REPRESENTATION, Relation::AtMost, thr, || {
            let mut worst = 0.0f64;
            for x in &points {
                let (u, v, _) = slice_coordinates(x);
                let mut values = Vec::with_capacity(ctx.slices.len() + 1);
                for i in &ctx.slices {
                    values.push(representation_eval(&SlicePair::sample(f, i, u, v), x)?);
                }
                values.push(f(x));
                worst = worst.max(relative_spread(&values));
            }
            Ok(worst)
        });
        rec.check(format!("alpha-beta-slice-independence {entry}"), anchor::REPRESENTATION, Relation::AtMost, thr, || {
            let mut worst = 0.0f64;
            for x in &points {
                let (u, v, _) = slice_coordinates(x);
                let (alphas, betas): (Vec<_>, Vec<_>) =
                    ctx.slices.iter().map(|i| alpha_beta(&SlicePair::sample(f, i, u, v))).unzip();
                worst = worst.max(relative_spread(&alphas)).max(relative_spread(&betas));
            }
            Ok(worst)
        });
    }

    let f = first.evaluator();
    rec.check(format!("cauchy-riemann-residual-order {first}"), anchor::CAUCHY_RIEMANN, Relation::AtLeast, CR_ORDER_RATIO, || {
        let coarse = cr_plane_residual(&f, slice, 0.05)?;
        let fine = cr_plane_residual(&f, slice, 0.025)?;
        Ok(coarse / fine)
    });
    rec.check("cauchy-riemann-detects-antiholomorphic", anchor::CAUCHY_RIEMANN, Relation::AtLeast, 1.0, || {
        let anti = |x: &Paravector| {
            let (u, v, k) = slice_coordinates(x);
            Multivector::from_slice_complex(Complex64::new(u, -v), &k)
        };
        cr_plane_residual(&anti, slice, 0.1)
    });
}

fn cr_plane_residual(
    f: &impl Fn(&Paravector) -> Multivector,
    slice: &crate::algebra::ImaginaryUnit,
    h: f64,
) -> Result<f64> {
    let ugrid = UniformGrid::new(0.5, 0.5 + 16.0 * h, 17)?;
    let vgrid = UniformGrid::symmetric(8.0 * h, 17)?;
    let r = cr_residual(&SampledSliceFunction::sample_plane(f, slice, ugrid, vgrid)?)?;
    Ok(r.r1.max(r.r2))
}
