//! The theorem suites. Each returns its records in a fixed order.

mod algebra;
mod bergman;
mod compact;
mod fourier;
mod hardy;
mod splitting;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ImaginaryUnit, Multivector, Paravector};
use crate::error::Result;
use crate::fourier::LineSamples;
use crate::numerics::UniformGrid;

use super::catalog::CatalogEntry;
use super::config::Suite;
use super::report::CheckRecord;
use super::{Context, Recorder};

/// Anchor strings naming the result each check exercises.
pub(crate) mod anchor {
    pub const ALGEBRA: &str = "clifford-algebra";
    pub const FRAME: &str = "orthonormal-frame";
    pub const SPLITTING: &str = "splitting-lemma";
    pub const REPRESENTATION: &str = "representation-formula";
    pub const INTRINSIC: &str = "intrinsic-decomposition";
    pub const CAUCHY_RIEMANN: &str = "slice-cauchy-riemann";
    pub const PLANCHEREL: &str = "plancherel";
    pub const HAUSDORFF_YOUNG: &str = "hausdorff-young";
    pub const FOURIER: &str = "clifford-fourier-transform";
    pub const HARDY_PW: &str = "hardy-paley-wiener";
    pub const HARDY_POISSON: &str = "hardy-poisson-representation";
    pub const HARDY_KERNEL: &str = "hardy-reproducing-kernel";
    pub const HARDY_NORM: &str = "hardy-norm";
    pub const CAUCHY_KERNEL: &str = "cauchy-kernel";
    pub const COMPACT_PW: &str = "compact-paley-wiener";
    pub const GROWTH: &str = "exponential-type-growth";
    pub const PW_KERNEL: &str = "paley-wiener-kernel";
    pub const BERGMAN_PW: &str = "bergman-paley-wiener";
    pub const BERGMAN_NORM: &str = "bergman-norm-inequality";
    pub const BERGMAN_POINTWISE: &str = "bergman-pointwise-estimate";
    pub const PLUMBING: &str = "plumbing";
}

pub(crate) fn run(suite: Suite, ctx: &Context<'_>) -> Vec<CheckRecord> {
    let mut rec = Recorder::new(suite);
    match suite {
        Suite::Algebra => algebra::run(ctx, &mut rec),
        Suite::Splitting => splitting::run(ctx, &mut rec),
        Suite::Fourier => fourier::run(ctx, &mut rec),
        Suite::Hardy => hardy::run(ctx, &mut rec),
        Suite::CompactPw => compact::run(ctx, &mut rec),
        Suite::Bergman => bergman::run(ctx, &mut rec),
    }
    rec.records
}

/// `|got − want| / |want|`, or the absolute error when `want` vanishes.
pub(crate) fn rel_err(got: &Multivector, want: &Multivector) -> f64 {
    let scale = want.norm();
    let diff = got.dist(want);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// A point `u + I v` on a slice drawn cyclically from `slices`, with `u`
/// and `v` uniform in the given ranges.
pub(crate) fn probe(rng: &mut ChaCha8Rng, slice: &ImaginaryUnit, u: (f64, f64), v: (f64, f64)) -> Paravector {
    Paravector::on_slice(rng.gen_range(u.0..u.1), rng.gen_range(v.0..v.1), slice)
}

/// `f(Iv)` on `grid` for the imaginary axis of `slice`.
pub(crate) fn boundary_samples(entry: &CatalogEntry, slice: &ImaginaryUnit, grid: UniformGrid) -> Result<LineSamples> {
    let f = entry.evaluator();
    LineSamples::from_fn(grid, |v| f(&Paravector::on_slice(0.0, v, slice)))
}

/// `f(t)` on `grid` along the real axis, as elements of `R_n`.
pub(crate) fn real_axis_samples(entry: &CatalogEntry, n: usize, grid: UniformGrid) -> Result<LineSamples> {
    let f = entry.evaluator();
    LineSamples::from_fn(grid, |t| f(&Paravector::real(n, t).expect("validated dimension")))
}

/// The natural line samples of an entry: the real axis for band-limited
/// entries and the boundary `Iℝ` otherwise.
pub(crate) fn natural_samples(entry: &CatalogEntry, slice: &ImaginaryUnit, grid: UniformGrid) -> Result<LineSamples> {
    match entry.bandwidth() {
        Some(_) => real_axis_samples(entry, slice.dim(), grid),
        None => boundary_samples(entry, slice, grid),
    }
}

/// Largest pairwise distance among `values`, relative to the largest norm.
pub(crate) fn relative_spread(values: &[Multivector]) -> f64 {
    let scale = values.iter().map(Multivector::norm).fold(0.0, f64::max);
    let mut spread = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            spread = spread.max(a.dist(b));
        }
    }
    if scale > 0.0 {
        spread / scale
    } else {
        spread
    }
}
