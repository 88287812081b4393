//! Blade products, generator relations, frames and paravector inverses.

use rand::Rng;

use crate::algebra::{blade_product, mv_mul, para_inv, BladeIndex, ImaginaryUnit, Multivector, Paravector};
use crate::error::Result;
use crate::frame::{complete_basis, FrameSolver};

use super::super::report::Relation;
use super::super::{Context, Recorder};
use super::anchor;

/// Frames checked per run.
const FRAMES: u64 = 20;
/// Largest `n` checked exhaustively.
const EXHAUSTIVE_MAX: usize = 4;

pub(super) fn run(ctx: &Context<'_>, rec: &mut Recorder) {
    let cfg = ctx.cfg;
    let n = cfg.n;
    let tol = cfg.tolerances.identity_tol;

    rec.check("blade-associativity n<=4", anchor::ALGEBRA, Relation::AtMost, 0.0, || Ok(associativity_violations() as f64));
    rec.check("generator-anticommutation n<=4", anchor::ALGEBRA, Relation::AtMost, 0.0, || {
        Ok(anticommutation_violations() as f64)
    });

    let mut rng = ctx.rng(1);
    rec.check(format!("multivector-associativity n={n}"), anchor::ALGEBRA, Relation::AtMost, tol, || {
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let (a, b, c) = (random_mv(&mut rng, n)?, random_mv(&mut rng, n)?, random_mv(&mut rng, n)?);
            let left = mv_mul(&mv_mul(&a, &b)?, &c)?;
            let right = mv_mul(&a, &mv_mul(&b, &c)?)?;
            worst = worst.max(left.max_abs_diff(&right) / left.norm().max(1.0));
        }
        Ok(worst)
    });

    rec.check(format!("paravector-inverse n={n}"), anchor::ALGEBRA, Relation::AtMost, tol, || {
        let mut worst = 0.0f64;
        let one = Multivector::scalar(n, 1.0)?;
        for _ in 0..50 {
            let x = Paravector::new(rng.gen_range(-3.0..3.0), (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect())?;
            let prod = mv_mul(&x.to_multivector(), &para_inv(&x)?.to_multivector())?;
            worst = worst.max(prod.max_abs_diff(&one));
        }
        Ok(worst)
    });

    let frames: Result<Vec<_>> = (0..FRAMES)
        .map(|k| {
            let seed = ImaginaryUnit::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())?;
            complete_basis(&seed, cfg.rng_seed.wrapping_add(k))
        })
        .collect();
    let frames = frames.as_ref();
    rec.check(format!("frame-orthonormality n={n} frames={FRAMES}"), anchor::FRAME, Relation::AtMost, cfg.thresholds.frame, || {
        Ok(frames.map_err(Clone::clone)?.iter().map(|f| f.orthonormality_defect()).fold(0.0, f64::max))
    });
    rec.check(format!("frame-coordinate-round-trip n={n}"), anchor::FRAME, Relation::AtMost, tol, || {
        let mut worst = 0.0f64;
        for frame in frames.map_err(Clone::clone)? {
            let solver = FrameSolver::new(frame)?;
            let m = random_mv(&mut rng, n)?;
            let back = solver.recompose(&solver.coords(&m)?);
            worst = worst.max(back.max_abs_diff(&m));
        }
        Ok(worst)
    });
}

fn random_mv(rng: &mut impl Rng, n: usize) -> Result<Multivector> {
    Multivector::from_coeffs(n, (0..1usize << n).map(|_| rng.gen_range(-1.0..1.0)).collect())
}

/// Triples of blades with `(ab)c ≠ a(bc)` for `n ≤ 4`.
fn associativity_violations() -> usize {
    let mut bad = 0;
    for n in 1..=EXHAUSTIVE_MAX {
        let d = 1u32 << n;
        for a in 0..d {
            for b in 0..d {
                let (s_ab, ab) = blade_product(BladeIndex(a), BladeIndex(b));
                for c in 0..d {
                    let (s_left, left) = blade_product(ab, BladeIndex(c));
                    let (s_bc, bc) = blade_product(BladeIndex(b), BladeIndex(c));
                    let (s_right, right) = blade_product(BladeIndex(a), bc);
                    if left != right || s_ab * s_left != s_bc * s_right {
                        bad += 1;
                    }
                }
            }
        }
    }
    bad
}

/// Pairs with `e_r e_s + e_s e_r ≠ −2δ_rs` for `n ≤ 4`.
fn anticommutation_violations() -> usize {
    let mut bad = 0;
    for n in 1..=EXHAUSTIVE_MAX {
        for r in 1..=n {
            for s in 1..=n {
                let (s1, rs) = blade_product(BladeIndex::generator(r), BladeIndex::generator(s));
                let (s2, sr) = blade_product(BladeIndex::generator(s), BladeIndex::generator(r));
                let ok = if r == s {
                    rs == BladeIndex::SCALAR && s1 == -1.0 && s2 == -1.0
                } else {
                    rs == sr && s1 + s2 == 0.0
                };
                if !ok {
                    bad += 1;
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_checks_find_nothing() {
        assert_eq!(associativity_violations(), 0);
        assert_eq!(anticommutation_violations(), 0);
    }
}
