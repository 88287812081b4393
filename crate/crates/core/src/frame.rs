//! Orthonormal frames `I_1, …, I_n` of unit imaginaries and the induced blade
//! basis `I_A` of the whole algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{mv_mul, BladeIndex, ImaginaryUnit, Multivector};
use crate::error::{Error, Result};
use crate::linalg::LuFactors;

/// Draws per frame slot before giving up on a degenerate candidate.
const MAX_DRAWS_PER_SLOT: usize = 16;

/// An orthonormal frame: `I_r I_s + I_s I_r = -2 δ_rs`, `I_1` the seed unit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisFrame {
    units: Vec<ImaginaryUnit>,
}

impl BasisFrame {
    /// The frame `e_1, …, e_n`.
    pub fn standard(n: usize) -> Result<Self> {
        let units = (1..=n).map(|i| ImaginaryUnit::basis(n, i)).collect::<Result<_>>()?;
        Ok(Self { units })
    }

    /// Wraps explicit units after checking orthonormality to 1e-12.
    pub fn from_units(units: Vec<ImaginaryUnit>) -> Result<Self> {
        let frame = Self { units };
        let defect = frame.orthonormality_defect();
        if frame.units.is_empty() || frame.units.len() != frame.units[0].dim() || defect > 1e-12 {
            return Err(Error::FrameInvalid(format!(
                "{} units, orthonormality defect {defect:e}",
                frame.units.len()
            )));
        }
        Ok(frame)
    }

    pub fn dim(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[ImaginaryUnit] {
        &self.units
    }

    /// `I_k`, 1-based.
    pub fn unit(&self, k: usize) -> &ImaginaryUnit {
        &self.units[k - 1]
    }

    /// Largest coefficient deviation of `I_r I_s + I_s I_r` from `-2 δ_rs`,
    /// computed with full geometric products.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.units.len();
        let mvs: Vec<Multivector> = self.units.iter().map(|u| u.to_multivector()).collect();
        let mut worst = 0.0f64;
        for r in 0..n {
            for s in 0..n {
                let mut acc = &mvs[r] * &mvs[s];
                acc += &(&mvs[s] * &mvs[r]);
                if r == s {
                    acc.coeffs_mut()[0] += 2.0;
                }
                worst = worst.max(acc.coeffs().iter().fold(0.0, |m, c| m.max(c.abs())));
            }
        }
        worst
    }
}

/// Completes `seed` to an orthonormal frame by Gram–Schmidt over seeded
/// pseudo-random candidate vectors.
pub fn complete_basis(seed: &ImaginaryUnit, rng_seed: u64) -> Result<BasisFrame> {
    let n = seed.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut vecs: Vec<Vec<f64>> = vec![seed.components().to_vec()];
    let mut failures = 0usize;
    while vecs.len() < n {
        let mut accepted = false;
        for _ in 0..MAX_DRAWS_PER_SLOT {
            let mut cand: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let start = cand.iter().map(|c| c * c).sum::<f64>().sqrt();
            // two passes of classical Gram–Schmidt keep orthogonality at rounding level
            for _ in 0..2 {
                for q in &vecs {
                    let d: f64 = cand.iter().zip(q).map(|(a, b)| a * b).sum();
                    cand.iter_mut().zip(q).for_each(|(a, b)| *a -= d * b);
                }
            }
            let norm = cand.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-8 * start.max(f64::MIN_POSITIVE) {
                vecs.push(cand.iter().map(|c| c / norm).collect());
                accepted = true;
                break;
            }
            failures += 1;
        }
        if !accepted {
            return Err(Error::DegenerateCandidate(failures));
        }
    }
    let mut units = vec![seed.clone()];
    for v in vecs.into_iter().skip(1) {
        units.push(ImaginaryUnit::new(v)?);
    }
    Ok(BasisFrame { units })
}

/// The `2^n` frame blades `I_A`, indexed by the bitmask of `A`.
pub fn frame_blades(frame: &BasisFrame) -> Vec<Multivector> {
    let n = frame.dim();
    let gens: Vec<Multivector> = frame.units.iter().map(|u| u.to_multivector()).collect();
    let mut blades: Vec<Multivector> = Vec::with_capacity(1 << n);
    blades.push(Multivector::scalar(n, 1.0).expect("frame dimension already validated"));
    for mask in 1u32..(1 << n) {
        // I_A = I_{A \ {max}} · I_max; the prefix was built earlier
        let top = 31 - mask.leading_zeros();
        let prefix = mask & !(1 << top);
        let b = mv_mul(&blades[prefix as usize], &gens[top as usize]).expect("same dimension");
        blades.push(b);
    }
    blades
}

/// Row-major `2^n × 2^n` matrix whose column `A` holds the `e`-coordinates of `I_A`.
pub fn frame_change_matrix(frame: &BasisFrame) -> Vec<f64> {
    let blades = frame_blades(frame);
    let dim = blades.len();
    let mut m = vec![0.0; dim * dim];
    for (col, b) in blades.iter().enumerate() {
        for (row, &c) in b.coeffs().iter().enumerate() {
            m[row * dim + col] = c;
        }
    }
    m
}

/// Solves `Σ_A c_A I_A = m` for many `m` against one frame.
#[derive(Clone, Debug)]
pub struct FrameSolver {
    frame: BasisFrame,
    blades: Vec<Multivector>,
    lu: LuFactors,
}

impl FrameSolver {
    pub fn new(frame: &BasisFrame) -> Result<Self> {
        let blades = frame_blades(frame);
        let dim = blades.len();
        let lu = LuFactors::new(dim, &frame_change_matrix(frame), 1e-10)
            .map_err(|e| Error::FrameInvalid(e.to_string()))?;
        Ok(Self { frame: frame.clone(), blades, lu })
    }

    pub fn frame(&self) -> &BasisFrame {
        &self.frame
    }

    pub fn blades(&self) -> &[Multivector] {
        &self.blades
    }

    pub fn coords(&self, m: &Multivector) -> Result<Vec<f64>> {
        if m.dim() != self.frame.dim() {
            return Err(Error::DimensionMismatch { left: m.dim(), right: self.frame.dim() });
        }
        Ok(self.lu.solve(m.coeffs()))
    }

    /// `Σ_A c_A I_A`.
    pub fn recompose(&self, coords: &[f64]) -> Multivector {
        let n = self.frame.dim();
        let mut out = Multivector::zero(n).expect("valid dimension");
        for (c, b) in coords.iter().zip(&self.blades) {
            if *c != 0.0 {
                out.add_scaled(*c, b);
            }
        }
        out
    }
}

/// Coordinates of `m` in the frame blade basis `I_A`.
pub fn frame_coords(m: &Multivector, frame: &BasisFrame) -> Result<Vec<f64>> {
    FrameSolver::new(frame)?.coords(m)
}

/// Convenience: blade index of `I_A` for 1-based frame indices.
pub fn frame_blade_index(indices: &[usize]) -> BladeIndex {
    BladeIndex::from_indices(indices)
}
