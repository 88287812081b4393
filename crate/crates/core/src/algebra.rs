//! Arithmetic in the real Clifford algebra `R_n` with negative-definite
//! generators `e_r e_s + e_s e_r = -2 δ_rs`.
//!
//! Basis blades are stored as bitmasks: bit `i - 1` set means the generator
//! `e_i` is present. Coefficient vectors of a [`Multivector`] are indexed by
//! that bitmask, so `coeffs[0]` is the scalar part and `coeffs[0b11]` the
//! coefficient of `e_1 e_2`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported algebra dimension.
pub const MAX_DIM: usize = 12;

/// Threshold for treating a paravector as real in [`imaginary_unit_of`].
pub const REAL_AXIS_EPS: f64 = 1e-14;

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::Dimension(n))
    }
}

/// An ordered index set `A ⊆ {1, …, n}` naming the basis blade `e_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct BladeIndex(pub u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    /// The single generator `e_i` (1-based).
    pub fn generator(i: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&i), "generator index {i} out of range");
        BladeIndex(1 << (i - 1))
    }

    /// Builds a blade from 1-based generator indices in any order.
    pub fn from_indices(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(BladeIndex(0), |acc, &i| BladeIndex(acc.0 | BladeIndex::generator(i).0))
    }

    /// Strictly increasing 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Product of two basis blades: `e_a e_b = sign · e_{a Δ b}`.
///
/// The sign counts the transpositions needed to sort the concatenated index
/// string, times `-1` for every generator that appears in both factors.
pub fn blade_product(a: BladeIndex, b: BladeIndex) -> (f64, BladeIndex) {
    let mut swaps = 0u32;
    let mut rest = a.0 >> 1;
    while rest != 0 {
        swaps += (rest & b.0).count_ones();
        rest >>= 1;
    }
    swaps += (a.0 & b.0).count_ones();
    let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    (sign, BladeIndex(a.0 ^ b.0))
}

/// Sign of the Clifford conjugate on a blade of grade `k`: `(-1)^{k(k+1)/2}`.
fn conjugation_sign(blade: BladeIndex) -> f64 {
    let k = blade.grade();
    if (k * (k + 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A Clifford number `Σ_A a_A e_A` in `R_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Multivector {
    n: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, coeffs: vec![0.0; 1 << n] })
    }

    pub fn scalar(n: usize, value: f64) -> Result<Self> {
        let mut m = Self::zero(n)?;
        m.coeffs[0] = value;
        Ok(m)
    }

    pub fn blade(n: usize, blade: BladeIndex, value: f64) -> Result<Self> {
        let mut m = Self::zero(n)?;
        let idx = blade.0 as usize;
        if idx >= m.coeffs.len() {
            return Err(Error::InvalidParameter(format!("blade {blade} does not exist in R_{n}")));
        }
        m.coeffs[idx] = value;
        Ok(m)
    }

    /// Generator `e_i` with unit coefficient.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidParameter(format!("generator e{i} does not exist in R_{n}")));
        }
        Self::blade(n, BladeIndex::generator(i), 1.0)
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                1usize << n,
                coeffs.len()
            )));
        }
        Ok(Self { n, coeffs })
    }

    /// The slice-complex number `re + I·im` as a multivector.
    pub fn from_slice_complex(z: Complex64, unit: &ImaginaryUnit) -> Self {
        let mut m = unit.to_multivector();
        m.scale_mut(z.im);
        m.coeffs[0] = z.re;
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn get(&self, blade: BladeIndex) -> f64 {
        self.coeffs.get(blade.0 as usize).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Euclidean (Frobenius) norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn scale_mut(&mut self, s: f64) {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, s: f64, other: &Multivector) {
        assert_eq!(self.n, other.n, "dimension mismatch in add_scaled");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    /// Clifford conjugation: reversion composed with the grade involution.
    /// On paravectors this is `x0 - x̲`.
    pub fn conj(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * conjugation_sign(BladeIndex(i as u32)))
            .collect();
        Self { n: self.n, coeffs }
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch in max_abs_diff");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Multivector) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch in dist");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Projects onto the paravector part, discarding grades ≥ 2.
    pub fn paravector_part(&self) -> Paravector {
        let xvec = (1..=self.n).map(|i| self.coeffs[1 << (i - 1)]).collect();
        Paravector { x0: self.coeffs[0], xvec }
    }

    /// Iterates `(blade, coefficient)` pairs with non-zero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (BladeIndex, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(i, &c)| (BladeIndex(i as u32), c))
    }
}

/// Geometric product, bilinear extension of [`blade_product`].
pub fn mv_mul(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { left: a.n, right: b.n });
    }
    let mut out = vec![0.0; a.coeffs.len()];
    for (i, &ca) in a.coeffs.iter().enumerate() {
        if ca == 0.0 {
            continue;
        }
        for (j, &cb) in b.coeffs.iter().enumerate() {
            if cb == 0.0 {
                continue;
            }
            let (sign, blade) = blade_product(BladeIndex(i as u32), BladeIndex(j as u32));
            out[blade.0 as usize] += sign * ca * cb;
        }
    }
    Ok(Multivector { n: a.n, coeffs: out })
}

impl Mul for &Multivector {
    type Output = Multivector;

    /// Panics on dimension mismatch; use [`mv_mul`] for the fallible form.
    fn mul(self, rhs: &Multivector) -> Multivector {
        mv_mul(self, rhs).expect("multivector dimension mismatch")
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, rhs: f64) -> Multivector {
        self.scale_mut(rhs);
        self
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += &rhs;
        self
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(mut self) -> Multivector {
        self.scale_mut(-1.0);
        self
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (blade, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if blade == BladeIndex::SCALAR {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}{blade}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A point `x = x0 + x1 e1 + … + xn en` of `R^{n+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Paravector {
    pub x0: f64,
    pub xvec: Vec<f64>,
}

impl Paravector {
    pub fn new(x0: f64, xvec: Vec<f64>) -> Result<Self> {
        check_dim(xvec.len())?;
        Ok(Self { x0, xvec })
    }

    pub fn real(n: usize, x0: f64) -> Result<Self> {
        Self::new(x0, vec![0.0; n])
    }

    /// The point `u + I v` on the slice of `unit`.
    pub fn on_slice(u: f64, v: f64, unit: &ImaginaryUnit) -> Self {
        Self { x0: u, xvec: unit.uvec.iter().map(|c| c * v).collect() }
    }

    pub fn dim(&self) -> usize {
        self.xvec.len()
    }

    /// `|x̲|`.
    pub fn vector_norm(&self) -> f64 {
        self.xvec.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.x0 * self.x0 + self.xvec.iter().map(|c| c * c).sum::<f64>()).sqrt()
    }

    pub fn to_multivector(&self) -> Multivector {
        let n = self.dim();
        let mut coeffs = vec![0.0; 1 << n];
        coeffs[0] = self.x0;
        for (i, &c) in self.xvec.iter().enumerate() {
            coeffs[1 << i] = c;
        }
        Multivector { n, coeffs }
    }
}

pub fn para_conj(x: &Paravector) -> Paravector {
    Paravector { x0: x.x0, xvec: x.xvec.iter().map(|c| -c).collect() }
}

pub fn para_norm(x: &Paravector) -> f64 {
    x.norm()
}

/// `x⁻¹ = x̄ / |x|²`.
pub fn para_inv(x: &Paravector) -> Result<Paravector> {
    let n2 = x.x0 * x.x0 + x.xvec.iter().map(|c| c * c).sum::<f64>();
    if n2 == 0.0 {
        return Err(Error::Singular("paravector inverse of zero"));
    }
    let c = para_conj(x);
    Ok(Paravector { x0: c.x0 / n2, xvec: c.xvec.iter().map(|v| v / n2).collect() })
}

/// A unit 1-vector `I ∈ 𝕊`, so that `I² = -1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImaginaryUnit {
    uvec: Vec<f64>,
}

impl ImaginaryUnit {
    /// Normalizes `v`; fails for the zero vector.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        check_dim(v.len())?;
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnit(norm * norm));
        }
        Ok(Self { uvec: v.iter().map(|c| c / norm).collect() })
    }

    /// Accepts `v` only if it already has unit length (within 1e-12).
    pub fn from_unit(v: Vec<f64>) -> Result<Self> {
        check_dim(v.len())?;
        let n2 = v.iter().map(|c| c * c).sum::<f64>();
        if (n2 - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit(n2));
        }
        Ok(Self { uvec: v })
    }

    /// The generator `e_i` viewed as a unit imaginary.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        check_dim(n)?;
        if i == 0 || i > n {
            return Err(Error::InvalidParameter(format!("generator e{i} does not exist in R_{n}")));
        }
        let mut v = vec![0.0; n];
        v[i - 1] = 1.0;
        Ok(Self { uvec: v })
    }

    pub fn dim(&self) -> usize {
        self.uvec.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.uvec
    }

    pub fn negated(&self) -> Self {
        Self { uvec: self.uvec.iter().map(|c| -c).collect() }
    }

    pub fn to_multivector(&self) -> Multivector {
        Paravector { x0: 0.0, xvec: self.uvec.clone() }.to_multivector()
    }

    /// `I · m`, in `O(n 2^n)` without forming the full product table.
    pub fn left_mul(&self, m: &Multivector) -> Multivector {
        assert_eq!(self.dim(), m.dim(), "multivector dimension mismatch");
        let mut out = vec![0.0; m.coeffs.len()];
        self.left_mul_into(&m.coeffs, &mut out);
        Multivector { n: m.n, coeffs: out }
    }

    /// Accumulates `I · m` into `out` for raw coefficient slices.
    pub(crate) fn left_mul_into(&self, m: &[f64], out: &mut [f64]) {
        for (k, &uk) in self.uvec.iter().enumerate() {
            if uk == 0.0 {
                continue;
            }
            let g = 1u32 << k;
            for (j, &c) in m.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let j = j as u32;
                // e_k e_B: (-1)^{#(B below k)} moves e_k into place; e_k² = -1 if k ∈ B
                let below = (j & (g - 1)).count_ones();
                let mut sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                if j & g != 0 {
                    sign = -sign;
                }
                out[(j ^ g) as usize] += sign * uk * c;
            }
        }
    }

    pub fn dot(&self, other: &ImaginaryUnit) -> f64 {
        self.uvec.iter().zip(&other.uvec).map(|(a, b)| a * b).sum()
    }
}

/// `I_x = x̲ / |x̲|`, with the canonical `e_1` on (numerically) real points.
pub fn imaginary_unit_of(x: &Paravector) -> ImaginaryUnit {
    let vn = x.vector_norm();
    if vn <= REAL_AXIS_EPS * (1.0 + x.norm()) {
        let mut v = vec![0.0; x.dim()];
        v[0] = 1.0;
        return ImaginaryUnit { uvec: v };
    }
    ImaginaryUnit { uvec: x.xvec.iter().map(|c| c / vn).collect() }
}

/// Decomposes `x` as `u + I v` with `v = |x̲| ≥ 0` and `I = I_x`.
pub fn slice_coordinates(x: &Paravector) -> (f64, f64, ImaginaryUnit) {
    (x.x0, x.vector_norm(), imaginary_unit_of(x))
}
