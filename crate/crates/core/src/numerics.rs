//! Grids, quadrature weights, norms and half-line truncation.
//!
//! Transform integrands use composite Simpson; norms use the trapezoid rule,
//! which tolerates endpoint kinks.

use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// Tolerances shared by every check in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub quadrature_tol: f64,
    pub identity_tol: f64,
    pub theorem_tol: f64,
    pub support_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { quadrature_tol: 1e-9, identity_tol: 1e-10, theorem_tol: 1e-6, support_tol: 1e-6 }
    }
}

/// `count` equally spaced nodes from `lo` to `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    lo: f64,
    hi: f64,
    count: usize,
}

impl UniformGrid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyGrid);
        }
        if count < 2 {
            return Err(Error::TooFewNodes { need: 2, got: count });
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Grid(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi, count })
    }

    /// Grid on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        Self::new(-half_width, half_width, count)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        // interpolate from both ends so the last node is exactly `hi`
        let t = i as f64 / (self.count - 1) as f64;
        self.lo * (1.0 - t) + self.hi * t
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.node(i))
    }

    /// True when the nodes are mirror images about zero (node `i` = −node `N−1−i`).
    pub fn is_symmetric(&self) -> bool {
        (self.lo + self.hi).abs() <= 1e-12 * self.hi.abs().max(1.0)
    }

    /// Index of the node equal to zero, if there is one.
    pub fn zero_index(&self) -> Option<usize> {
        let h = self.spacing();
        let k = (-self.lo / h).round();
        if k < 0.0 || k as usize >= self.count {
            return None;
        }
        let k = k as usize;
        (self.node(k).abs() <= 1e-9 * h).then_some(k)
    }

    /// Doubles the resolution: `2(count−1)+1` nodes on the same interval.
    pub fn refined(&self) -> Self {
        Self { lo: self.lo, hi: self.hi, count: 2 * (self.count - 1) + 1 }
    }

    /// Sub-grid of nodes `start..=end` (inclusive).
    pub fn sub(&self, start: usize, end: usize) -> Result<Self> {
        if end >= self.count || end <= start {
            return Err(Error::Grid(format!("invalid sub-range {start}..={end}")));
        }
        Ok(Self { lo: self.node(start), hi: self.node(end), count: end - start + 1 })
    }
}

/// Composite Simpson weights. Odd counts use the classical 1-4-2-…-4-1 rule;
/// even counts close the last three intervals with Simpson's 3/8 rule.
pub fn simpson_weights(count: usize, h: f64) -> Result<Vec<f64>> {
    if count < 3 {
        return Err(Error::TooFewNodes { need: 3, got: count });
    }
    let mut w = vec![0.0; count];
    let simpson_end = if count % 2 == 1 { count - 1 } else { count - 4 };
    let mut i = 0;
    while i < simpson_end {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
        i += 2;
    }
    if count % 2 == 0 {
        let s = simpson_end;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    Ok(w)
}

pub fn trapezoid_weights(count: usize, h: f64) -> Vec<f64> {
    let mut w = vec![h; count];
    if let Some(first) = w.first_mut() {
        *first = h / 2.0;
    }
    if count > 1 {
        w[count - 1] = h / 2.0;
    }
    w
}

/// Composite Simpson integral of multivector samples.
pub fn integrate_simpson(grid: &UniformGrid, values: &[Multivector]) -> Result<Multivector> {
    if values.len() != grid.count() {
        return Err(Error::Grid(format!("{} values for {} nodes", values.len(), grid.count())));
    }
    let weights = simpson_weights(grid.count(), grid.spacing())?;
    let mut acc = Multivector::zero(values[0].dim())?;
    for (w, v) in weights.iter().zip(values) {
        acc.add_scaled(*w, v);
    }
    Ok(acc)
}

/// Composite Simpson integral of real samples.
pub fn integrate_simpson_real(grid: &UniformGrid, values: &[f64]) -> Result<f64> {
    if values.len() != grid.count() {
        return Err(Error::Grid(format!("{} values for {} nodes", values.len(), grid.count())));
    }
    let weights = simpson_weights(grid.count(), grid.spacing())?;
    Ok(weights.iter().zip(values).map(|(w, v)| w * v).sum())
}

pub fn integrate_trapezoid_real(grid: &UniformGrid, values: &[f64]) -> f64 {
    trapezoid_weights(grid.count(), grid.spacing()).iter().zip(values).map(|(w, v)| w * v).sum()
}

/// Trapezoid-weighted `L^p` norm of samples; `p = ∞` gives the max node norm.
pub fn lp_norm(grid: &UniformGrid, values: &[Multivector], p: f64) -> Result<f64> {
    let norms: Vec<f64> = values.iter().map(Multivector::norm).collect();
    lp_norm_of_magnitudes(grid, &norms, p)
}

/// As [`lp_norm`], for precomputed pointwise magnitudes.
pub fn lp_norm_of_magnitudes(grid: &UniformGrid, magnitudes: &[f64], p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("L^p norm needs p >= 1, got {p}")));
    }
    if magnitudes.len() != grid.count() {
        return Err(Error::Grid(format!("{} values for {} nodes", magnitudes.len(), grid.count())));
    }
    if p.is_infinite() {
        return Ok(magnitudes.iter().fold(0.0, |m, &v| m.max(v)));
    }
    let w = trapezoid_weights(grid.count(), grid.spacing());
    let s: f64 = w.iter().zip(magnitudes).map(|(w, m)| w * m.powf(p)).sum();
    Ok(s.powf(1.0 / p))
}

/// Truncation of `∫_{-∞}^0 e^{decay·w} g(w) dw` to `[-W, 0]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfLinePlan {
    pub decay_rate: f64,
    pub tol: f64,
    pub mass_bound: f64,
    pub cutoff: f64,
    pub nodes: usize,
}

pub const MIN_HALFLINE_NODES: usize = 65;
pub const MAX_HALFLINE_NODES: usize = 1 << 20;

impl HalfLinePlan {
    /// `W = ln(mass_bound / tol) / decay_rate`, so that
    /// `mass_bound · e^{-decay·W} = tol`.
    pub fn new(decay_rate: f64, tol: f64, density: f64, mass_bound: f64) -> Result<Self> {
        if !(decay_rate > 0.0) || !decay_rate.is_finite() {
            return Err(Error::CannotTruncate(decay_rate));
        }
        if !(tol > 0.0) || !(density > 0.0) || !(mass_bound > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "half-line plan needs positive tol, density and mass bound (got {tol}, {density}, {mass_bound})"
            )));
        }
        let cutoff = (mass_bound / tol).ln().max(0.0) / decay_rate;
        let raw = (cutoff * density).ceil();
        let mut nodes = if raw.is_finite() { raw as usize } else { MAX_HALFLINE_NODES };
        nodes = nodes.clamp(MIN_HALFLINE_NODES, MAX_HALFLINE_NODES);
        if nodes % 2 == 0 {
            nodes += 1;
        }
        Ok(Self { decay_rate, tol, mass_bound, cutoff, nodes })
    }

    /// Grid on `[-W, 0]`.
    pub fn grid(&self) -> Result<UniformGrid> {
        UniformGrid::new(-self.cutoff.max(f64::MIN_POSITIVE), 0.0, self.nodes)
    }

    /// `mass_bound · e^{-decay·W} / decay`, the discarded tail bound.
    pub fn tail_bound(&self) -> f64 {
        self.mass_bound * (-self.decay_rate * self.cutoff).exp() / self.decay_rate
    }
}

/// [`HalfLinePlan::new`] with a unit mass bound.
pub fn plan_halfline(decay_rate: f64, tol: f64, density: f64) -> Result<HalfLinePlan> {
    HalfLinePlan::new(decay_rate, tol, density, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn scalar_samples(grid: &UniformGrid, f: impl Fn(f64) -> f64) -> Vec<Multivector> {
        grid.nodes().map(|x| Multivector::scalar(1, f(x)).unwrap()).collect()
    }

    #[test]
    fn grid_basics() {
        let g = UniformGrid::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.node(4), 1.0);
        assert_eq!(g.zero_index(), Some(2));
        assert!(g.is_symmetric());
        assert_eq!(g.refined().count(), 9);
        assert!(UniformGrid::new(1.0, 0.0, 5).is_err());
        assert_eq!(UniformGrid::new(0.0, 1.0, 0), Err(Error::EmptyGrid));
    }

    #[test]
    fn simpson_constant_and_cubic() {
        let g = UniformGrid::new(0.0, 1.0, 11).unwrap();
        let one = integrate_simpson(&g, &scalar_samples(&g, |_| 1.0)).unwrap();
        assert!((one.scalar_part() - 1.0).abs() < 1e-15);
        let sq = integrate_simpson(&g, &scalar_samples(&g, |v| v * v)).unwrap();
        assert!((sq.scalar_part() - 1.0 / 3.0).abs() < 1e-15);
        let cube = integrate_simpson_real(&g, &g.nodes().map(|v| v * v * v).collect::<Vec<_>>()).unwrap();
        assert!((cube - 0.25).abs() < 1e-15);
    }

    #[test]
    fn simpson_even_count_exact_on_cubics() {
        for count in [4, 6, 10, 20] {
            let g = UniformGrid::new(0.0, 2.0, count).unwrap();
            let vals: Vec<f64> = g.nodes().map(|v| v * v * v - v).collect();
            assert!((integrate_simpson_real(&g, &vals).unwrap() - 2.0).abs() < 1e-13, "count {count}");
        }
    }

    #[test]
    fn simpson_sine() {
        let g = UniformGrid::new(0.0, PI, 65).unwrap();
        let s = integrate_simpson(&g, &scalar_samples(&g, f64::sin)).unwrap();
        // composite Simpson error ≈ π h⁴ / 180 ≈ 1e-7 at h = π/64
        assert!((s.scalar_part() - 2.0).abs() < 2e-7);
    }

    #[test]
    fn simpson_too_few_nodes() {
        let g = UniformGrid::new(0.0, 1.0, 2).unwrap();
        assert!(matches!(
            integrate_simpson(&g, &scalar_samples(&g, |_| 1.0)),
            Err(Error::TooFewNodes { need: 3, got: 2 })
        ));
    }

    #[test]
    fn simpson_gaussian_convergence() {
        // erf(8) is 1 to double precision
        let exact = PI.sqrt();
        let mut prev: Option<f64> = None;
        let mut count = 33;
        while count <= 1025 {
            let g = UniformGrid::new(-8.0, 8.0, count).unwrap();
            let vals: Vec<f64> = g.nodes().map(|v| (-v * v).exp()).collect();
            let err = (integrate_simpson_real(&g, &vals).unwrap() - exact).abs();
            if let Some(p) = prev {
                if p > 1e-13 {
                    assert!(err * 15.0 <= p || err < 1e-13, "count {count}: {p:e} -> {err:e}");
                }
            }
            prev = Some(err);
            count = 2 * (count - 1) + 1;
        }
    }

    #[test]
    fn lp_norm_examples() {
        let g = UniformGrid::new(0.0, 1.0, 101).unwrap();
        let ones = scalar_samples(&g, |_| 1.0);
        for p in [1.0, 1.5, 2.0, f64::INFINITY] {
            assert!((lp_norm(&g, &ones, p).unwrap() - 1.0).abs() < 1e-14);
        }
        let g = UniformGrid::new(-200.0, 200.0, 16385).unwrap();
        let rational = scalar_samples(&g, |v| 1.0 / (1.0 + v * v));
        let l2 = lp_norm(&g, &rational, 2.0).unwrap();
        assert!((l2 - (PI / 2.0).sqrt()).abs() < 1e-6, "{l2}");
        let peak = lp_norm(&g, &rational, f64::INFINITY).unwrap();
        assert_eq!(peak, 1.0);
        assert!(lp_norm(&g, &rational, 0.5).is_err());
    }

    #[test]
    fn lp_norm_homogeneous() {
        let g = UniformGrid::new(-3.0, 3.0, 61).unwrap();
        let f = scalar_samples(&g, |v| (v * 1.3).cos() + 0.2);
        let base = lp_norm(&g, &f, 1.5).unwrap();
        let scaled: Vec<Multivector> = f.iter().map(|m| m.scale(-2.5)).collect();
        let got = lp_norm(&g, &scaled, 1.5).unwrap();
        assert!((got - 2.5 * base).abs() <= 4.0 * f64::EPSILON * got);
    }

    #[test]
    fn halfline_plan_cutoffs() {
        let p = plan_halfline(1.0, 1e-12, 10.0).unwrap();
        assert!((p.cutoff - 1e12f64.ln()).abs() < 1e-12);
        assert!((p.cutoff - 27.631).abs() < 1e-3);
        let q = plan_halfline(10.0, 1e-12, 10.0).unwrap();
        assert!((q.cutoff - 2.7631).abs() < 1e-4);
        assert_eq!(q.nodes, 65);
        assert!(matches!(plan_halfline(0.0, 1e-12, 10.0), Err(Error::CannotTruncate(_))));
        assert!(matches!(plan_halfline(-1.0, 1e-12, 10.0), Err(Error::CannotTruncate(_))));
    }

    #[test]
    fn halfline_tail_guarantee() {
        for (decay, mass) in [(0.5, 1.0), (2.0, 3.0), (7.0, 0.1)] {
            let plan = HalfLinePlan::new(decay, 1e-10, 20.0, mass).unwrap();
            // ∫_{-∞}^{-W} mass e^{decay w} dw in closed form
            let tail = mass * (-decay * plan.cutoff).exp() / decay;
            assert!(tail <= plan.tol / decay * (1.0 + 1e-12));
            assert!((plan.tail_bound() - tail).abs() <= 1e-24);
        }
    }
}
