//! Closed-form test functions paired with their spectra or densities.
//!
//! | family            | `f(z)`                 | transform on its support                      |
//! |-------------------|------------------------|-----------------------------------------------|
//! | hardy-rational    | `1/(z+a)^k`            | `√(2π)(−w)^{k−1} e^{aw}/(k−1)!`, `w ≤ 0`     |
//! | bandlimited-sinc  | `sin(Bz)/z`            | `√(π/2)` on `[−B, B]`                         |
//! | bergman-rational  | `(1/√2π)/(z+a)²`       | density `g(w) = (−w) e^{aw}`, `w ≤ 0`         |
//! | negative-control  | `1/(1−z²)`             | `√(π/2) e^{−|w|}` (two-sided)                 |
//!
//! The first three come from `∫_0^∞ t^{k−1} e^{−(z+a)t} dt = (k−1)!/(z+a)^k`
//! and `∫_{−B}^{B} e^{izw} dw = 2 sin(Bz)/z`; the last restricts to
//! `1/(1+v²)` on the imaginary axis, whose transform is two-sided. Every
//! function is intrinsic, so `f(u + Iv) = Re f(u+iv) + I Im f(u+iv)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{imaginary_unit_of, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::numerics::{integrate_simpson_real, UniformGrid};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Family of a catalog entry with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum CatalogEntry {
    HardyRational { a: f64, k: u32 },
    BandlimitedSinc { b: f64 },
    BergmanRational { a: f64 },
    NegativeControl,
}

/// Where the transform of an entry lives and what it represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformKind {
    /// Spectrum of the boundary values `f(Iv)`.
    BoundarySpectrum,
    /// Spectrum of the real-axis values `f(u)`.
    RealAxisSpectrum,
    /// Half-line density `g` with `f(x) = (1/√2π) ∫_{-∞}^0 e^{xw} g(w) dw`.
    HalfLineDensity,
}

impl CatalogEntry {
    pub fn new(self) -> Result<Self> {
        match self {
            Self::HardyRational { a, k } if !(a > 0.0) || !(1..=3).contains(&k) => {
                Err(Error::InvalidParameter(format!("hardy-rational needs a > 0 and k in 1..=3, got a = {a}, k = {k}")))
            }
            Self::BandlimitedSinc { b } if !(b > 0.0) => {
                Err(Error::InvalidParameter(format!("bandlimited-sinc needs B > 0, got {b}")))
            }
            Self::BergmanRational { a } if !(a > 0.0) => {
                Err(Error::InvalidParameter(format!("bergman-rational needs a > 0, got {a}")))
            }
            other => Ok(other),
        }
    }

    /// The entries listed by `list-catalog` and used by default runs.
    pub fn defaults() -> Vec<Self> {
        vec![
            Self::HardyRational { a: 1.0, k: 1 },
            Self::HardyRational { a: 1.0, k: 2 },
            Self::HardyRational { a: 1.0, k: 3 },
            Self::BandlimitedSinc { b: 1.0 },
            Self::BergmanRational { a: 1.0 },
            Self::NegativeControl,
        ]
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::HardyRational { .. } => "hardy-rational",
            Self::BandlimitedSinc { .. } => "bandlimited-sinc",
            Self::BergmanRational { .. } => "bergman-rational",
            Self::NegativeControl => "negative-control",
        }
    }

    pub fn transform_kind(&self) -> TransformKind {
        match self {
            Self::HardyRational { .. } | Self::NegativeControl => TransformKind::BoundarySpectrum,
            Self::BandlimitedSinc { .. } => TransformKind::RealAxisSpectrum,
            Self::BergmanRational { .. } => TransformKind::HalfLineDensity,
        }
    }

    /// The complex function whose slice extension is the entry.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        match *self {
            Self::HardyRational { a, k } => 1.0 / (z + a).powu(k),
            Self::BandlimitedSinc { b } => {
                if z.norm() < 1e-8 {
                    // sin(Bz)/z = B − B³z²/6 + O(z⁴)
                    Complex64::new(b, 0.0) - z * z * (b * b * b / 6.0)
                } else {
                    (z * b).sin() / z
                }
            }
            Self::BergmanRational { a } => (1.0 / SQRT_2PI) / ((z + a) * (z + a)),
            Self::NegativeControl => 1.0 / (1.0 - z * z),
        }
    }

    /// `f` on paravectors of `ℝ^{n+1}`.
    pub fn evaluator(&self) -> impl Fn(&Paravector) -> Multivector + Send + Sync + Copy {
        let entry = *self;
        move |x: &Paravector| {
            let unit = imaginary_unit_of(x);
            Multivector::from_slice_complex(entry.eval_complex(Complex64::new(x.x0, x.vector_norm())), &unit)
        }
    }

    /// The closed-form transform at `w` (scalar-valued for every entry).
    pub fn transform(&self, w: f64) -> f64 {
        match *self {
            Self::HardyRational { a, k } => {
                if w > 0.0 {
                    0.0
                } else {
                    let fact = (1..k).product::<u32>() as f64;
                    SQRT_2PI * (-w).powi(k as i32 - 1) * (a * w).exp() / fact
                }
            }
            Self::BandlimitedSinc { b } => {
                if w.abs() <= b {
                    FRAC_PI_2.sqrt()
                } else {
                    0.0
                }
            }
            Self::BergmanRational { a } => {
                if w > 0.0 {
                    0.0
                } else {
                    -w * (a * w).exp()
                }
            }
            Self::NegativeControl => FRAC_PI_2.sqrt() * (-w.abs()).exp(),
        }
    }

    /// Whether the boundary values `f(Iv)` are those of a Hardy function.
    pub fn is_hardy(&self) -> bool {
        matches!(self, Self::HardyRational { .. } | Self::BergmanRational { .. })
    }

    /// Bandwidth of real-axis spectra.
    pub fn bandwidth(&self) -> Option<f64> {
        match *self {
            Self::BandlimitedSinc { b } => Some(b),
            _ => None,
        }
    }

    /// Rebuilds `f` at `z` from the closed-form transform by dense Simpson
    /// quadrature, independently of [`CatalogEntry::eval_complex`].
    pub fn transform_reconstruction(&self, z: Complex64) -> Result<Complex64> {
        // ∫ e^{zw} T(w) dw over the transform's support, split into real and
        // imaginary parts of the integrand
        let (grid, kernel): (UniformGrid, Box<dyn Fn(f64) -> Complex64>) = match *self {
            Self::HardyRational { a, .. } | Self::BergmanRational { a } => {
                let decay = a + z.re;
                if !(decay > 0.0) {
                    return Err(Error::OutsideDomain(format!("Re z = {} is not in the half-space", z.re)));
                }
                let cutoff = 60.0 / decay;
                (UniformGrid::new(-cutoff, 0.0, 400_001)?, Box::new(move |w: f64| (z * w).exp()))
            }
            Self::BandlimitedSinc { b } => {
                (UniformGrid::new(-b, b, 200_001)?, Box::new(move |w: f64| (Complex64::i() * z * w).exp()))
            }
            Self::NegativeControl => {
                // the boundary trace 1/(1+v²) at z = iv: ∫ e^{ivw} T(w) dw
                (UniformGrid::symmetric(60.0, 1_200_001)?, Box::new(move |w: f64| (z * w).exp()))
            }
        };
        let (re, im): (Vec<f64>, Vec<f64>) = grid
            .nodes()
            .map(|w| {
                let k = kernel(w) * self.transform(w);
                (k.re, k.im)
            })
            .unzip();
        let sum = Complex64::new(integrate_simpson_real(&grid, &re)?, integrate_simpson_real(&grid, &im)?);
        Ok(sum / SQRT_2PI)
    }

    /// Interior test points for the oracle self-check.
    fn oracle_points(&self) -> Vec<Complex64> {
        match self {
            Self::NegativeControl => [0.0, 0.5, -1.3, 2.0].iter().map(|&v| Complex64::new(0.0, v)).collect(),
            Self::BandlimitedSinc { .. } => {
                [(0.0, 0.0), (0.7, 0.0), (-2.5, 0.4), (1.0, -1.2)].iter().map(|&(u, v)| Complex64::new(u, v)).collect()
            }
            _ => [(0.5, 0.0), (1.0, 0.7), (0.3, -2.0), (2.0, 3.0)].iter().map(|&(u, v)| Complex64::new(u, v)).collect(),
        }
    }

    /// Largest relative mismatch between the closed-form function and its
    /// dense-quadrature reconstruction from the closed-form transform.
    pub fn oracle_defect(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for z in self.oracle_points() {
            let exact = self.eval_complex(z);
            let rebuilt = self.transform_reconstruction(z)?;
            worst = worst.max((exact - rebuilt).norm() / exact.norm().max(1e-300));
        }
        Ok(worst)
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HardyRational { a, k } => write!(f, "hardy-rational a={a} k={k}"),
            Self::BandlimitedSinc { b } => write!(f, "bandlimited-sinc B={b}"),
            Self::BergmanRational { a } => write!(f, "bergman-rational a={a}"),
            Self::NegativeControl => write!(f, "negative-control"),
        }
    }
}

impl FromStr for CatalogEntry {
    type Err = Error;

    /// Parses names such as `hardy-rational a=1 k=2` or `bandlimited-sinc B=1`.
    fn from_str(name: &str) -> Result<Self> {
        let mut parts = name.split_whitespace();
        let family = parts.next().unwrap_or("");
        let mut a = None;
        let mut k = None;
        let mut b = None;
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("catalog parameter `{part}` is not key=value")))?;
            let bad = || Error::InvalidParameter(format!("catalog parameter `{part}` has an invalid value"));
            match key {
                "a" => a = Some(value.parse::<f64>().map_err(|_| bad())?),
                "k" => k = Some(value.parse::<u32>().map_err(|_| bad())?),
                "B" | "b" => b = Some(value.parse::<f64>().map_err(|_| bad())?),
                _ => return Err(Error::InvalidParameter(format!("unknown catalog parameter `{key}`"))),
            }
        }
        let entry = match family {
            "hardy-rational" => Self::HardyRational { a: a.unwrap_or(1.0), k: k.unwrap_or(2) },
            "bandlimited-sinc" => Self::BandlimitedSinc { b: b.unwrap_or(1.0) },
            "bergman-rational" => Self::BergmanRational { a: a.unwrap_or(1.0) },
            "negative-control" => Self::NegativeControl,
            _ => return Err(Error::InvalidParameter(format!("unknown catalog entry `{name}`"))),
        };
        entry.new()
    }
}

/// Looks up an entry by name.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry> {
    name.parse()
}

/// Oracle self-check result for one entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub name: String,
    pub defect: f64,
    pub pass: bool,
}

/// Oracle tolerance for the closed-form pairs.
pub const ORACLE_TOL: f64 = 1e-10;

/// Runs the dense-quadrature consistency check on each entry.
pub fn oracle_check(entries: &[CatalogEntry]) -> Result<Vec<OracleResult>> {
    entries
        .iter()
        .map(|e| {
            let defect = e.oracle_defect()?;
            Ok(OracleResult { name: e.to_string(), defect, pass: defect <= ORACLE_TOL })
        })
        .collect()
}
