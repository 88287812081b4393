//! Suite configuration: a TOML document with dotted-key overrides.
//!
//! Every key has a default, so an empty document is a valid configuration.
//!
//! ```toml
//! n = 3
//! rng_seed = 20240607
//! slice_count = 5
//! p_list = [1.0, 1.5, 2.0]
//! suites = ["algebra", "splitting", "fourier", "hardy", "compact-pw", "bergman"]
//! catalog = ["hardy-rational a=1 k=2", "hardy-rational a=1 k=3", "bandlimited-sinc B=1",
//!            "bergman-rational a=1", "negative-control"]
//!
//! [grids]
//! v = { extent = 200.0, count = 16385 }        # boundary and real-axis samples on [−V, V]
//! w = { extent = 40.0, count = 8193 }          # spectra on [−W, W]
//! hardy_v = { extent = 400.0, count = 32769 }  # Hardy boundary data
//! hardy_w = { extent = 32.0, count = 16385 }   # Hardy spectra
//! area_u = { extent = 50.0, count = 257 }      # Bergman area quadrature, u ∈ [0, U]
//! area_v = { extent = 10000.0, count = 1025 }  # Bergman area quadrature, v ∈ [−V, V]
//! extract_v = { extent = 20000.0, count = 262145 }
//! extract_w = { extent = 5.0, count = 1025 }
//! kernel_v = { extent = 131072.0, count = 262145 }
//!
//! [tolerances]
//! quadrature_tol = 1e-9
//! identity_tol = 1e-10
//! theorem_tol = 1e-6
//! support_tol = 1e-6
//!
//! [thresholds]
//! frame = 1e-12
//! slice_independence = 1e-8
//! plancherel = 1e-6
//! plancherel_ratio = 4.0
//! plancherel_floor = 1e-9
//! two_formula = 1e-5
//! kernel_reproduction = 1e-5
//! negative_control = 0.4
//! growth = 1e-9
//! bergman_margin = 1e-4
//! delta_independence = 1e-6
//! pointwise_stability = 0.1
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::MAX_DIM;
use crate::numerics::{Tolerances, UniformGrid};

use super::catalog::{catalog_lookup, CatalogEntry};

/// A configuration problem, naming the offending key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

/// The theorem suites, in canonical report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebra,
    Splitting,
    Fourier,
    Hardy,
    CompactPw,
    Bergman,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Algebra, Suite::Splitting, Suite::Fourier, Suite::Hardy, Suite::CompactPw, Suite::Bergman];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Splitting => "splitting",
            Suite::Fourier => "fourier",
            Suite::Hardy => "hardy",
            Suite::CompactPw => "compact-pw",
            Suite::Bergman => "bergman",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| ConfigError::new("suites", format!("unknown suite `{s}`")))
    }
}

/// A grid `[−extent, extent]` (or `[0, extent]` for `area_u`) with `count` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub extent: f64,
    pub count: usize,
}

impl GridSpec {
    pub const fn new(extent: f64, count: usize) -> Self {
        Self { extent, count }
    }

    /// The symmetric grid `[−extent, extent]`.
    pub fn symmetric(&self) -> UniformGrid {
        UniformGrid::symmetric(self.extent, self.count).expect("validated grid")
    }

    /// Doubles the resolution, keeping the domain.
    pub fn doubled(&self) -> Self {
        Self { extent: self.extent, count: 2 * self.count - 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Boundary values `f(Iv)` and real-axis values `f(u)`.
    pub v: GridSpec,
    /// Spectral variable.
    pub w: GridSpec,
    /// Boundary values for Hardy reconstruction. Truncating `f(Iv)` to
    /// `[−V, V]` costs `O(V⁻³)` in the reconstruction, and the spectral
    /// spacing must resolve `e^{−Ivw}` up to `|v| = V`.
    pub hardy_v: GridSpec,
    /// Spectral grid for Hardy reconstruction.
    pub hardy_w: GridSpec,
    /// `u` axis of the Bergman area quadrature.
    pub area_u: GridSpec,
    /// `v` axis of the Bergman area quadrature.
    pub area_v: GridSpec,
    /// Boundary samples for Bergman density extraction.
    pub extract_v: GridSpec,
    /// Spectral grid for Bergman density extraction.
    pub extract_w: GridSpec,
    /// Real-axis trapezoid grid for band-limited kernel reproduction.
    pub kernel_v: GridSpec,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            v: GridSpec::new(200.0, 16385),
            w: GridSpec::new(40.0, 8193),
            hardy_v: GridSpec::new(400.0, 32769),
            hardy_w: GridSpec::new(32.0, 16385),
            area_u: GridSpec::new(50.0, 257),
            area_v: GridSpec::new(10000.0, 1025),
            extract_v: GridSpec::new(20000.0, 262145),
            extract_w: GridSpec::new(5.0, 1025),
            kernel_v: GridSpec::new(131072.0, 262145),
        }
    }
}

impl GridConfig {
    fn specs(&self) -> [(&'static str, GridSpec); 9] {
        [
            ("grids.v", self.v),
            ("grids.w", self.w),
            ("grids.hardy_v", self.hardy_v),
            ("grids.hardy_w", self.hardy_w),
            ("grids.area_u", self.area_u),
            ("grids.area_v", self.area_v),
            ("grids.extract_v", self.extract_v),
            ("grids.extract_w", self.extract_w),
            ("grids.kernel_v", self.kernel_v),
        ]
    }
}

/// Pass thresholds of individual checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// `I_r I_s + I_s I_r + 2δ_rs` on seeded frames.
    pub frame: f64,
    /// Spread of slice-independent quantities across slices.
    pub slice_independence: f64,
    /// Relative Plancherel defect at the configured grids.
    pub plancherel: f64,
    /// Required defect reduction per doubling of the node counts.
    pub plancherel_ratio: f64,
    /// Defect below which further doubling is not required.
    pub plancherel_floor: f64,
    /// Poisson against Fourier reconstruction.
    pub two_formula: f64,
    /// Hardy- and band-limited-kernel reproduction.
    pub kernel_reproduction: f64,
    /// Lower bound on the positive-frequency energy of the negative control.
    pub negative_control: f64,
    /// Allowed violation of the growth bound.
    pub growth: f64,
    /// Allowed violation (or slack, in the equality case) of the Bergman norm inequalities.
    pub bergman_margin: f64,
    /// Spread of extracted Bergman densities over the shift `δ`.
    pub delta_independence: f64,
    /// Relative change of fitted pointwise constants under probe doubling.
    pub pointwise_stability: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            frame: 1e-12,
            slice_independence: 1e-8,
            plancherel: 1e-6,
            plancherel_ratio: 4.0,
            plancherel_floor: 1e-9,
            two_formula: 1e-5,
            kernel_reproduction: 1e-5,
            negative_control: 0.4,
            growth: 1e-9,
            bergman_margin: 1e-4,
            delta_independence: 1e-6,
            pointwise_stability: 0.1,
        }
    }
}

/// Full configuration of a harness run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub n: usize,
    pub rng_seed: u64,
    pub slice_count: usize,
    pub p_list: Vec<f64>,
    pub suites: Vec<Suite>,
    pub catalog: Vec<String>,
    pub grids: GridConfig,
    pub tolerances: Tolerances,
    pub thresholds: Thresholds,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: 3,
            rng_seed: 20240607,
            slice_count: 5,
            p_list: vec![1.0, 1.5, 2.0],
            suites: Suite::ALL.to_vec(),
            catalog: vec![
                "hardy-rational a=1 k=2".into(),
                "hardy-rational a=1 k=3".into(),
                "bandlimited-sinc B=1".into(),
                "bergman-rational a=1".into(),
                "negative-control".into(),
            ],
            grids: GridConfig::default(),
            tolerances: Tolerances::default(),
            thresholds: Thresholds::default(),
        }
    }
}

/// Most slices a frame of `ℝ^n` yields: its `n` units and their pairwise midpoints.
pub fn max_slice_count(n: usize) -> usize {
    n + n * n.saturating_sub(1) / 2
}

impl SuiteConfig {
    /// Parses a TOML document, applies `key=value` overrides and validates.
    ///
    /// Both are layered over the defaults table by table, so a partial grid
    /// such as `grids.w.count = 2049` keeps the default extent.
    pub fn from_toml_with_overrides(text: &str, overrides: &[String]) -> Result<Self, ConfigError> {
        let user: toml::Table = text.parse().map_err(|e: toml::de::Error| ConfigError::new("", e.message().to_string()))?;
        let mut doc = toml::Table::try_from(SuiteConfig::default()).expect("defaults serialize");
        merge(&mut doc, user);
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        let cfg: SuiteConfig = toml::Value::Table(doc)
            .try_into()
            .map_err(|e: toml::de::Error| ConfigError::new("", e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Self::from_toml_with_overrides(text, &[])
    }

    /// Field-level validation of the invariants the suites rely on.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(2..=MAX_DIM).contains(&self.n) {
            return Err(ConfigError::new("n", format!("must be in 2..={MAX_DIM}, got {}", self.n)));
        }
        let most = max_slice_count(self.n);
        if !(3..=most).contains(&self.slice_count) {
            return Err(ConfigError::new("slice_count", format!("must be in 3..={most} for n = {}, got {}", self.n, self.slice_count)));
        }
        if let Some(p) = self.p_list.iter().find(|p| !(1.0..=2.0).contains(*p)) {
            return Err(ConfigError::new("p_list", format!("exponent {p} is outside [1, 2]")));
        }
        let mut seen = Vec::new();
        for s in &self.suites {
            if seen.contains(s) {
                return Err(ConfigError::new("suites", format!("suite `{s}` is listed twice")));
            }
            seen.push(*s);
        }
        for name in &self.catalog {
            catalog_lookup(name).map_err(|e| ConfigError::new("catalog", e.to_string()))?;
        }
        for (field, g) in self.grids.specs() {
            if !(g.extent > 0.0 && g.extent.is_finite()) {
                return Err(ConfigError::new(format!("{field}.extent"), format!("must be positive, got {}", g.extent)));
            }
            let m = g.count.wrapping_sub(1);
            if g.count < 9 || !m.is_power_of_two() {
                return Err(ConfigError::new(format!("{field}.count"), format!("must be 2^k + 1 with k ≥ 3, got {}", g.count)));
            }
        }
        let t = &self.tolerances;
        for (field, value) in [
            ("tolerances.quadrature_tol", t.quadrature_tol),
            ("tolerances.identity_tol", t.identity_tol),
            ("tolerances.theorem_tol", t.theorem_tol),
            ("tolerances.support_tol", t.support_tol),
        ] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(ConfigError::new(field, format!("must be a finite nonnegative number, got {value}")));
            }
        }
        Ok(())
    }

    /// The configured catalog entries, in configuration order.
    pub fn entries(&self) -> Vec<CatalogEntry> {
        self.catalog.iter().map(|n| catalog_lookup(n).expect("validated catalog")).collect()
    }
}

/// Applies `a.b.c=value`; the value is read as a TOML value, falling back to a string.
/// Recursively overlays `top` on `base`; non-table values replace.
fn merge(base: &mut toml::Table, top: toml::Table) {
    for (key, value) in top {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(t)) => merge(b, t),
            (_, value) => {
                base.insert(key, value);
            }
        }
    }
}

fn apply_override(doc: &mut toml::Table, assignment: &str) -> Result<(), ConfigError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| ConfigError::new("", format!("override `{assignment}` is not key=value")))?;
    let key = key.trim();
    let raw = raw.trim();
    let value = format!("x = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("x"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(ConfigError::new(key, "empty path segment in override"));
    }
    let mut table = doc;
    for part in &parts[..parts.len() - 1] {
        let entry = table.entry(part.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry.as_table_mut().ok_or_else(|| ConfigError::new(key, format!("`{part}` is not a table")))?;
    }
    table.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_the_default() {
        assert_eq!(SuiteConfig::from_toml("").unwrap(), SuiteConfig::default());
    }

    #[test]
    fn overrides_reach_nested_keys() {
        let cfg = SuiteConfig::from_toml_with_overrides(
            "n = 2\nslice_count = 3\n",
            &["tolerances.theorem_tol=1e-30".into(), "suites=[\"algebra\"]".into(), "grids.w.count=2049".into()],
        )
        .unwrap();
        assert_eq!(cfg.n, 2);
        assert_eq!(cfg.tolerances.theorem_tol, 1e-30);
        assert_eq!(cfg.suites, vec![Suite::Algebra]);
        assert_eq!(cfg.grids.w.count, 2049);
        assert_eq!(cfg.grids.w.extent, 40.0);
        let cfg = SuiteConfig::from_toml("[grids]\nhardy_v = { count = 16385 }\n").unwrap();
        assert_eq!(cfg.grids.hardy_v, GridSpec::new(400.0, 16385));
        assert_eq!(cfg.grids.w, GridConfig::default().w);
    }

    #[test]
    fn validation_names_the_field() {
        let err = SuiteConfig::from_toml("n = 13").unwrap_err();
        assert_eq!(err.field, "n");
        let err = SuiteConfig::from_toml_with_overrides("", &["grids.v.count=1000".into()]).unwrap_err();
        assert_eq!(err.field, "grids.v.count");
        let err = SuiteConfig::from_toml("slice_count = 9").unwrap_err();
        assert_eq!(err.field, "slice_count");
        let err = SuiteConfig::from_toml("catalog = [\"gaussian\"]").unwrap_err();
        assert_eq!(err.field, "catalog");
        let err = SuiteConfig::from_toml("p_list = [3.0]").unwrap_err();
        assert_eq!(err.field, "p_list");
    }

    #[test]
    fn unknown_keys_and_suites_are_rejected() {
        assert!(SuiteConfig::from_toml("colour = 1").unwrap_err().message.contains("colour"));
        assert!(SuiteConfig::from_toml("suites = [\"topology\"]").is_err());
        assert!(SuiteConfig::from_toml("suites = [\"algebra\", \"algebra\"]").is_err());
        assert!(SuiteConfig::from_toml_with_overrides("", &["nonsense".into()]).is_err());
    }

    #[test]
    fn string_fallback_for_bare_words() {
        let err = SuiteConfig::from_toml_with_overrides("", &["n=three".into()]).unwrap_err();
        assert!(err.message.contains("three") || err.message.contains("string"), "{err}");
    }
}
