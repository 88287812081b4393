//! Batch verification: closed-form catalog, theorem suites and reports.
//!
//! [`run_suite`] validates the configuration, runs the oracle self-check on
//! the configured catalog entries and then the selected suites. Each suite
//! yields [`CheckRecord`]s in a fixed order; records are merged in canonical
//! suite order, so sequential and parallel runs produce identical reports up
//! to `runtime_ms`.

pub mod catalog;
pub mod config;
pub mod report;
mod suites;

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ImaginaryUnit;
use crate::error::Error;
use crate::frame::complete_basis;

pub use catalog::{catalog_lookup, oracle_check, CatalogEntry, OracleResult, TransformKind, ORACLE_TOL};
pub use config::{max_slice_count, ConfigError, GridConfig, GridSpec, Suite, SuiteConfig, Thresholds};
pub use report::{CheckRecord, Relation, Report, Summary};

/// Every check passed.
pub const EXIT_PASS: i32 = 0;
/// At least one theorem check failed.
pub const EXIT_CHECK_FAILURE: i32 = 1;
/// Invalid invocation or configuration.
pub const EXIT_USAGE: i32 = 2;
/// A catalog pair failed its self-check; no suite was run.
pub const EXIT_ORACLE_FAILURE: i32 = 3;

/// Why a run could not produce a report.
#[derive(Debug)]
pub enum HarnessError {
    Config(ConfigError),
    /// Oracle results, at least one failing.
    Oracle(Vec<OracleResult>),
    /// The slice set or another prerequisite could not be built.
    Setup(Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Setup(_) => EXIT_USAGE,
            HarnessError::Oracle(_) => EXIT_ORACLE_FAILURE,
        }
    }
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Config(e) => write!(f, "invalid configuration: {e}"),
            HarnessError::Oracle(results) => {
                write!(f, "oracle self-check failed:")?;
                for r in results.iter().filter(|r| !r.pass) {
                    write!(f, " {} (defect {:e})", r.name, r.defect)?;
                }
                Ok(())
            }
            HarnessError::Setup(e) => write!(f, "setup failed: {e}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<ConfigError> for HarnessError {
    fn from(e: ConfigError) -> Self {
        HarnessError::Config(e)
    }
}

/// Exit status for a finished report.
pub fn exit_code(report: &Report) -> i32 {
    if report.all_passed() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILURE
    }
}

/// `count` unit imaginaries: the units of a seeded frame of `ℝ^n`, then the
/// normalized midpoints `(I_r + I_s)/√2` for `r < s` in lexicographic order.
pub fn slice_set(n: usize, count: usize, rng_seed: u64) -> Result<Vec<ImaginaryUnit>, Error> {
    if count > max_slice_count(n) {
        return Err(Error::InvalidParameter(format!("at most {} slices exist for n = {n}", max_slice_count(n))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let seed = loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if v.iter().map(|c| c * c).sum::<f64>() > 1e-2 {
            break ImaginaryUnit::new(v)?;
        }
    };
    let frame = complete_basis(&seed, rng_seed)?;
    let mut out: Vec<ImaginaryUnit> = frame.units().to_vec();
    'pairs: for r in 0..n {
        for s in r + 1..n {
            if out.len() >= count {
                break 'pairs;
            }
            let mid: Vec<f64> =
                frame.units()[r].components().iter().zip(frame.units()[s].components()).map(|(a, b)| a + b).collect();
            out.push(ImaginaryUnit::new(mid)?);
        }
    }
    out.truncate(count);
    Ok(out)
}

/// What every suite sees.
pub(crate) struct Context<'a> {
    pub cfg: &'a SuiteConfig,
    pub slices: Vec<ImaginaryUnit>,
    pub entries: Vec<CatalogEntry>,
}

impl Context<'_> {
    /// A generator seeded from the run seed and a per-suite salt.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.rng_seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Collects the records of one suite, timing each check.
pub(crate) struct Recorder {
    suite: Suite,
    pub records: Vec<CheckRecord>,
}

impl Recorder {
    pub fn new(suite: Suite) -> Self {
        Self { suite, records: Vec::new() }
    }

    /// Runs `measure` and records its value against `threshold`; an error is
    /// recorded as a failing check with the message in `detail`.
    pub fn check(
        &mut self,
        check: impl Into<String>,
        anchor: &str,
        relation: Relation,
        threshold: f64,
        measure: impl FnOnce() -> Result<f64, Error>,
    ) {
        let start = Instant::now();
        let outcome = measure();
        let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        let (value, detail) = match outcome {
            Ok(v) if v.is_nan() => (None, Some("measured value is NaN".to_string())),
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = value.is_some_and(|v| relation.holds(v, threshold));
        self.records.push(CheckRecord {
            suite: self.suite.name().to_string(),
            check: check.into(),
            anchor: anchor.to_string(),
            value,
            relation,
            threshold,
            pass,
            runtime_ms,
            detail,
        });
    }
}

/// Validates, self-checks the catalog and runs the configured suites.
pub fn run_suite(cfg: &SuiteConfig, parallel: bool) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let entries = cfg.entries();
    let oracles = oracle_check(&entries).map_err(HarnessError::Setup)?;
    if oracles.iter().any(|o| !o.pass) {
        return Err(HarnessError::Oracle(oracles));
    }
    let slices = slice_set(cfg.n, cfg.slice_count, cfg.rng_seed).map_err(HarnessError::Setup)?;
    let ctx = Context { cfg, slices, entries };

    let mut order: Vec<Suite> = cfg.suites.clone();
    order.sort();
    let per_suite: Vec<Vec<CheckRecord>> = if parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = order.iter().map(|&s| {
                let ctx = &ctx;
                scope.spawn(move || suites::run(s, ctx))
            }).collect();
            handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
        })
    } else {
        order.iter().map(|&s| suites::run(s, &ctx)).collect()
    };

    let mut report = Report {
        n: cfg.n,
        rng_seed: cfg.rng_seed,
        slices: ctx.slices.iter().map(|u| u.components().to_vec()).collect(),
        oracles,
        records: per_suite.into_iter().flatten().collect(),
        summary: Summary::default(),
    };
    report.summarize();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_sets_are_seeded_units() {
        let a = slice_set(3, 5, 11).unwrap();
        let b = slice_set(3, 5, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for u in &a {
            let norm: f64 = u.components().iter().map(|c| c * c).sum();
            assert!((norm - 1.0).abs() < 1e-14);
        }
        assert_ne!(slice_set(3, 5, 12).unwrap(), a);
        assert!(slice_set(2, 4, 1).is_err());
        assert_eq!(slice_set(2, 3, 1).unwrap().len(), 3);
    }

    #[test]
    fn empty_suite_list_gives_empty_passing_report() {
        let cfg = SuiteConfig { suites: vec![], ..SuiteConfig::default() };
        let report = run_suite(&cfg, false).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.summary, Summary::default());
        assert_eq!(exit_code(&report), EXIT_PASS);
        assert_eq!(report.slices.len(), cfg.slice_count);
    }

    #[test]
    fn invalid_config_maps_to_usage_exit() {
        let cfg = SuiteConfig { n: 1, ..SuiteConfig::default() };
        let err = run_suite(&cfg, false).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        assert!(err.to_string().contains("n:"));
    }

    #[test]
    fn algebra_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig { suites: vec![Suite::Algebra], ..SuiteConfig::default() };
        let a = run_suite(&cfg, false).unwrap();
        let b = run_suite(&cfg, true).unwrap();
        assert!(a.all_passed(), "{:?}", a.failures().collect::<Vec<_>>());
        let strip = |r: &Report| r.records.iter().map(|c| (c.check.clone(), c.value)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn recorder_turns_errors_into_failures() {
        let mut rec = Recorder::new(Suite::Hardy);
        rec.check("ok", "plumbing", Relation::AtMost, 1.0, || Ok(0.5));
        rec.check("err", "plumbing", Relation::AtMost, 1.0, || Err(Error::ZeroFunction));
        rec.check("nan", "plumbing", Relation::AtLeast, 0.0, || Ok(f64::NAN));
        assert!(rec.records[0].pass);
        assert!(!rec.records[1].pass && rec.records[1].detail.is_some());
        assert!(!rec.records[2].pass && rec.records[2].value.is_none());
    }
}
