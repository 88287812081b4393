//! `slicewave`: batch verification of the slicewave library against
//! closed-form catalog functions.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for usage
//! or configuration errors, 3 when the catalog oracle self-check fails.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand};
use slicewave::harness::{
    exit_code, oracle_check, run_suite, CatalogEntry, HarnessError, SuiteConfig, EXIT_ORACLE_FAILURE, EXIT_PASS,
    EXIT_USAGE,
};

#[derive(Parser)]
#[command(name = "slicewave", version, about = "Verify slice Paley–Wiener reconstructions against closed forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured suites and write reports.
    Run {
        /// TOML configuration; every key is optional.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override a configuration key, e.g. `--set tolerances.theorem_tol=1e-7`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV report path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Run suites on separate threads.
        #[arg(long)]
        parallel: bool,
    },
    /// List the built-in catalog entries.
    ListCatalog,
    /// Check every catalog pair by dense quadrature.
    OracleCheck,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_PASS as u8 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Run { config, overrides, out, csv, parallel } => run(config, &overrides, out, csv, parallel),
        Command::ListCatalog => {
            for entry in CatalogEntry::defaults() {
                println!("{entry}");
            }
            Ok(EXIT_PASS)
        }
        Command::OracleCheck => {
            let results = oracle_check(&CatalogEntry::defaults())?;
            for r in &results {
                println!("{:<28} defect {:<12.3e} {}", r.name, r.defect, if r.pass { "PASS" } else { "FAIL" });
            }
            Ok(if results.iter().all(|r| r.pass) { EXIT_PASS } else { EXIT_ORACLE_FAILURE })
        }
    }
}

fn run(
    config: Option<PathBuf>,
    overrides: &[String],
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    parallel: bool,
) -> Result<i32> {
    let text = match &config {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => String::new(),
    };
    let cfg = match SuiteConfig::from_toml_with_overrides(&text, overrides) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: invalid configuration: {e}");
            return Ok(EXIT_USAGE);
        }
    };
    let report = match run_suite(&cfg, parallel) {
        Ok(report) => report,
        Err(e @ HarnessError::Oracle(_)) | Err(e @ HarnessError::Config(_)) | Err(e @ HarnessError::Setup(_)) => {
            eprintln!("error: {e}");
            return Ok(e.exit_code());
        }
    };
    if let Some(path) = &out {
        report.write_json(path).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &csv {
        report.write_csv(path).with_context(|| format!("writing {}", path.display()))?;
    }
    for r in &report.records {
        let value = r.value.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3e}"));
        let relation = match r.relation {
            slicewave::harness::Relation::AtMost => "<=",
            slicewave::harness::Relation::AtLeast => ">=",
        };
        println!(
            "{} {:<11} {:<60} {:>11} {} {:.1e}{}",
            if r.pass { "PASS" } else { "FAIL" },
            r.suite,
            r.check,
            value,
            relation,
            r.threshold,
            r.detail.as_ref().map(|d| format!("  ({d})")).unwrap_or_default()
        );
    }
    let s = report.summary;
    println!("{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
    Ok(exit_code(&report))
}
