//! Command-line front end: parameter sweeps over the library's scenarios,
//! written as CSV.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 a grid point hit an
//! on-resonance divergence (unless `--allow-flagged`), 3 an acceptance
//! criterion failed.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod grid;
pub mod output;
pub mod scenarios;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use vacuum_kinetics::acceptance;

use config::{Overrides, RunConfig};
use error::ConfigError;
use output::Row;
use scenarios::Scenario;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_FLAGGED: i32 = 2;
pub const EXIT_ACCEPTANCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "vacuum-kinetics", version, about = "Vacuum-fluctuation forces, detector kernels and cavity photon statistics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a scenario over a parameter grid and write CSV.
    Run(RunArgs),
    /// List scenarios with their parameters and output columns.
    List,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Scenario name; may instead come from the config file.
    pub scenario: Option<String>,
    /// TOML file with defaults; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `name=value`, `name=a,b,c` or `name=start:stop:count[:log]`. Repeatable.
    #[arg(long = "param", short = 'p', value_name = "NAME=SPEC")]
    pub params: Vec<String>,
    /// Output file (stdout when absent).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<String>,
    /// Worker threads for the sweep.
    #[arg(long, short)]
    pub jobs: Option<usize>,
    /// Exit 0 even when some grid points diverge.
    #[arg(long)]
    pub allow_flagged: bool,
    /// Omit the `# generated` line so output is byte-for-byte reproducible.
    #[arg(long)]
    pub no_timestamp: bool,
}

impl From<RunArgs> for Overrides {
    fn from(a: RunArgs) -> Self {
        Overrides {
            scenario: a.scenario,
            config: a.config,
            params: a.params,
            out: a.out,
            format: a.format,
            jobs: a.jobs,
            allow_flagged: a.allow_flagged,
            no_timestamp: a.no_timestamp,
        }
    }
}

/// Parses `args` (including the program name) and runs. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::List => {
            let _ = list(stdout);
            EXIT_OK
        }
        Command::Run(args) => match execute(args.into(), stdout, stderr) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_CONFIG
            }
        },
    }
}

fn list(out: &mut dyn Write) -> std::io::Result<()> {
    for s in Scenario::ALL {
        writeln!(out, "{}", s.name())?;
        for p in s.params() {
            match p.default {
                Some(d) => writeln!(out, "  param  {} [{}] = {}", p.name, p.unit, d)?,
                None => writeln!(out, "  param  {} [{}] (required)", p.name, p.unit)?,
            }
        }
        for c in s.outputs() {
            writeln!(out, "  column {} [{}]", c.name, c.unit)?;
        }
    }
    Ok(())
}

fn execute(o: Overrides, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, ConfigError> {
    let cfg = RunConfig::resolve(&o)?;
    if cfg.scenario == Scenario::Acceptance {
        return run_acceptance(&cfg, stdout);
    }
    let points = grid::cartesian(&cfg.axes);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| ConfigError::Invalid(format!("thread pool: {e}")))?;
    let rows: Vec<Row> = pool.install(|| {
        points
            .into_par_iter()
            .map(|point| {
                let outcome = cfg.scenario.evaluate(&point, &cfg.tolerances);
                Row { point, outcome }
            })
            .collect()
    });

    let generated = cfg
        .timestamp
        .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    match &cfg.out {
        Some(path) => {
            let f = File::create(path).map_err(|e| ConfigError::File {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            output::write_csv(BufWriter::new(f), &cfg, &rows, generated)?;
        }
        None => output::write_csv(&mut *stdout, &cfg, &rows, generated)?,
    }

    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    let diverged = rows.iter().filter(|r| r.diverged()).count();
    if failed > 0 {
        let _ = writeln!(stderr, "{failed} of {} grid points failed", rows.len());
    }
    if diverged > 0 {
        let _ = writeln!(stderr, "{diverged} of {} grid points sit on a divergence", rows.len());
    }
    Ok(if diverged > 0 && !cfg.allow_flagged { EXIT_FLAGGED } else { EXIT_OK })
}

fn run_acceptance(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, ConfigError> {
    let outcomes = acceptance::run_all();
    let mut sink: Box<dyn Write + '_> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *stdout),
    };
    for o in &outcomes {
        writeln!(sink, "{o}")?;
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    writeln!(sink, "{passed} of {} criteria passed", outcomes.len())?;
    sink.flush()?;
    Ok(if passed == outcomes.len() { EXIT_OK } else { EXIT_ACCEPTANCE })
}
