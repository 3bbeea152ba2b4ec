//! The seeded experiment runner behind the `prefattach` binary.
//!
//! Each command is a library function taking an [`ExperimentConfig`] and
//! returning its results; with `out` set it also writes its files there.
//! Replica `i` of an experiment with seed `s` draws from stream `i` of `s`
//! (see [`crate::rng`]), and replicas are merged in index order, so outputs
//! do not depend on scheduling.
//!
//! Exit codes: 0 pass, 1 a threshold failed, 2 usage or config error,
//! 3 resource cap hit.

pub mod compare;
pub mod concentration;
pub mod config;
pub mod output;
pub mod simulate;
pub mod theory;
pub mod waiting;

use std::ffi::OsString;

use clap::Parser;
use serde::{Deserialize, Serialize};

pub use compare::{cmd_compare, CompareResult};
pub use concentration::{cmd_concentration, ConcentrationResult};
pub use config::{Cli, Command, ExperimentConfig};
pub use simulate::cmd_simulate;
pub use theory::{cmd_theory, TheoryResult};
pub use waiting::{cmd_waiting_times, LevelReport, WaitingResult};

use crate::error::Error;
use crate::model::ModelSpec;
use crate::stats::{DegreeHistogram, DegreeKind, FitReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_THRESHOLD: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const SUMMARY_FORMAT: &str = "prefattach-run-summary";
pub const SUMMARY_VERSION: u32 = 1;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceCap(_) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub time: u64,
    pub histogram: DegreeHistogram,
}

/// Everything a run reports except timings, which go to [`Metrics`] so that
/// the summary stays byte-identical across repeated runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub format: String,
    pub version: u32,
    pub command: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub replicas: u64,
    pub model: Option<ModelSpec>,
    pub kind: Option<DegreeKind>,
    /// What checkpoint times count: `t` steps, `n` vertices or sampled `genera`.
    pub unit: Option<String>,
    pub checkpoints: Vec<Checkpoint>,
    pub fits: Vec<FitReport>,
    /// Elementary steps summed over replicas.
    pub events: u64,
    /// Price batches cut short for lack of old vertices.
    pub truncations: u64,
    pub pass: bool,
}

impl RunSummary {
    pub fn new(command: &str, cfg: &ExperimentConfig, replicas: u64) -> Self {
        RunSummary {
            format: SUMMARY_FORMAT.into(),
            version: SUMMARY_VERSION,
            command: command.into(),
            config: serde_json::to_value(cfg).expect("config serializes"),
            seed: cfg.seed(),
            replicas,
            model: None,
            kind: None,
            unit: None,
            checkpoints: Vec::new(),
            fits: Vec::new(),
            events: 0,
            truncations: 0,
            pass: true,
        }
    }

    pub fn with_model(mut self, spec: ModelSpec, kind: DegreeKind, unit: &str) -> Self {
        self.model = Some(spec);
        self.kind = Some(kind);
        self.unit = Some(unit.into());
        self
    }

    pub fn with_checkpoints(mut self, checkpoints: Vec<Checkpoint>) -> Self {
        self.checkpoints = checkpoints;
        self
    }

    pub fn with_fits(mut self, fits: Vec<FitReport>) -> Self {
        self.pass = fits.iter().all(|f| f.pass);
        self.fits = fits;
        self
    }

    pub fn with_counts(mut self, events: u64, truncations: u64) -> Self {
        self.events = events;
        self.truncations = truncations;
        self
    }

    pub fn final_histogram(&self) -> Option<&DegreeHistogram> {
        self.checkpoints.last().map(|c| &c.histogram)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub wall_seconds: f64,
    pub events: u64,
    pub events_per_second: f64,
}

impl Metrics {
    pub fn new(wall_seconds: f64, events: u64) -> Self {
        let rate = if wall_seconds > 0.0 {
            events as f64 / wall_seconds
        } else {
            0.0
        };
        Metrics {
            wall_seconds,
            events,
            events_per_second: rate,
        }
    }
}

fn dispatch(command: &Command) -> Result<bool, Error> {
    Ok(match command {
        Command::Simulate(c) => {
            let (summary, _) = cmd_simulate(c)?;
            if c.out.is_none() {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            }
            summary.pass
        }
        Command::Theory(c) => cmd_theory(c).map(|_| true)?,
        Command::Compare(c) => cmd_compare(c)?.pass,
        Command::WaitingTimes(c) => cmd_waiting_times(c)?.pass,
        Command::Concentration(c) => cmd_concentration(c)?.pass,
    })
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let args = match config::expand_config_args(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(true) => EXIT_PASS,
        Ok(false) => {
            eprintln!("{}: threshold not met", cli.command.name());
            EXIT_THRESHOLD
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
