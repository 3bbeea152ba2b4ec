//! Experiment configuration.
//!
//! Every setting is a long command-line flag. A config file holds the same
//! settings as flat `key = value` lines (`#` starts a comment); keys are the
//! flag names without the leading dashes. File values are spliced in ahead of
//! the real arguments, so flags given on the command line win.

use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelSpec, OutDegreeLaw};
use crate::stats::DegreeKind;
use crate::theory::{LimitLaw, TheoryPmf};

#[derive(Debug, Parser)]
#[command(
    name = "prefattach",
    version,
    about = "Preferential attachment growth models and their limit laws"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run a model and write checkpoint histograms plus a JSON summary.
    Simulate(ExperimentConfig),
    /// Evaluate a limit pmf and, given a run length, the expected counts.
    Theory(ExperimentConfig),
    /// Compare run outputs with a limit law.
    Compare(ExperimentConfig),
    /// Extract waiting times from a Simon run and test them for exponentiality.
    WaitingTimes(ExperimentConfig),
    /// Measure the across-seed spread of N_k/t at several t.
    Concentration(ExperimentConfig),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Theory(_) => "theory",
            Command::Compare(_) => "compare",
            Command::WaitingTimes(_) => "waiting-times",
            Command::Concentration(_) => "concentration",
        }
    }

    pub fn config(&self) -> &ExperimentConfig {
        match self {
            Command::Simulate(c)
            | Command::Theory(c)
            | Command::Compare(c)
            | Command::WaitingTimes(c)
            | Command::Concentration(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    Simon,
    Iipa,
    Price,
    #[value(alias = "ba")]
    BaIdentified,
    BaRescaled,
    Yule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutDegreeName {
    Constant,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawName {
    Simon,
    Iipa,
    Price,
    Ba,
    Yule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum YuleSampler {
    EventDriven,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindName {
    InDegree,
    Degree,
    GenusSize,
}

impl From<KindName> for DegreeKind {
    fn from(k: KindName) -> Self {
        match k {
            KindName::InDegree => DegreeKind::InDegree,
            KindName::Degree => DegreeKind::Degree,
            KindName::GenusSize => DegreeKind::GenusSize,
        }
    }
}

/// All settings of one experiment. Paths are not echoed into summaries so
/// that the same experiment written to two places produces identical files.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ExperimentConfig {
    /// Flat key = value file; command-line flags override it.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    /// Simon new-vertex probability, in (0, 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Edges per vertex (II-PA, BA) or mean out-degree (Price).
    #[arg(long)]
    pub m: Option<u32>,
    /// Loops per new Price vertex.
    #[arg(long)]
    pub k0: Option<u32>,
    #[arg(long, value_enum)]
    pub out_degree: Option<OutDegreeName>,
    /// Yule genus birth rate.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Yule species birth rate.
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Run length in elementary steps (Simon).
    #[arg(long)]
    pub steps: Option<u64>,
    /// Run length in complete vertices (II-PA, Price, BA).
    #[arg(long)]
    pub vertices: Option<u64>,
    /// Run length in continuous time (Yule).
    #[arg(long)]
    pub time_horizon: Option<f64>,
    #[arg(long)]
    pub replicas: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub t_star: Option<u64>,
    #[arg(long)]
    pub k_cap: Option<u64>,
    /// Output directory. Without it, the main result goes to stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Drive II-PA or rescaled BA from the shared coupling stream.
    #[arg(long)]
    pub couple: bool,
    /// Allow comparing histograms with a law of another kind.
    #[arg(long)]
    pub override_kind: bool,

    /// Ratio between successive checkpoints.
    #[arg(long)]
    pub checkpoint_ratio: Option<f64>,
    /// Maximum total variation for a pass.
    #[arg(long)]
    pub tv_threshold: Option<f64>,
    /// Maximum KS distance for a pass.
    #[arg(long)]
    pub ks_threshold: Option<f64>,
    #[arg(long)]
    pub slope_k_lo: Option<u64>,
    #[arg(long)]
    pub slope_k_hi: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub slope_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub slope_max: Option<f64>,

    /// Weight class followed by `concentration`.
    #[arg(long)]
    pub k: Option<u32>,
    /// Times at which `concentration` measures.
    #[arg(long, value_delimiter = ',')]
    pub t_list: Vec<u64>,
    /// Bounds on std(last t) / std(first t) for a pass.
    #[arg(long)]
    pub ratio_min: Option<f64>,
    #[arg(long)]
    pub ratio_max: Option<f64>,

    /// Use descendant waits of the genealogy form instead of in-degree waits.
    #[arg(long)]
    pub genealogy: bool,
    /// Waiting-time levels to test.
    #[arg(long, value_delimiter = ',')]
    pub levels: Vec<u32>,
    /// Censoring level on the log-time scale.
    #[arg(long)]
    pub z_cap: Option<f64>,

    #[arg(long, value_enum)]
    pub sampler: Option<YuleSampler>,

    /// Limit law to compare against; defaults to the run's own model.
    #[arg(long, value_enum)]
    pub theory: Option<LawName>,
    /// Kind of a histogram CSV given to `compare`.
    #[arg(long, value_enum)]
    pub kind: Option<KindName>,
    /// Run outputs for `compare`: a summary JSON or a CSV.
    #[arg(long)]
    #[serde(skip)]
    pub run: Vec<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_K_CAP: u64 = 200;
pub const DEFAULT_T_STAR: u64 = 10_000;
pub const DEFAULT_CHECKPOINT_RATIO: f64 = 10.0;

fn required<T: Copy>(v: Option<T>, flag: &str, model: &str) -> Result<T> {
    v.ok_or_else(|| Error::Config(format!("--{flag} is required for model {model}")))
}

impl ExperimentConfig {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn k_cap(&self) -> u64 {
        self.k_cap.unwrap_or(DEFAULT_K_CAP)
    }

    pub fn t_star(&self) -> u64 {
        self.t_star.unwrap_or(DEFAULT_T_STAR)
    }

    pub fn replicas(&self) -> Result<u64> {
        match self.replicas {
            Some(0) => Err(Error::Config("--replicas must be >= 1".into())),
            r => Ok(r.unwrap_or(1)),
        }
    }

    pub fn model_name(&self) -> Result<ModelName> {
        self.model
            .ok_or_else(|| Error::Config("--model is required".into()))
    }

    /// The validated model described by the config.
    pub fn model_spec(&self) -> Result<ModelSpec> {
        let name = self.model_name()?;
        let label = name
            .to_possible_value()
            .map(|v| v.get_name().to_owned())
            .unwrap_or_default();
        let spec = match name {
            ModelName::Simon => ModelSpec::Simon {
                alpha: required(self.alpha, "alpha", &label)?,
            },
            ModelName::Iipa => ModelSpec::Iipa {
                m: required(self.m, "m", &label)?,
            },
            ModelName::Price => {
                let m = required(self.m, "m", &label)?;
                let out_degree = match self.out_degree.unwrap_or(OutDegreeName::Constant) {
                    OutDegreeName::Constant => OutDegreeLaw::Constant { m },
                    OutDegreeName::Geometric => OutDegreeLaw::Geometric { mean: f64::from(m) },
                };
                ModelSpec::Price {
                    k0: self.k0.unwrap_or(1),
                    out_degree,
                }
            }
            ModelName::BaIdentified => ModelSpec::BaIdentified {
                m: required(self.m, "m", &label)?,
            },
            ModelName::BaRescaled => ModelSpec::BaRescaled {
                m: required(self.m, "m", &label)?,
            },
            ModelName::Yule => ModelSpec::Yule {
                beta: required(self.beta, "beta", &label)?,
                lambda: required(self.lambda, "lambda", &label)?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The limit law chosen by `--theory`, or the model's own.
    pub fn theory_pmf(&self, fallback: Option<&ModelSpec>) -> Result<TheoryPmf> {
        let law = match (self.theory, fallback) {
            (Some(LawName::Simon), _) => LimitLaw::Simon {
                alpha: required(self.alpha, "alpha", "simon")?,
            },
            (Some(LawName::Iipa), _) => LimitLaw::Iipa {
                m: required(self.m, "m", "iipa")?,
            },
            (Some(LawName::Price), _) => LimitLaw::Price {
                mean_out_degree: f64::from(required(self.m, "m", "price")?),
            },
            (Some(LawName::Ba), _) => LimitLaw::Ba {
                m: required(self.m, "m", "ba")?,
            },
            (Some(LawName::Yule), _) => LimitLaw::Yule {
                rho: required(self.beta, "beta", "yule")?
                    / required(self.lambda, "lambda", "yule")?,
            },
            (None, Some(spec)) => limit_law_of(spec),
            (None, None) => match self.model {
                Some(_) => limit_law_of(&self.model_spec()?),
                None => return Err(Error::Config("--theory or --model is required".into())),
            },
        };
        TheoryPmf::new(law)
    }
}

/// The limit law of a model's weight distribution.
pub fn limit_law_of(spec: &ModelSpec) -> LimitLaw {
    match *spec {
        ModelSpec::Simon { alpha } => LimitLaw::Simon { alpha },
        ModelSpec::Iipa { m } => LimitLaw::Iipa { m },
        ModelSpec::Price { out_degree, .. } => LimitLaw::Price {
            mean_out_degree: out_degree.mean(),
        },
        ModelSpec::BaIdentified { m } | ModelSpec::BaRescaled { m } => LimitLaw::Ba { m },
        ModelSpec::Yule { beta, lambda } => LimitLaw::Yule { rho: beta / lambda },
    }
}

/// Parses `key = value` lines into `(key, value)` pairs.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected `key = value`, got `{raw}`",
                i + 1
            ))
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", i + 1)));
        }
        out.push((key, value.trim().to_owned()));
    }
    Ok(out)
}

fn flag_kinds() -> Vec<(String, bool)> {
    // (long name, takes a value)
    let cmd = Cli::command();
    let sub = cmd.find_subcommand("simulate").expect("simulate exists");
    sub.get_arguments()
        .filter_map(|a| {
            a.get_long()
                .map(|l| (l.to_owned(), a.get_action().takes_values()))
        })
        .collect()
}

/// Turns config pairs into flag tokens.
pub fn config_tokens(pairs: &[(String, String)], source: &Path) -> Result<Vec<String>> {
    let kinds = flag_kinds();
    let mut tokens = Vec::new();
    for (key, value) in pairs {
        let Some(&(_, takes_value)) = kinds.iter().find(|(k, _)| k == key) else {
            return Err(Error::Config(format!(
                "{}: unknown key `{key}`",
                source.display()
            )));
        };
        if key == "config" {
            return Err(Error::Config(format!(
                "{}: config files cannot include other config files",
                source.display()
            )));
        }
        if takes_value {
            tokens.push(format!("--{key}"));
            tokens.push(value.clone());
        } else {
            match value.as_str() {
                "true" => tokens.push(format!("--{key}")),
                "false" => {}
                other => {
                    return Err(Error::Config(format!(
                        "{}: `{key}` expects true or false, got `{other}`",
                        source.display()
                    )))
                }
            }
        }
    }
    Ok(tokens)
}

/// Expands `--config FILE` into the flags it holds, placed right after the
/// subcommand so that explicit flags override them.
pub fn expand_config_args(args: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_owned());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let path = PathBuf::from(path);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let tokens = config_tokens(&parse_config_text(&text)?, &path)?;
    let Some(sub_pos) = args
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|p| p + 1)
    else {
        return Ok(args);
    };
    let mut out = args[..=sub_pos].to_vec();
    out.extend(tokens);
    out.extend_from_slice(&args[sub_pos + 1..]);
    Ok(out)
}
