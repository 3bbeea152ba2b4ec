use serde::Serialize;

use super::config::{ExperimentConfig, ModelName};
use super::output::{ensure_dir, write_json, write_text, Csv};
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::stats::{concentration_scan, ConcentrationPoint, FitReport, Statistic};

#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationResult {
    pub model: ModelSpec,
    pub k: u32,
    pub seeds: usize,
    pub points: Vec<ConcentrationPoint>,
    /// std at the last t over std at the first t.
    pub ratio: Option<f64>,
    pub check: Option<FitReport>,
    pub pass: bool,
}

/// Runs `--replicas` seeds (default 200) of the model (default Simon) and
/// reports the spread of `N_k / t` at each of `--t-list`. Writes
/// `concentration.csv` (`t,mean,std,epsilon`) and `concentration.json`.
pub fn cmd_concentration(cfg: &ExperimentConfig) -> Result<ConcentrationResult> {
    let spec = if cfg.model.is_some() {
        cfg.model_spec()?
    } else {
        let mut with_model = cfg.clone();
        with_model.model = Some(ModelName::Simon);
        with_model.model_spec()?
    };
    if matches!(spec, ModelSpec::Yule { .. }) {
        return Err(Error::Config("concentration needs a discrete model".into()));
    }
    if cfg.t_list.is_empty() {
        return Err(Error::Config("--t-list is required".into()));
    }
    let k = cfg.k.unwrap_or(1);
    let seeds = cfg.replicas.unwrap_or(200) as usize;
    let points = concentration_scan(&spec, k, &cfg.t_list, seeds, cfg.seed())?;
    let ratio = match (points.first(), points.last()) {
        (Some(a), Some(b)) if points.len() > 1 && a.std > 0.0 => Some(b.std / a.std),
        _ => None,
    };
    let check = match (ratio, cfg.ratio_min.is_some() || cfg.ratio_max.is_some()) {
        (Some(r), true) => Some(
            FitReport::new(Statistic::Ratio, r, seeds as u64)
                .within(cfg.ratio_min, cfg.ratio_max)
                .labelled("std ratio, last t over first t"),
        ),
        _ => None,
    };
    let pass = check.as_ref().is_none_or(|c| c.pass);
    let result = ConcentrationResult {
        model: spec,
        k,
        seeds,
        points,
        ratio,
        check,
        pass,
    };

    let mut csv = Csv::new(&["t", "mean", "std", "epsilon"]);
    for p in &result.points {
        csv.row([&p.t as &dyn std::fmt::Display, &p.mean, &p.std, &p.epsilon]);
    }
    match &cfg.out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_text(dir, "concentration.csv", csv.as_str())?;
            write_json(dir, "concentration.json", &result)?;
        }
        None => print!("{}", csv.as_str()),
    }
    Ok(result)
}
