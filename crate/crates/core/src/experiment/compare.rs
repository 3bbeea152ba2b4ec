use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::ExperimentConfig;
use super::output::{ensure_dir, write_json};
use super::RunSummary;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::stats::{
    tail_slope, total_variation_pmf, total_variation_unchecked, DegreeHistogram, DegreeKind,
    FitReport,
};

#[derive(Debug, Clone, Serialize)]
pub struct CompareResult {
    pub reports: Vec<FitReport>,
    pub pass: bool,
}

/// What a run file holds.
enum RunData {
    Histogram {
        hist: DegreeHistogram,
        model: Option<ModelSpec>,
    },
    Pmf {
        pmf: BTreeMap<u64, f64>,
        kind: Option<DegreeKind>,
    },
}

fn parse_csv(path: &Path, text: &str, kind: Option<DegreeKind>) -> Result<RunData> {
    let bad = |msg: String| Error::Config(format!("{}: {msg}", path.display()));
    let mut lines = text.lines();
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| bad("empty file".into()))?
        .split(',')
        .collect();
    let col = |name: &str| header.iter().position(|h| h.trim() == name);
    let k_col = col("k").ok_or_else(|| bad("no `k` column".into()))?;
    let rows = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::trim).collect::<Vec<_>>());
    if let Some(c_col) = col("count") {
        let kind = kind.ok_or_else(|| bad("a histogram CSV needs --kind".into()))?;
        let mut hist = DegreeHistogram::empty(kind, 0);
        for r in rows {
            let k = r
                .get(k_col)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("bad k in {r:?}")))?;
            let c = r
                .get(c_col)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("bad count in {r:?}")))?;
            hist.add(k, c);
        }
        Ok(RunData::Histogram { hist, model: None })
    } else if let Some(p_col) = col("pmf") {
        let mut pmf = BTreeMap::new();
        for r in rows {
            let k = r
                .get(k_col)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("bad k in {r:?}")))?;
            let p = r
                .get(p_col)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("bad pmf in {r:?}")))?;
            pmf.insert(k, p);
        }
        Ok(RunData::Pmf { pmf, kind })
    } else {
        Err(bad("expected a `count` or a `pmf` column".into()))
    }
}

fn load(path: &PathBuf, kind: Option<DegreeKind>) -> Result<RunData> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if path.extension().is_some_and(|e| e == "json") {
        let summary: RunSummary = serde_json::from_str(&text)?;
        let hist = summary.final_histogram().cloned().ok_or_else(|| {
            Error::InsufficientData(format!("{} holds no histogram", path.display()))
        })?;
        Ok(RunData::Histogram {
            hist,
            model: summary.model,
        })
    } else {
        parse_csv(path, &text, kind)
    }
}

/// Compares each `--run` file with a limit law: the one named by `--theory`,
/// or the run's own model. Kinds must agree unless `--override-kind` is set.
/// Reports go to `compare.json` under `--out`, or to stdout.
pub fn cmd_compare(cfg: &ExperimentConfig) -> Result<CompareResult> {
    if cfg.run.is_empty() {
        return Err(Error::Config(
            "compare needs at least one --run file".into(),
        ));
    }
    let kind = cfg.kind.map(DegreeKind::from);
    let mut reports = Vec::new();
    for path in &cfg.run {
        let data = load(path, kind)?;
        let (run_kind, model) = match &data {
            RunData::Histogram { hist, model } => (Some(hist.kind()), *model),
            RunData::Pmf { kind, .. } => (*kind, None),
        };
        let theory = cfg.theory_pmf(model.as_ref())?;
        if let Some(rk) = run_kind {
            if rk != theory.kind() && !cfg.override_kind {
                return Err(Error::KindMismatch {
                    run: rk.to_string(),
                    theory: theory.kind().to_string(),
                });
            }
        }
        let label = path.display().to_string();
        let tv = match &data {
            RunData::Histogram { hist, .. } => {
                total_variation_unchecked(hist, &theory, cfg.k_cap())?
            }
            RunData::Pmf { pmf, .. } => total_variation_pmf(pmf, &theory, cfg.k_cap())?,
        };
        let tv = match cfg.tv_threshold {
            Some(th) => tv.at_most(th),
            None => tv,
        };
        reports.push(tv.labelled(format!("{label} vs {}", theory.name())));
        if let (Some(lo), Some(hi), RunData::Histogram { hist, .. }) =
            (cfg.slope_k_lo, cfg.slope_k_hi, &data)
        {
            reports.push(
                tail_slope(hist, lo, hi)?
                    .within(cfg.slope_min, cfg.slope_max)
                    .labelled(label),
            );
        }
    }
    let result = CompareResult {
        pass: reports.iter().all(|r| r.pass),
        reports,
    };
    match &cfg.out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_json(dir, "compare.json", &result)?;
        }
        None => println!("{}", serde_json::to_string_pretty(&result)?),
    }
    Ok(result)
}
