use serde::Serialize;

use super::config::ExperimentConfig;
use super::output::{ensure_dir, write_json, write_text, Csv};
use crate::error::{Error, Result};
use crate::model::{ModelSpec, OutDegreeLaw};
use crate::theory::{
    ba_single_expected, iipa_expected, price_expected, simon_expected, ExpectationTable, Schedule,
    TheoryPmf,
};

#[derive(Debug, Clone, Serialize)]
pub struct TheoryResult {
    pub law: TheoryPmf,
    pub k_min: u64,
    pub tail_exponent: f64,
    /// `(k, pmf, P(K >= k))` for `k = k_min..=k_cap`.
    pub rows: Vec<(u64, f64, f64)>,
    pub expected: Option<ExpectationTable>,
    /// Why no expectation table was produced, when a run length was given.
    pub note: Option<String>,
}

fn expectations(
    cfg: &ExperimentConfig,
    spec: &ModelSpec,
    k_max: usize,
) -> Result<Option<ExpectationTable>> {
    let schedule = Schedule::Geometric {
        ratio: cfg.checkpoint_ratio.unwrap_or(10.0),
    };
    let table = match (*spec, cfg.steps, cfg.vertices) {
        (ModelSpec::Simon { alpha }, Some(t), _) => simon_expected(t, k_max, alpha, &schedule)?,
        (ModelSpec::Iipa { m }, _, Some(n)) => iipa_expected(n, k_max, m, &schedule)?,
        (ModelSpec::Price { k0, out_degree }, _, Some(n)) => {
            price_expected(n, k_max, k0, out_degree, &schedule)?
        }
        (ModelSpec::BaIdentified { m: 1 } | ModelSpec::BaRescaled { m: 1 }, _, Some(n)) => {
            ba_single_expected(n, k_max, &schedule)?
        }
        (ModelSpec::BaIdentified { .. } | ModelSpec::BaRescaled { .. }, _, Some(_)) => {
            return Err(Error::Unsupported(
                "expected degree counts are iterated for m = 1 only".into(),
            ))
        }
        _ => return Ok(None),
    };
    Ok(Some(table))
}

/// Evaluates the model's limit pmf on `k <= k_cap`; with `--steps` or
/// `--vertices`, also the expected counts at geometric checkpoints. Writes
/// `theory.csv` (`k,pmf,survival`) and `expected.csv`
/// (`time,k,expected,per_unit`) to `--out`, or prints `theory.csv` to stdout.
pub fn cmd_theory(cfg: &ExperimentConfig) -> Result<TheoryResult> {
    let spec = cfg.model_spec()?;
    let law = cfg.theory_pmf(Some(&spec))?;
    let k_cap = cfg.k_cap();
    let rows: Vec<(u64, f64, f64)> = (law.k_min()..=k_cap.max(law.k_min()))
        .map(|k| (k, law.pmf(k), law.survival(k)))
        .collect();

    let (expected, mut note) = match expectations(cfg, &spec, k_cap as usize) {
        Ok(t) => (t, None),
        Err(Error::Unsupported(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    if let (
        ModelSpec::Price {
            out_degree: OutDegreeLaw::Constant { m },
            ..
        },
        Some(_),
    ) = (spec, &expected)
    {
        if m > 1 {
            note = Some(
                "the batch equations ignore target distinctness and are asymptotic for m > 1"
                    .into(),
            );
        }
    }

    let mut pmf_csv = Csv::new(&["k", "pmf", "survival"]);
    for (k, p, s) in &rows {
        pmf_csv.row([k as &dyn std::fmt::Display, p, s]);
    }
    let result = TheoryResult {
        law,
        k_min: law.k_min(),
        tail_exponent: law.tail_exponent(),
        rows,
        expected,
        note,
    };

    match &cfg.out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_text(dir, "theory.csv", pmf_csv.as_str())?;
            if let Some(table) = &result.expected {
                let mut csv = Csv::new(&["time", "k", "expected", "per_unit"]);
                for row in &table.rows {
                    for (i, v) in row.values.iter().enumerate() {
                        let k = i + 1;
                        csv.row([
                            &row.time as &dyn std::fmt::Display,
                            &k,
                            v,
                            &(v / row.time as f64),
                        ]);
                    }
                }
                write_text(dir, "expected.csv", csv.as_str())?;
            }
            write_json(dir, "theory.json", &result)?;
        }
        None => print!("{}", pmf_csv.as_str()),
    }
    Ok(result)
}
