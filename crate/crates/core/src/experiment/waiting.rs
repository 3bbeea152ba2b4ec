use serde::Serialize;

use super::config::ExperimentConfig;
use super::output::{ensure_dir, write_json, write_text, Csv};
use crate::error::{Error, Result};
use crate::model::simon::{simon_run_with_genealogy, SimonProcess};
use crate::rng::{Purpose, StreamRng};
use crate::stats::{
    collect_descendant_waiting_times, FitReport, WaitingTimeCollector, WaitingTimes,
};

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub k: u32,
    pub rate: f64,
    pub z_cap: f64,
    pub n_at_risk: usize,
    pub observed: usize,
    pub ks: Option<FitReport>,
    pub rate_mle: Option<f64>,
    /// Set when the level had too little data; not fatal.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WaitingResult {
    pub genealogy: bool,
    pub alpha: f64,
    pub t_star: u64,
    pub t_final: u64,
    pub levels: Vec<LevelReport>,
    pub pass: bool,
    #[serde(skip)]
    pub waits: WaitingTimes,
}

/// Runs a Simon process of `--steps` steps and tests the log-time waits at
/// each of `--levels` (default 1, 2) against their exponential laws. Waits
/// are censored at `--z-cap` (default half of `ln(t_final / t_star)`).
/// Writes `waiting_times.csv` (`vertex,k,x,epoch,z`) and `waiting_times.json`.
pub fn cmd_waiting_times(cfg: &ExperimentConfig) -> Result<WaitingResult> {
    let alpha = cfg
        .alpha
        .ok_or_else(|| Error::Config("--alpha is required".into()))?;
    crate::model::check_alpha(alpha)?;
    let steps = cfg
        .steps
        .ok_or_else(|| Error::Config("--steps is required".into()))?;
    let t_star = cfg.t_star();
    if t_star < 2 || t_star >= steps {
        return Err(Error::Config(format!(
            "--t-star must lie in [2, steps), got {t_star}"
        )));
    }
    let seed = cfg.seed();
    let waits = if cfg.genealogy {
        let mut rng = StreamRng::seeded(seed, Purpose::Genealogy);
        let run = simon_run_with_genealogy(steps, alpha, &mut rng)?;
        collect_descendant_waiting_times(&run, t_star)?
    } else {
        let mut p = SimonProcess::new(alpha, StreamRng::seeded(seed, Purpose::Simon))?;
        let mut c = WaitingTimeCollector::new(t_star)?;
        while p.state().t() < steps {
            let e = p.next().expect("the process never ends");
            c.record(&e);
        }
        c.finish(alpha)
    };

    let z_cap = cfg.z_cap.unwrap_or_else(|| waits.default_z_cap());
    let levels = if cfg.levels.is_empty() {
        vec![1, 2]
    } else {
        cfg.levels.clone()
    };
    let mut reports = Vec::new();
    for &k in &levels {
        let level = waits.censored_level(k, z_cap);
        let rate = waits.rate(k);
        let mut report = LevelReport {
            k,
            rate,
            z_cap,
            n_at_risk: level.n_at_risk,
            observed: level.observed.len(),
            ks: None,
            rate_mle: level.rate_mle().ok(),
            error: None,
        };
        match level.ks(rate) {
            Ok(ks) => {
                report.ks = Some(match cfg.ks_threshold {
                    Some(th) => ks.at_most(th),
                    None => ks,
                })
            }
            Err(e @ Error::InsufficientData(_)) => report.error = Some(e.to_string()),
            Err(e) => return Err(e),
        }
        reports.push(report);
    }
    let pass = reports
        .iter()
        .all(|r| r.ks.as_ref().is_none_or(|ks| ks.pass));
    let result = WaitingResult {
        genealogy: cfg.genealogy,
        alpha,
        t_star: waits.t_star,
        t_final: waits.t_final,
        levels: reports,
        pass,
        waits,
    };

    if let Some(dir) = &cfg.out {
        ensure_dir(dir)?;
        let mut csv = Csv::new(&["vertex", "k", "x", "epoch", "z"]);
        for s in &result.waits.samples {
            csv.row([
                &s.vertex as &dyn std::fmt::Display,
                &s.k,
                &s.x,
                &s.epoch,
                &s.z,
            ]);
        }
        write_text(dir, "waiting_times.csv", csv.as_str())?;
        write_json(dir, "waiting_times.json", &result)?;
    } else {
        println!("{}", serde_json::to_string_pretty(&result)?);
    }
    Ok(result)
}
