use std::time::Instant;

use rayon::prelude::*;

use super::config::{ExperimentConfig, YuleSampler, DEFAULT_CHECKPOINT_RATIO};
use super::output::{ensure_dir, histogram_csv, write_json, write_text};
use super::{Checkpoint, Metrics, RunSummary};
use crate::error::{Error, Result};
use crate::model::ba::{
    ba_init, ba_step_single, identify_blocks, BaRescaledProcess, BaSingleProcess,
};
use crate::model::iipa::IipaProcess;
use crate::model::price::PriceProcess;
use crate::model::simon::SimonProcess;
use crate::model::yule::{
    yule_sample_genus_direct, yule_sample_uniform_genus, YuleCaps, YuleParams, YuleScratch,
};
use crate::model::{GraphState, GrowthProcess, ModelSpec};
use crate::rng::{Purpose, StreamRng};
use crate::stats::{tail_slope, total_variation, DegreeHistogram, DegreeKind, FitReport};
use crate::theory::Schedule;

/// Histograms of one replica at each checkpoint.
struct ReplicaRun {
    histograms: Vec<DegreeHistogram>,
    events: u64,
    truncations: u64,
}

fn purpose_for(spec: &ModelSpec, couple: bool) -> Result<Purpose> {
    if couple {
        return match spec {
            ModelSpec::Iipa { .. } | ModelSpec::BaRescaled { .. } => Ok(Purpose::Coupling),
            _ => Err(Error::Config(
                "--couple applies to the iipa and ba-rescaled models only".into(),
            )),
        };
    }
    Ok(match spec {
        ModelSpec::Simon { .. } => Purpose::Simon,
        ModelSpec::Iipa { .. } => Purpose::Iipa,
        ModelSpec::Price { .. } => Purpose::Price,
        ModelSpec::BaIdentified { .. } => Purpose::BaSingle,
        ModelSpec::BaRescaled { .. } => Purpose::BaRescaled,
        ModelSpec::Yule { .. } => Purpose::YuleEventDriven,
    })
}

/// Runs one replica of a discrete model, snapshotting at each checkpoint.
/// Checkpoints count steps for Simon and complete vertices otherwise.
fn run_discrete(spec: &ModelSpec, checkpoints: &[u64], rng: StreamRng) -> Result<ReplicaRun> {
    let mut histograms = Vec::with_capacity(checkpoints.len());
    let mut truncations = 0;
    let state_t = match *spec {
        ModelSpec::Simon { alpha } => {
            let mut p = SimonProcess::new(alpha, rng)?;
            for &t in checkpoints {
                p.run_until(t);
                histograms.push(DegreeHistogram::from_state(p.state()));
            }
            p.state().t()
        }
        ModelSpec::Iipa { m } => {
            let mut p = IipaProcess::new(m, rng)?;
            for &n in checkpoints {
                p.run_until_complete(n);
                histograms.push(DegreeHistogram::from_state(p.state()));
            }
            p.state().t()
        }
        ModelSpec::Price { k0, out_degree } => {
            let mut p = PriceProcess::new(k0, out_degree, rng)?;
            for &n in checkpoints {
                while (p.state().n_vertices() as u64) < n {
                    p.step_into(&mut |_| {});
                }
                histograms.push(DegreeHistogram::from_state(p.state()));
            }
            truncations = p.price_state().truncations;
            p.state().t()
        }
        ModelSpec::BaRescaled { m } => {
            let mut p = BaRescaledProcess::new(m, rng)?;
            for &n in checkpoints {
                p.run_until_complete(n)?;
                histograms.push(DegreeHistogram::from_state(p.state()));
            }
            p.state().t()
        }
        ModelSpec::BaIdentified { m: 1 } => {
            let mut p = BaSingleProcess::new(rng);
            for &n in checkpoints {
                while p.state().t() < n {
                    p.step_into(&mut |_| {});
                }
                histograms.push(DegreeHistogram::from_state(p.state()));
            }
            p.state().t()
        }
        ModelSpec::BaIdentified { m } => {
            let mut rng = rng;
            let mut state: GraphState = ba_init();
            for &n in checkpoints {
                while state.t() < n * u64::from(m) {
                    ba_step_single(&mut state, &mut rng);
                }
                histograms.push(DegreeHistogram::from_state(&identify_blocks(&state, m)?));
            }
            state.t()
        }
        ModelSpec::Yule { .. } => {
            return Err(Error::Unsupported("yule is not a discrete model".into()))
        }
    };
    Ok(ReplicaRun {
        histograms,
        events: state_t,
        truncations,
    })
}

fn yule_histogram(
    cfg: &ExperimentConfig,
    params: YuleParams,
    replicas: u64,
) -> Result<DegreeHistogram> {
    let horizon = cfg
        .time_horizon
        .ok_or_else(|| Error::Config("--time-horizon is required for model yule".into()))?;
    let sampler = cfg.sampler.unwrap_or(YuleSampler::EventDriven);
    let seed = cfg.seed();
    let sizes: Vec<u64> = (0..replicas)
        .into_par_iter()
        .map_init(YuleScratch::default, |scratch, r| match sampler {
            YuleSampler::EventDriven => {
                let mut rng = StreamRng::new(seed, r, Purpose::YuleEventDriven);
                yule_sample_uniform_genus(params, horizon, YuleCaps::default(), scratch, &mut rng)
            }
            YuleSampler::Direct => {
                let mut rng = StreamRng::new(seed, r, Purpose::YuleDirect);
                yule_sample_genus_direct(params, horizon, &mut rng)
            }
        })
        .collect::<Result<_>>()?;
    Ok(DegreeHistogram::from_values(
        DegreeKind::GenusSize,
        0,
        sizes,
    ))
}

/// Fit reports for a final histogram: TV always, the slope when a range is set.
pub(crate) fn fits_for(
    cfg: &ExperimentConfig,
    hist: &DegreeHistogram,
    spec: &ModelSpec,
) -> Result<Vec<FitReport>> {
    let theory = cfg.theory_pmf(Some(spec))?;
    let mut fits = Vec::new();
    let tv = total_variation(hist, &theory, cfg.k_cap())?;
    fits.push(match cfg.tv_threshold {
        Some(th) => tv.at_most(th),
        None => tv,
    });
    if let (Some(lo), Some(hi)) = (cfg.slope_k_lo, cfg.slope_k_hi) {
        fits.push(tail_slope(hist, lo, hi)?.within(cfg.slope_min, cfg.slope_max));
    }
    Ok(fits)
}

/// Runs the configured model. With `--out`, writes one `histogram_<unit><time>.csv`
/// per checkpoint, `histogram.csv` for the last one, `summary.json` and
/// `metrics.json`.
pub fn cmd_simulate(cfg: &ExperimentConfig) -> Result<(RunSummary, Metrics)> {
    let spec = cfg.model_spec()?;
    let replicas = cfg.replicas()?;
    let purpose = purpose_for(&spec, cfg.couple)?;
    let started = Instant::now();

    let (unit, checkpoints, events, truncations) = match spec {
        ModelSpec::Yule { beta, lambda } => {
            let hist = yule_histogram(cfg, YuleParams::new(beta, lambda)?, replicas)?;
            // one sampled genus counts as one event
            (
                "genera",
                vec![Checkpoint {
                    time: replicas,
                    histogram: hist,
                }],
                replicas,
                0,
            )
        }
        _ => {
            let (unit, last, flag) = match spec {
                ModelSpec::Simon { .. } => ("t", cfg.steps, "steps"),
                _ => ("n", cfg.vertices, "vertices"),
            };
            let last = last.ok_or_else(|| {
                Error::Config(format!("--{flag} is required for model {}", spec.name()))
            })?;
            if last == 0 {
                return Err(Error::Config(format!("--{flag} must be >= 1")));
            }
            let ratio = cfg.checkpoint_ratio.unwrap_or(DEFAULT_CHECKPOINT_RATIO);
            if ratio.is_nan() || ratio <= 1.0 {
                return Err(Error::Config("--checkpoint-ratio must be > 1".into()));
            }
            let times = Schedule::Geometric { ratio }.times(1, last);
            let seed = cfg.seed();
            let runs: Vec<ReplicaRun> = (0..replicas)
                .into_par_iter()
                .map(|r| run_discrete(&spec, &times, StreamRng::new(seed, r, purpose)))
                .collect::<Result<_>>()?;
            let mut merged: Vec<Checkpoint> = times
                .iter()
                .zip(&runs[0].histograms)
                .map(|(&time, h)| Checkpoint {
                    time,
                    histogram: h.clone(),
                })
                .collect();
            for run in &runs[1..] {
                for (c, h) in merged.iter_mut().zip(&run.histograms) {
                    c.histogram.merge(h)?;
                }
            }
            let events = runs.iter().map(|r| r.events).sum();
            let truncations = runs.iter().map(|r| r.truncations).sum();
            (unit, merged, events, truncations)
        }
    };
    let elapsed = started.elapsed().as_secs_f64();

    let last = checkpoints
        .last()
        .expect("at least one checkpoint")
        .histogram
        .clone();
    let fits = fits_for(cfg, &last, &spec)?;
    let summary = RunSummary::new("simulate", cfg, replicas)
        .with_model(spec, last.kind(), unit)
        .with_checkpoints(checkpoints)
        .with_fits(fits)
        .with_counts(events, truncations);
    let metrics = Metrics::new(elapsed, events);

    if let Some(dir) = &cfg.out {
        ensure_dir(dir)?;
        for c in &summary.checkpoints {
            write_text(
                dir,
                &format!("histogram_{unit}{}.csv", c.time),
                histogram_csv(&c.histogram).as_str(),
            )?;
        }
        write_text(dir, "histogram.csv", histogram_csv(&last).as_str())?;
        write_json(dir, "summary.json", &summary)?;
        write_json(dir, "metrics.json", &metrics)?;
    }
    Ok((summary, metrics))
}
