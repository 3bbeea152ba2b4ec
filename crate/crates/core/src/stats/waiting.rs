//! Waiting times between successive in-degree increments of a vertex, and
//! between successive descendants of a root in the genealogy form.
//!
//! A wait at level `k` starts at epoch `t_{k-1}` and lasts `x` steps. Its
//! log-time transform `z = ln(1 + x / (t_{k-1} - 1))` is approximately
//! exponential, with rate `(1 - alpha) k` for in-degree waits and `k` for
//! descendant waits.

use serde::{Deserialize, Serialize};

use super::ks::{exponential_rate_mle, ks_statistic_censored};
use super::FitReport;
use crate::error::{Error, Result};
use crate::model::simon::GenealogyRun;
use crate::model::{EventKind, EventRecord};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaitingTimeSample {
    pub vertex: u32,
    pub k: u32,
    pub x: u64,
    pub epoch: u64,
    pub z: f64,
}

/// A wait still running when observation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenWait {
    pub vertex: u32,
    pub k: u32,
    pub epoch: u64,
    pub elapsed: u64,
}

pub fn log_time(x: u64, epoch: u64) -> f64 {
    (x as f64 / (epoch - 1) as f64).ln_1p()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaitingTimes {
    pub samples: Vec<WaitingTimeSample>,
    pub open: Vec<OpenWait>,
    pub t_star: u64,
    pub t_final: u64,
    /// The rate at level `k` is `base_rate * k`.
    pub base_rate: f64,
}

/// The waits of one level that were followed for at least `z_cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct CensoredLevel {
    pub k: u32,
    pub z_cap: f64,
    /// Completed waits with `z <= z_cap`.
    pub observed: Vec<f64>,
    pub n_at_risk: usize,
}

impl CensoredLevel {
    pub fn ks(&self, rate: f64) -> Result<FitReport> {
        Ok(
            ks_statistic_censored(&self.observed, self.n_at_risk, rate, self.z_cap)?
                .labelled(format!("k={}", self.k)),
        )
    }

    pub fn rate_mle(&self) -> Result<f64> {
        exponential_rate_mle(&self.observed, self.n_at_risk, self.z_cap)
    }
}

impl WaitingTimes {
    pub fn rate(&self, k: u32) -> f64 {
        self.base_rate * f64::from(k)
    }

    pub fn max_level(&self) -> u32 {
        self.samples.iter().map(|s| s.k).max().unwrap_or(0)
    }

    pub fn level(&self, k: u32) -> impl Iterator<Item = &WaitingTimeSample> + '_ {
        self.samples.iter().filter(move |s| s.k == k)
    }

    pub fn z_values(&self, k: u32) -> Vec<f64> {
        self.level(k).map(|s| s.z).collect()
    }

    /// Half the log-time span `ln(t_final / t_star)`.
    pub fn default_z_cap(&self) -> f64 {
        0.5 * (self.t_final as f64 / self.t_star as f64).ln()
    }

    /// Whether a wait starting at `epoch` could be followed up to `z_cap`.
    pub fn followed_to(&self, epoch: u64, z_cap: f64) -> bool {
        epoch >= 2 && epoch as f64 + (epoch - 1) as f64 * z_cap.exp_m1() <= self.t_final as f64
    }

    /// Level-`k` waits whose epoch leaves room for a full `z_cap` of
    /// observation. Selecting on the epoch alone keeps the sample unbiased.
    pub fn censored_level(&self, k: u32, z_cap: f64) -> CensoredLevel {
        let mut observed = Vec::new();
        let mut n_at_risk = 0;
        for s in self.level(k).filter(|s| self.followed_to(s.epoch, z_cap)) {
            n_at_risk += 1;
            if s.z <= z_cap {
                observed.push(s.z);
            }
        }
        n_at_risk += self
            .open
            .iter()
            .filter(|o| o.k == k && self.followed_to(o.epoch, z_cap))
            .count();
        CensoredLevel {
            k,
            z_cap,
            observed,
            n_at_risk,
        }
    }
}

const UNTRACKED: u64 = 0;

/// Streaming extraction of in-degree waits from a Simon event feed.
/// Only vertices born at or after `t_star` are followed.
#[derive(Debug, Clone)]
pub struct WaitingTimeCollector {
    t_star: u64,
    t: u64,
    // (current in-degree, epoch); epoch UNTRACKED for vertices born before t_star
    track: Vec<(u32, u64)>,
    samples: Vec<WaitingTimeSample>,
}

impl WaitingTimeCollector {
    pub fn new(t_star: u64) -> Result<Self> {
        if t_star < 2 {
            return Err(Error::invalid("t_star must be >= 2"));
        }
        Ok(WaitingTimeCollector {
            t_star,
            t: 0,
            track: Vec::new(),
            samples: Vec::new(),
        })
    }

    pub fn record(&mut self, e: &EventRecord) {
        self.t = self.t.max(e.t);
        let v = e.target as usize;
        if v >= self.track.len() {
            self.track.resize(v + 1, (0, UNTRACKED));
        }
        if e.kind == EventKind::NewVertex {
            self.track[v] = (1, if e.t >= self.t_star { e.t } else { UNTRACKED });
            return;
        }
        let (k, epoch) = &mut self.track[v];
        if *epoch != UNTRACKED {
            let x = e.t - *epoch;
            self.samples.push(WaitingTimeSample {
                vertex: e.target,
                k: *k,
                x,
                epoch: *epoch,
                z: log_time(x, *epoch),
            });
            *epoch = e.t;
        }
        *k += 1;
    }

    /// Closes observation at the last recorded step.
    pub fn finish(self, alpha: f64) -> WaitingTimes {
        let t_final = self.t;
        let open = self
            .track
            .iter()
            .enumerate()
            .filter(|(_, &(_, epoch))| epoch != UNTRACKED)
            .map(|(v, &(k, epoch))| OpenWait {
                vertex: v as u32,
                k,
                epoch,
                elapsed: t_final - epoch,
            })
            .collect();
        WaitingTimes {
            samples: self.samples,
            open,
            t_star: self.t_star,
            t_final,
            base_rate: 1.0 - alpha,
        }
    }
}

/// In-degree waits of every vertex born at or after `t_star` in a Simon log.
pub fn collect_waiting_times<'a>(
    events: impl IntoIterator<Item = &'a EventRecord>,
    alpha: f64,
    t_star: u64,
) -> Result<WaitingTimes> {
    crate::model::check_alpha(alpha)?;
    let mut c = WaitingTimeCollector::new(t_star)?;
    for e in events {
        c.record(e);
    }
    Ok(c.finish(alpha))
}

/// Waits between successive descendants of the vertices alive at `t_star`.
///
/// The roots are the vertices born at or before `t_star`; all of them start
/// their count at the birth time of the last root.
pub fn collect_descendant_waiting_times(run: &GenealogyRun, t_star: u64) -> Result<WaitingTimes> {
    if t_star < 2 {
        return Err(Error::invalid("t_star must be >= 2"));
    }
    let births = run.state.birth_time();
    let n_roots = births.partition_point(|&b| b <= t_star);
    let start = births[n_roots - 1];
    if start < 2 {
        return Err(Error::InsufficientData(
            "only the initial vertex exists at t_star".into(),
        ));
    }
    let root = run.roots(n_roots);
    let mut track = vec![(1u32, start); n_roots];
    let mut samples = Vec::new();
    for v in n_roots..births.len() {
        let r = root[v] as usize;
        let t = births[v];
        let (k, epoch) = &mut track[r];
        let x = t - *epoch;
        samples.push(WaitingTimeSample {
            vertex: r as u32,
            k: *k,
            x,
            epoch: *epoch,
            z: log_time(x, *epoch),
        });
        *k += 1;
        *epoch = t;
    }
    let t_final = run.state.t();
    let open = track
        .iter()
        .enumerate()
        .map(|(r, &(k, epoch))| OpenWait {
            vertex: r as u32,
            k,
            epoch,
            elapsed: t_final - epoch,
        })
        .collect();
    Ok(WaitingTimes {
        samples,
        open,
        t_star: start,
        t_final,
        base_rate: 1.0,
    })
}
