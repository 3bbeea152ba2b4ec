//! Exact iteration of the expectation (master) equations.
//!
//! Every recurrence here is linear and lower-triangular in `k`: the update of
//! `E N_k` reads only `E N_{k-1}` and `E N_k`. Truncating at `k_max` therefore
//! leaves the entries `k <= k_max` exact. Rows are kept only at the times a
//! [`Schedule`] selects, so long runs stay cheap in memory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_alpha, check_m, OutDegreeLaw};

/// Which times get a row in an [`ExpectationTable`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "schedule", rename_all = "kebab-case")]
pub enum Schedule {
    Every,
    /// `first`, then each time at least `ratio` times the previous one.
    Geometric {
        ratio: f64,
    },
    Only {
        times: Vec<u64>,
    },
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::Geometric { ratio: 2.0 }
    }
}

impl Schedule {
    /// Sorted, deduplicated times in `[first, last]`. `last` is always included.
    pub fn times(&self, first: u64, last: u64) -> Vec<u64> {
        let mut out: Vec<u64> = match self {
            Schedule::Every => (first..=last).collect(),
            Schedule::Geometric { ratio } => {
                let ratio = if ratio.is_finite() && *ratio > 1.0 {
                    *ratio
                } else {
                    2.0
                };
                let mut v = Vec::new();
                let mut t = first.max(1);
                while t < last {
                    v.push(t);
                    t = ((t as f64 * ratio).ceil() as u64).max(t + 1);
                }
                v
            }
            Schedule::Only { times } => times
                .iter()
                .copied()
                .filter(|t| (first..=last).contains(t))
                .collect(),
        };
        if first <= last {
            out.push(last);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationRow {
    pub time: u64,
    /// `values[k - 1] = E N_k` for `k = 1..=k_max`.
    pub values: Vec<f64>,
}

/// Expected counts `E N_k` at selected times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationTable {
    pub model: String,
    /// What the time column counts: `"t"` for steps, `"n"` for vertices.
    pub index: String,
    pub k_max: usize,
    pub rows: Vec<ExpectationRow>,
}

impl ExpectationTable {
    fn new(model: &str, index: &str, k_max: usize) -> Self {
        ExpectationTable {
            model: model.into(),
            index: index.into(),
            k_max,
            rows: Vec::new(),
        }
    }

    pub fn times(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().map(|r| r.time)
    }

    pub fn row(&self, time: u64) -> Option<&[f64]> {
        self.rows
            .binary_search_by_key(&time, |r| r.time)
            .ok()
            .map(|i| self.rows[i].values.as_slice())
    }

    /// `E N_k` at `time`; `None` if the time was not recorded or `k` is out of range.
    pub fn get(&self, time: u64, k: u64) -> Option<f64> {
        let row = self.row(time)?;
        if k == 0 {
            return None;
        }
        row.get(k as usize - 1).copied()
    }

    pub fn last(&self) -> Option<&ExpectationRow> {
        self.rows.last()
    }
}

fn check_k_max(k_max: usize) -> Result<()> {
    if k_max >= 1 {
        Ok(())
    } else {
        Err(Error::invalid("k_max must be >= 1"))
    }
}

/// Applies `N_k += c [(k-1) N_{k-1} - k N_k]` for `k = 2..=hi`, then
/// `N_1 -= c N_1`. Runs downwards so every update reads pre-step values.
#[inline]
fn attach_update(n: &mut [f64], c: f64, hi: usize) {
    for idx in (1..hi).rev() {
        let k = (idx + 1) as f64;
        n[idx] += c * ((k - 1.0) * n[idx - 1] - k * n[idx]);
    }
    n[0] -= c * n[0];
}

/// Simon model, `E N_k` at step `t` for `t = 1..=t_max`.
pub fn simon_expected(
    t_max: u64,
    k_max: usize,
    alpha: f64,
    schedule: &Schedule,
) -> Result<ExpectationTable> {
    check_alpha(alpha)?;
    check_k_max(k_max)?;
    if t_max < 1 {
        return Err(Error::invalid("t_max must be >= 1"));
    }
    let mut table = ExpectationTable::new("simon", "t", k_max);
    let times = schedule.times(1, t_max);
    let mut next = times.iter().peekable();
    let mut n = vec![0.0; k_max];
    n[0] = 1.0;
    for t in 1..=t_max {
        if next.peek() == Some(&&t) {
            table.rows.push(ExpectationRow {
                time: t,
                values: n.clone(),
            });
            next.next();
        }
        if t == t_max {
            break;
        }
        // step t -> t+1; in-degrees never exceed t
        let hi = k_max.min(t as usize + 1);
        attach_update(&mut n, (1.0 - alpha) / t as f64, hi);
        n[0] += alpha;
    }
    Ok(table)
}

/// II-PA model, `E N_k` after `n` complete vertices, `n = 1..=n_max`.
///
/// Iterated one elementary step at a time: a vertex arrival adds one unit to
/// `N_1`; an edge drawn at step `t` moves mass with coefficient `1/(t-1)`.
pub fn iipa_expected(
    n_max: u64,
    k_max: usize,
    m: u32,
    schedule: &Schedule,
) -> Result<ExpectationTable> {
    check_m(m)?;
    check_k_max(k_max)?;
    if n_max < 1 {
        return Err(Error::invalid("n_max must be >= 1"));
    }
    let mut table = ExpectationTable::new("iipa", "n", k_max);
    let times = schedule.times(1, n_max);
    let mut next = times.iter().peekable();
    let block = u64::from(m) + 1;
    let mut n = vec![0.0; k_max];
    for t in 1..=n_max * block {
        let phase = (t - 1) % block;
        if phase == 0 {
            n[0] += 1.0;
        } else {
            let hi = k_max.min(t as usize);
            attach_update(&mut n, 1.0 / (t - 1) as f64, hi);
        }
        if t % block == 0 {
            let done = t / block;
            if next.peek() == Some(&&done) {
                table.rows.push(ExpectationRow {
                    time: done,
                    values: n.clone(),
                });
                next.next();
            }
        }
    }
    Ok(table)
}

/// Price model with constant out-degree, `E N_k` with `n` vertices.
///
/// Iterates the conditional-expectation equations with normalising mass
/// `n k0 + n M`. They are exact when `M = 1`, where each batch is a single
/// draw. For `M > 1` they ignore the distinctness of targets within a batch
/// and are only asymptotically correct; at small `n` they can even go
/// negative, since `M k` may exceed the mass.
pub fn price_expected(
    n_max: u64,
    k_max: usize,
    k0: u32,
    law: OutDegreeLaw,
    schedule: &Schedule,
) -> Result<ExpectationTable> {
    law.validate()?;
    check_k_max(k_max)?;
    if k0 < 1 {
        return Err(Error::invalid("k0 must be >= 1"));
    }
    if n_max < 1 {
        return Err(Error::invalid("n_max must be >= 1"));
    }
    let m = match law {
        OutDegreeLaw::Constant { m } => f64::from(m),
        OutDegreeLaw::Geometric { .. } => {
            return Err(Error::Unsupported(
                "exact expectation iteration needs a constant out-degree; the normalising mass is random otherwise".into(),
            ))
        }
    };
    let mut table = ExpectationTable::new("price", "n", k_max);
    let times = schedule.times(1, n_max);
    let mut next = times.iter().peekable();
    let k0f = f64::from(k0);
    let k0i = k0 as usize;
    let mut n = vec![0.0; k_max];
    let first = k0i + m as usize;
    if first <= k_max {
        n[first - 1] = 1.0;
    }
    for v in 1..=n_max {
        if next.peek() == Some(&&v) {
            table.rows.push(ExpectationRow {
                time: v,
                values: n.clone(),
            });
            next.next();
        }
        if v == n_max {
            break;
        }
        let c = m / (v as f64 * (k0f + m));
        // classes below k0 stay empty; k0 gains the newcomer
        for idx in (k0i..k_max).rev() {
            let k = (idx + 1) as f64;
            n[idx] += c * ((k - 1.0) * n[idx - 1] - k * n[idx]);
        }
        if k0i <= k_max {
            n[k0i - 1] = 1.0 + (1.0 - c * k0f) * n[k0i - 1];
        }
    }
    Ok(table)
}

/// Single-edge Barabási–Albert process, `E N_k` (degree) with `t` vertices.
pub fn ba_single_expected(
    t_max: u64,
    k_max: usize,
    schedule: &Schedule,
) -> Result<ExpectationTable> {
    check_k_max(k_max)?;
    if t_max < 1 {
        return Err(Error::invalid("t_max must be >= 1"));
    }
    let mut table = ExpectationTable::new("ba-single", "t", k_max);
    let times = schedule.times(1, t_max);
    let mut next = times.iter().peekable();
    let mut n = vec![0.0; k_max];
    if k_max >= 2 {
        n[1] = 1.0;
    }
    for t in 1..=t_max {
        if next.peek() == Some(&&t) {
            table.rows.push(ExpectationRow {
                time: t,
                values: n.clone(),
            });
            next.next();
        }
        if t == t_max {
            break;
        }
        let denom = (2 * t + 1) as f64;
        // degrees never exceed 2t after t steps
        let hi = k_max.min(2 * t as usize + 1);
        attach_update(&mut n, 1.0 / denom, hi);
        n[0] += 2.0 * t as f64 / denom;
        if k_max >= 2 {
            n[1] += 1.0 / denom;
        }
    }
    Ok(table)
}
