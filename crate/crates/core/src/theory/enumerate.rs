//! Exact laws of tiny runs by exhaustive enumeration.
//!
//! States are per-vertex weight vectors (in-degree, or degree for the BA
//! processes). Each elementary step expands every state into its successors
//! with their exact probabilities, and identical successors are merged, so
//! the work is bounded by the number of distinct states rather than by the
//! number of paths. The transition kernels are written out from the model
//! definitions and share no code with the samplers in [`crate::model`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_alpha, check_m};
use crate::stats::DegreeKind;

/// Largest number of elementary steps `enumerate_exact` accepts.
pub const MAX_STEPS: u64 = 12;

const BRANCH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum EnumSpec {
    /// Simon process up to step `t`.
    Simon { alpha: f64, t: u64 },
    /// II-PA with `n` complete vertices.
    Iipa { m: u32, n: u64 },
    /// Price with constant out-degree `m` and `n` vertices.
    PriceConst { k0: u32, m: u32, n: u64 },
    /// Single-edge BA with `t` vertices.
    BaSingle { t: u64 },
    /// Rescaled BA with `n` complete vertices.
    BaRescaled { m: u32, n: u64 },
    /// Single-edge BA on `m n` vertices, merged in blocks of `m`.
    BaIdentified { m: u32, n: u64 },
}

impl EnumSpec {
    /// Elementary steps the enumeration has to expand.
    pub fn steps(&self) -> u64 {
        match *self {
            EnumSpec::Simon { t, .. } => t.saturating_sub(1),
            EnumSpec::Iipa { m, n } | EnumSpec::BaRescaled { m, n } => n * (u64::from(m) + 1),
            EnumSpec::PriceConst { n, .. } => n.saturating_sub(1),
            EnumSpec::BaSingle { t } => t.saturating_sub(1),
            EnumSpec::BaIdentified { m, n } => (u64::from(m) * n).saturating_sub(1),
        }
    }

    pub fn kind(&self) -> DegreeKind {
        match self {
            EnumSpec::Simon { .. } | EnumSpec::Iipa { .. } | EnumSpec::PriceConst { .. } => {
                DegreeKind::InDegree
            }
            _ => DegreeKind::Degree,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            EnumSpec::Simon { alpha, t } => {
                check_alpha(alpha)?;
                if t < 1 {
                    return Err(Error::invalid("t must be >= 1"));
                }
            }
            EnumSpec::Iipa { m, n }
            | EnumSpec::BaRescaled { m, n }
            | EnumSpec::BaIdentified { m, n } => {
                check_m(m)?;
                if n < 1 {
                    return Err(Error::invalid("n must be >= 1"));
                }
            }
            EnumSpec::PriceConst { k0, m, n } => {
                if k0 < 1 {
                    return Err(Error::invalid("k0 must be >= 1"));
                }
                check_m(m)?;
                if n < 1 {
                    return Err(Error::invalid("n must be >= 1"));
                }
            }
            EnumSpec::BaSingle { t } => {
                if t < 1 {
                    return Err(Error::invalid("t must be >= 1"));
                }
            }
        }
        if self.steps() > MAX_STEPS {
            return Err(Error::ResourceCap(format!(
                "{} elementary steps requested, enumeration is capped at {MAX_STEPS}",
                self.steps()
            )));
        }
        Ok(())
    }
}

type Weights = Vec<u32>;
type Layer = BTreeMap<Weights, f64>;

/// Exact distribution over final weight vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactLaw {
    pub kind: DegreeKind,
    /// Distinct weight vectors (indexed by vertex) with their probabilities.
    pub outcomes: Vec<(Weights, f64)>,
}

/// A histogram as sorted `(k, count)` pairs.
pub type HistogramKey = Vec<(u32, u64)>;

pub fn histogram_key(weights: &[u32]) -> HistogramKey {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &w in weights {
        *counts.entry(w).or_default() += 1;
    }
    counts.into_iter().collect()
}

impl ExactLaw {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|(_, p)| p).sum()
    }

    /// Law of the terminal histogram.
    pub fn histogram_law(&self) -> BTreeMap<HistogramKey, f64> {
        let mut law = BTreeMap::new();
        for (w, p) in &self.outcomes {
            *law.entry(histogram_key(w)).or_default() += p;
        }
        law
    }

    /// `E N_k` at the end of the run.
    pub fn expected_count(&self, k: u32) -> f64 {
        self.outcomes
            .iter()
            .map(|(w, p)| p * w.iter().filter(|&&x| x == k).count() as f64)
            .sum()
    }

    /// `E N_k` for `k = 1..=k_max`, as `out[k - 1]`.
    pub fn expected_counts(&self, k_max: usize) -> Vec<f64> {
        (1..=k_max as u32).map(|k| self.expected_count(k)).collect()
    }

    /// Law of the weight of vertex `v` (0-based).
    pub fn vertex_marginal(&self, v: usize) -> BTreeMap<u32, f64> {
        let mut law = BTreeMap::new();
        for (w, p) in &self.outcomes {
            if let Some(&x) = w.get(v) {
                *law.entry(x).or_default() += p;
            }
        }
        law
    }

    /// Probability of an event on the final weight vector.
    pub fn probability(&self, event: impl Fn(&[u32]) -> bool) -> f64 {
        self.outcomes
            .iter()
            .filter(|(w, _)| event(w))
            .map(|(_, p)| p)
            .sum()
    }
}

fn check_branches(step: u64, total: f64) -> Result<()> {
    if (total - 1.0).abs() > BRANCH_TOLERANCE {
        return Err(Error::ProbabilityMass { step, sum: total });
    }
    Ok(())
}

/// Expands `layer` one step. `branch` lists the successors of a state with
/// their conditional probabilities.
fn advance(
    layer: Layer,
    step: u64,
    branch: impl Fn(&[u32]) -> Vec<(Weights, f64)>,
) -> Result<Layer> {
    let mut out = Layer::new();
    for (w, p) in layer {
        let succ = branch(&w);
        check_branches(step, succ.iter().map(|(_, q)| q).sum())?;
        for (next, q) in succ {
            if q > 0.0 {
                *out.entry(next).or_default() += p * q;
            }
        }
    }
    Ok(out)
}

fn bumped(w: &[u32], j: usize, by: u32) -> Weights {
    let mut next = w.to_vec();
    next[j] += by;
    next
}

/// Preferential edge on in-degrees over every vertex present.
fn in_degree_edge(w: &[u32]) -> Vec<(Weights, f64)> {
    let total: u32 = w.iter().sum();
    (0..w.len())
        .map(|j| (bumped(w, j, 1), f64::from(w[j]) / f64::from(total)))
        .collect()
}

/// Edge from the newest vertex on degrees, the newest counting one extra.
fn degree_edge_with_self(w: &[u32]) -> Vec<(Weights, f64)> {
    let newest = w.len() - 1;
    let denom = f64::from(w.iter().sum::<u32>() + 1);
    let mut out: Vec<(Weights, f64)> = (0..newest)
        .map(|j| {
            let mut next = bumped(w, j, 1);
            next[newest] += 1;
            (next, f64::from(w[j]) / denom)
        })
        .collect();
    out.push((bumped(w, newest, 2), f64::from(w[newest] + 1) / denom));
    out
}

/// Ordered draws of `m` distinct indices, each proportional to the weights
/// not yet drawn. Returns every resulting subset with its probability.
fn distinct_subsets(w: &[u32], m: usize) -> Vec<(Vec<bool>, f64)> {
    fn go(w: &[u32], m: usize, taken: &mut Vec<bool>, p: f64, out: &mut Vec<(Vec<bool>, f64)>) {
        if m == 0 {
            out.push((taken.clone(), p));
            return;
        }
        let rest: u32 = w
            .iter()
            .zip(taken.iter())
            .filter(|(_, &t)| !t)
            .map(|(x, _)| x)
            .sum();
        for j in 0..w.len() {
            if !taken[j] && w[j] > 0 {
                taken[j] = true;
                go(w, m - 1, taken, p * f64::from(w[j]) / f64::from(rest), out);
                taken[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(w, m, &mut vec![false; w.len()], 1.0, &mut out);
    // merge orderings of the same subset
    let mut merged: BTreeMap<Vec<bool>, f64> = BTreeMap::new();
    for (s, p) in out {
        *merged.entry(s).or_default() += p;
    }
    merged.into_iter().collect()
}

fn enumerate_ba_single(t: u64) -> Result<Layer> {
    let mut layer = Layer::from([(vec![2], 1.0)]);
    for step in 2..=t {
        layer = advance(layer, step, |w| {
            let mut with_new = w.to_vec();
            with_new.push(0);
            degree_edge_with_self(&with_new)
        })?;
    }
    Ok(layer)
}

/// Exact law of the final weight vector of a tiny run.
pub fn enumerate_exact(spec: &EnumSpec) -> Result<ExactLaw> {
    spec.validate()?;
    let layer = match *spec {
        EnumSpec::Simon { alpha, t } => {
            let mut layer = Layer::from([(vec![1], 1.0)]);
            for step in 2..=t {
                layer = advance(layer, step, |w| {
                    let mut out = vec![(
                        {
                            let mut next = w.to_vec();
                            next.push(1);
                            next
                        },
                        alpha,
                    )];
                    out.extend(
                        in_degree_edge(w)
                            .into_iter()
                            .map(|(n, q)| (n, q * (1.0 - alpha))),
                    );
                    out
                })?;
            }
            layer
        }
        EnumSpec::Iipa { m, n } => {
            let block = u64::from(m) + 1;
            let mut layer = Layer::from([(Vec::new(), 1.0)]);
            for step in 1..=n * block {
                layer = if (step - 1) % block == 0 {
                    advance(layer, step, |w| {
                        let mut next = w.to_vec();
                        next.push(1);
                        vec![(next, 1.0)]
                    })?
                } else {
                    advance(layer, step, in_degree_edge)?
                };
            }
            layer
        }
        EnumSpec::PriceConst { k0, m, n } => {
            let mut layer = Layer::from([(vec![m + k0], 1.0)]);
            for step in 2..=n {
                layer = advance(layer, step, |w| {
                    let take = (m as usize).min(w.len());
                    distinct_subsets(w, take)
                        .into_iter()
                        .map(|(chosen, p)| {
                            let mut next: Weights = w
                                .iter()
                                .zip(&chosen)
                                .map(|(&x, &c)| x + u32::from(c))
                                .collect();
                            next.push(k0);
                            (next, p)
                        })
                        .collect()
                })?;
            }
            layer
        }
        EnumSpec::BaSingle { t } => enumerate_ba_single(t)?,
        EnumSpec::BaRescaled { m, n } => {
            let block = u64::from(m) + 1;
            let mut layer = Layer::from([(Vec::new(), 1.0)]);
            for step in 1..=n * block {
                layer = if (step - 1) % block == 0 {
                    advance(layer, step, |w| {
                        let mut next = w.to_vec();
                        next.push(0);
                        vec![(next, 1.0)]
                    })?
                } else {
                    advance(layer, step, degree_edge_with_self)?
                };
            }
            layer
        }
        EnumSpec::BaIdentified { m, n } => {
            let single = enumerate_ba_single(u64::from(m) * n)?;
            let mut merged = Layer::new();
            for (w, p) in single {
                let collapsed: Weights = w.chunks(m as usize).map(|c| c.iter().sum()).collect();
                *merged.entry(collapsed).or_default() += p;
            }
            merged
        }
    };
    let law = ExactLaw {
        kind: spec.kind(),
        outcomes: layer.into_iter().collect(),
    };
    check_branches(spec.steps(), law.total_probability())?;
    Ok(law)
}
