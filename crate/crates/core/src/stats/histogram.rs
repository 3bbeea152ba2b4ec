use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EventKind, EventRecord, GraphState, WeightKind};

/// What a histogram counts. In-degree and degree laws are different random
/// variables and are never compared without an explicit override.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeKind {
    InDegree,
    Degree,
    GenusSize,
}

impl fmt::Display for DegreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeKind::InDegree => "in-degree",
            DegreeKind::Degree => "degree",
            DegreeKind::GenusSize => "genus-size",
        })
    }
}

impl std::str::FromStr for DegreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in-degree" => Ok(DegreeKind::InDegree),
            "degree" => Ok(DegreeKind::Degree),
            "genus-size" => Ok(DegreeKind::GenusSize),
            other => Err(Error::invalid(format!("unknown histogram kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bin {
    pub k: u64,
    pub count: u64,
}

#[derive(Serialize, Deserialize)]
struct HistogramRepr {
    kind: DegreeKind,
    t: u64,
    total: u64,
    bins: Vec<Bin>,
}

/// Sparse counts `k -> N_k` with the number of counted units and the step count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "HistogramRepr", try_from = "HistogramRepr")]
pub struct DegreeHistogram {
    kind: DegreeKind,
    t: u64,
    total: u64,
    counts: BTreeMap<u64, u64>,
}

impl From<DegreeHistogram> for HistogramRepr {
    fn from(h: DegreeHistogram) -> Self {
        HistogramRepr {
            kind: h.kind,
            t: h.t,
            total: h.total,
            bins: h
                .counts
                .into_iter()
                .map(|(k, count)| Bin { k, count })
                .collect(),
        }
    }
}

impl TryFrom<HistogramRepr> for DegreeHistogram {
    type Error = Error;

    fn try_from(r: HistogramRepr) -> Result<Self> {
        let mut h = DegreeHistogram::empty(r.kind, r.t);
        for b in r.bins {
            h.add(b.k, b.count);
        }
        if h.total != r.total {
            return Err(Error::invalid(format!(
                "histogram total {} does not match its bins ({})",
                r.total, h.total
            )));
        }
        Ok(h)
    }
}

impl DegreeHistogram {
    pub fn empty(kind: DegreeKind, t: u64) -> Self {
        DegreeHistogram {
            kind,
            t,
            total: 0,
            counts: BTreeMap::new(),
        }
    }

    /// Counts the attachment weights of a finished run.
    pub fn from_state(state: &GraphState) -> Self {
        let kind = match state.weight_kind() {
            WeightKind::InDegree => DegreeKind::InDegree,
            WeightKind::Degree => DegreeKind::Degree,
        };
        Self::from_values(
            kind,
            state.t(),
            state.weights().iter().map(|&w| u64::from(w)),
        )
    }

    pub fn from_values(kind: DegreeKind, t: u64, values: impl IntoIterator<Item = u64>) -> Self {
        let mut h = Self::empty(kind, t);
        for v in values {
            h.add(v, 1);
        }
        h
    }

    /// Replays an event log; see [`HistogramCounter`].
    pub fn from_events<'a>(
        kind: DegreeKind,
        events: impl IntoIterator<Item = &'a EventRecord>,
    ) -> Result<Self> {
        let mut c = HistogramCounter::new(kind)?;
        for e in events {
            c.record(e);
        }
        Ok(c.histogram())
    }

    pub fn add(&mut self, k: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(k).or_default() += count;
            self.total += count;
        }
    }

    /// Adds the counts of `other`, which must be of the same kind.
    pub fn merge(&mut self, other: &DegreeHistogram) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                run: other.kind.to_string(),
                theory: self.kind.to_string(),
            });
        }
        for (&k, &c) in &other.counts {
            self.add(k, c);
        }
        self.t = self.t.max(other.t);
        Ok(())
    }

    pub fn kind(&self) -> DegreeKind {
        self.kind
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Number of counted vertices (or genera).
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn fraction(&self, k: u64) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(k) as f64 / self.total as f64
        }
    }

    /// Occupied bins in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    pub fn max_k(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// `sum_k k N_k`.
    pub fn weight_sum(&self) -> u64 {
        self.iter().map(|(k, c)| k * c).sum()
    }
}

/// Streaming weight counter over an event feed.
///
/// For [`DegreeKind::InDegree`], a vertex arrival counts one unit (its
/// directed loop) and every edge or loop adds one unit to its target; this is
/// the Simon and II-PA convention. For [`DegreeKind::Degree`], an arrival
/// counts nothing, an edge adds one to each end and a loop adds two. Vertices
/// first seen as an edge end are created on the fly, so a single-edge BA
/// feed replays correctly once its initial loop `(t=1, Loop, 0, 0)` is fed.
#[derive(Debug, Clone)]
pub struct HistogramCounter {
    kind: DegreeKind,
    t: u64,
    weights: Vec<u64>,
}

impl HistogramCounter {
    pub fn new(kind: DegreeKind) -> Result<Self> {
        if kind == DegreeKind::GenusSize {
            return Err(Error::Unsupported(
                "genus sizes do not come from an event feed".into(),
            ));
        }
        Ok(HistogramCounter {
            kind,
            t: 0,
            weights: Vec::new(),
        })
    }

    fn bump(&mut self, v: u32, by: u64) {
        let v = v as usize;
        if v >= self.weights.len() {
            self.weights.resize(v + 1, 0);
        }
        self.weights[v] += by;
    }

    pub fn record(&mut self, e: &EventRecord) {
        self.t = self.t.max(e.t);
        match (self.kind, e.kind) {
            (DegreeKind::InDegree, _) => self.bump(e.target, 1),
            (_, EventKind::NewVertex) => self.bump(e.target, 0),
            (_, EventKind::Loop) => self.bump(e.target, 2),
            (_, EventKind::Edge) => {
                self.bump(e.source, 1);
                self.bump(e.target, 1);
            }
        }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn histogram(&self) -> DegreeHistogram {
        DegreeHistogram::from_values(self.kind, self.t, self.weights.iter().copied())
    }
}
