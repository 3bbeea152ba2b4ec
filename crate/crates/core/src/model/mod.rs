//! Growth processes.
//!
//! Each discrete model is a set of step functions over a shared
//! [`GraphState`], plus a process type implementing [`GrowthProcess`] (and
//! [`Iterator`] over [`EventRecord`]s) for callers who want the event feed.

pub mod ba;
pub mod iipa;
pub mod price;
pub mod simon;
pub mod yule;

use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Out-degree law `M_i` of the Price model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum OutDegreeLaw {
    /// `M_i = m` almost surely.
    Constant { m: u32 },
    /// Geometric on `{0, 1, 2, ...}` with `P(M = j) = (1 - q) q^j`, `q = mean / (1 + mean)`.
    Geometric { mean: f64 },
}

impl OutDegreeLaw {
    pub fn mean(&self) -> f64 {
        match *self {
            OutDegreeLaw::Constant { m } => f64::from(m),
            OutDegreeLaw::Geometric { mean } => mean,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            OutDegreeLaw::Constant { .. } => 0.0,
            OutDegreeLaw::Geometric { mean } => mean * (1.0 + mean),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            OutDegreeLaw::Constant { m } if m >= 1 => Ok(()),
            OutDegreeLaw::Constant { m } => Err(Error::invalid(format!(
                "constant out-degree must be >= 1, got {m}"
            ))),
            OutDegreeLaw::Geometric { mean } if mean.is_finite() && mean > 0.0 => Ok(()),
            OutDegreeLaw::Geometric { mean } => Err(Error::invalid(format!(
                "geometric mean must be > 0, got {mean}"
            ))),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match *self {
            OutDegreeLaw::Constant { m } => m,
            OutDegreeLaw::Geometric { mean } => {
                let geo = Geometric::new(1.0 / (1.0 + mean)).expect("validated mean");
                u32::try_from(geo.sample(rng)).unwrap_or(u32::MAX)
            }
        }
    }
}

/// Parameters of one of the growth models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ModelSpec {
    Simon {
        alpha: f64,
    },
    Iipa {
        m: u32,
    },
    Price {
        k0: u32,
        out_degree: OutDegreeLaw,
    },
    /// Single-edge process on `m * n` imaginary vertices, identified in blocks of `m`.
    BaIdentified {
        m: u32,
    },
    /// Rescaled-time process adding `m` edges one at a time.
    BaRescaled {
        m: u32,
    },
    Yule {
        beta: f64,
        lambda: f64,
    },
}

impl ModelSpec {
    pub fn simon(alpha: f64) -> Result<Self> {
        let spec = ModelSpec::Simon { alpha };
        spec.validate()?;
        Ok(spec)
    }

    pub fn iipa(m: u32) -> Result<Self> {
        let spec = ModelSpec::Iipa { m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn price(k0: u32, out_degree: OutDegreeLaw) -> Result<Self> {
        let spec = ModelSpec::Price { k0, out_degree };
        spec.validate()?;
        Ok(spec)
    }

    pub fn ba_identified(m: u32) -> Result<Self> {
        let spec = ModelSpec::BaIdentified { m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn ba_rescaled(m: u32) -> Result<Self> {
        let spec = ModelSpec::BaRescaled { m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn yule(beta: f64, lambda: f64) -> Result<Self> {
        let spec = ModelSpec::Yule { beta, lambda };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelSpec::Simon { alpha } => check_alpha(alpha),
            ModelSpec::Iipa { m } | ModelSpec::BaIdentified { m } | ModelSpec::BaRescaled { m } => {
                check_m(m)
            }
            ModelSpec::Price { k0, out_degree } => {
                if k0 < 1 {
                    return Err(Error::invalid("k0 must be >= 1"));
                }
                out_degree.validate()
            }
            ModelSpec::Yule { beta, lambda } => {
                check_rate("beta", beta)?;
                check_rate("lambda", lambda)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Simon { .. } => "simon",
            ModelSpec::Iipa { .. } => "iipa",
            ModelSpec::Price { .. } => "price",
            ModelSpec::BaIdentified { .. } => "ba-identified",
            ModelSpec::BaRescaled { .. } => "ba-rescaled",
            ModelSpec::Yule { .. } => "yule",
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )))
    }
}

pub(crate) fn check_m(m: u32) -> Result<()> {
    if m >= 1 {
        Ok(())
    } else {
        Err(Error::invalid("m must be >= 1"))
    }
}

pub(crate) fn check_rate(name: &str, rate: f64) -> Result<()> {
    if rate.is_finite() && rate > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{name} must be a positive finite rate, got {rate}"
        )))
    }
}

/// Which vertex count drives preferential attachment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    InDegree,
    Degree,
}

/// Mutable state of a discrete growth process.
///
/// `pool` holds one entry per unit of attachment weight, so a uniform index
/// into it is an exactly proportional draw. Weights only grow, so the pool is
/// append-only.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphState {
    pub(crate) t: u64,
    pub(crate) in_degree: Vec<u32>,
    pub(crate) degree: Vec<u32>,
    pub(crate) pool: Vec<u32>,
    pub(crate) last_vertex: u32,
    pub(crate) birth_time: Vec<u64>,
    pub(crate) weight: WeightKind,
}

impl GraphState {
    pub(crate) fn empty(weight: WeightKind) -> Self {
        GraphState {
            t: 0,
            in_degree: Vec::new(),
            degree: Vec::new(),
            pool: Vec::new(),
            last_vertex: 0,
            birth_time: Vec::new(),
            weight,
        }
    }

    /// Elementary steps taken so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn n_vertices(&self) -> usize {
        self.birth_time.len()
    }

    pub fn in_degree(&self) -> &[u32] {
        &self.in_degree
    }

    /// Total degree; empty unless the run is a Barabási–Albert run.
    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn endpoint_pool(&self) -> &[u32] {
        &self.pool
    }

    pub fn last_vertex(&self) -> u32 {
        self.last_vertex
    }

    pub fn birth_time(&self) -> &[u64] {
        &self.birth_time
    }

    pub fn weight_kind(&self) -> WeightKind {
        self.weight
    }

    /// The array the pool mirrors.
    pub fn weights(&self) -> &[u32] {
        match self.weight {
            WeightKind::InDegree => &self.in_degree,
            WeightKind::Degree => &self.degree,
        }
    }

    pub(crate) fn add_vertex(&mut self, birth: u64) -> u32 {
        let v = u32::try_from(self.birth_time.len()).expect("vertex ids fit in u32");
        self.birth_time.push(birth);
        self.in_degree.push(0);
        if self.weight == WeightKind::Degree {
            self.degree.push(0);
        }
        self.last_vertex = v;
        v
    }

    /// Full recount: every vertex appears in the pool exactly `weight` times.
    pub fn pool_consistent(&self) -> bool {
        let mut counts = vec![0u32; self.n_vertices()];
        for &v in &self.pool {
            match counts.get_mut(v as usize) {
                Some(c) => *c += 1,
                None => return false,
            }
        }
        counts == self.weights()
    }

    /// Debug-build recount on a geometric schedule (every power of two).
    #[inline]
    pub(crate) fn debug_check_pool(&self) {
        if cfg!(debug_assertions) && self.t.is_power_of_two() {
            debug_assert!(
                self.pool_consistent(),
                "endpoint pool out of sync at t={}",
                self.t
            );
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    /// A vertex was created. Its directed loop, if the model has one, is part of this event.
    NewVertex,
    Edge,
    Loop,
}

/// One elementary event. Vertex ids are 0-based creation indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventRecord {
    pub t: u64,
    pub kind: EventKind,
    pub source: u32,
    pub target: u32,
}

impl EventRecord {
    pub(crate) fn edge(t: u64, source: u32, target: u32) -> Self {
        let kind = if source == target {
            EventKind::Loop
        } else {
            EventKind::Edge
        };
        EventRecord {
            t,
            kind,
            source,
            target,
        }
    }

    pub(crate) fn new_vertex(t: u64, v: u32) -> Self {
        EventRecord {
            t,
            kind: EventKind::NewVertex,
            source: v,
            target: v,
        }
    }
}

/// A discrete growth process that can be driven one elementary step at a time.
pub trait GrowthProcess {
    /// Advance by one elementary step. Some models emit several records per
    /// step (a Price vertex and its batch of edges); the last one is returned
    /// and all of them are passed to `sink`.
    fn step_into(&mut self, sink: &mut dyn FnMut(EventRecord));

    fn state(&self) -> &GraphState;

    /// Number of vertices that are complete, i.e. arrived with all their out-edges.
    fn complete_vertices(&self) -> usize {
        self.state().n_vertices()
    }

    fn step(&mut self) -> Vec<EventRecord> {
        let mut out = Vec::with_capacity(1);
        self.step_into(&mut |e| out.push(e));
        out
    }
}

/// Builds the discrete process described by `spec`. Yule is continuous-time and
/// is rejected here; see [`yule`].
pub fn build_process<R: Rng + 'static>(spec: &ModelSpec, rng: R) -> Result<Box<dyn GrowthProcess>> {
    spec.validate()?;
    Ok(match *spec {
        ModelSpec::Simon { alpha } => Box::new(simon::SimonProcess::new(alpha, rng)?),
        ModelSpec::Iipa { m } => Box::new(iipa::IipaProcess::new(m, rng)?),
        ModelSpec::Price { k0, out_degree } => Box::new(price::PriceProcess::new(k0, out_degree, rng)?),
        ModelSpec::BaIdentified { m: 1 } => Box::new(ba::BaSingleProcess::new(rng)),
        ModelSpec::BaIdentified { .. } => {
            return Err(Error::Unsupported(
                "ba-identified with m > 1 is a post-processing of a single-edge run; use ba::ba_run_identified".into(),
            ))
        }
        ModelSpec::BaRescaled { m } => Box::new(ba::BaRescaledProcess::new(m, rng)?),
        ModelSpec::Yule { .. } => return Err(Error::Unsupported("yule is a continuous-time model".into())),
    })
}
