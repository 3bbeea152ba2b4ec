//! The Barabási–Albert model, in both constructions.
//!
//! Single-edge process: `t = 1` holds `v_1` with one loop (degree 2). Step
//! `t -> t+1` adds `v_{t+1}` and one edge from it to `v_j` with probability
//! `d(v_j, t) / (2t + 1)` for `j <= t` and `1 / (2t + 1)` for a loop on the
//! newcomer. For `m > 1`, run it on `m * n` imaginary vertices and merge
//! consecutive blocks of `m`.
//!
//! Rescaled process: `v_{n+1}` arrives at `t = n(m+1) + 1` with no loop and
//! then draws `m` edges; at sub-step `i` the target `v` has probability
//! `d(v, t-1) / (2(mn + i - 1) - 1)`, with numerator `d + 1` for the newcomer.
//!
//! Both sample from a pool of degree units plus one virtual slot for the
//! newcomer. The pool receives `(source, target)` per edge, which keeps its
//! layout identical to an II-PA pool when `m = 1`.

use rand::Rng;

use super::{check_m, EventRecord, GraphState, GrowthProcess, WeightKind};
use crate::error::{Error, Result};

pub fn ba_init() -> GraphState {
    let mut state = GraphState::empty(WeightKind::Degree);
    let v = state.add_vertex(1);
    state.degree[v as usize] = 2;
    state.in_degree[v as usize] = 1;
    state.pool.extend([v, v]);
    state.t = 1;
    state
}

/// Adds one edge from `source` (the newest vertex) using the pool plus a
/// virtual slot for `source`.
#[inline]
fn attach_with_self_slot<R: Rng + ?Sized>(
    state: &mut GraphState,
    t: u64,
    rng: &mut R,
) -> EventRecord {
    let source = state.last_vertex;
    let idx = rng.random_range(0..state.pool.len() + 1);
    let target = if idx == state.pool.len() {
        source
    } else {
        state.pool[idx]
    };
    state.degree[source as usize] += 1;
    state.degree[target as usize] += 1;
    state.in_degree[target as usize] += 1;
    state.pool.push(source);
    state.pool.push(target);
    EventRecord::edge(t, source, target)
}

/// One step of the single-edge process.
#[inline]
pub fn ba_step_single<R: Rng + ?Sized>(state: &mut GraphState, rng: &mut R) -> EventRecord {
    let t = state.t + 1;
    state.add_vertex(t);
    let record = attach_with_self_slot(state, t, rng);
    state.t = t;
    debug_assert_eq!(
        state.pool.len() as u64,
        2 * state.t,
        "degree sum must equal 2t"
    );
    state.debug_check_pool();
    record
}

/// Single-edge process up to `t_target` vertices.
pub fn ba_run_single<R: Rng + ?Sized>(t_target: u64, rng: &mut R) -> GraphState {
    let mut state = ba_init();
    state.pool.reserve(2 * t_target as usize);
    while state.t < t_target {
        ba_step_single(&mut state, rng);
    }
    state
}

/// Merges consecutive blocks of `m` vertices. The result has `t` equal to the
/// number of merged vertices.
pub fn identify_blocks(single: &GraphState, m: u32) -> Result<GraphState> {
    check_m(m)?;
    let m = m as usize;
    if !single.n_vertices().is_multiple_of(m) {
        return Err(Error::invalid(format!(
            "{} vertices do not split into blocks of {m}",
            single.n_vertices()
        )));
    }
    let n = single.n_vertices() / m;
    let mut out = GraphState::empty(WeightKind::Degree);
    for block in 0..n {
        out.add_vertex(single.birth_time[block * m]);
        out.degree[block] = single.degree[block * m..(block + 1) * m].iter().sum();
        out.in_degree[block] = single.in_degree[block * m..(block + 1) * m].iter().sum();
    }
    out.pool = single.pool.iter().map(|&v| v / m as u32).collect();
    out.t = n as u64;
    Ok(out)
}

/// `G_m^n` from `G_1^{mn}`.
pub fn ba_run_identified<R: Rng + ?Sized>(
    n_target: u64,
    m: u32,
    rng: &mut R,
) -> Result<GraphState> {
    check_m(m)?;
    if n_target == 0 {
        return Err(Error::invalid("n_target must be >= 1"));
    }
    let single = ba_run_single(n_target * u64::from(m), rng);
    if m == 1 {
        return Ok(single);
    }
    identify_blocks(&single, m)
}

/// One elementary step of the rescaled process: a vertex arrival (no loop) or
/// one of its `m` edges.
#[inline]
pub fn ba_rescaled_step<R: Rng + ?Sized>(
    state: &mut GraphState,
    m: u32,
    rng: &mut R,
) -> Result<EventRecord> {
    let t = state.t + 1;
    let block = u64::from(m) + 1;
    let phase = (t - 1) % block;
    let record = if phase == 0 {
        let v = state.add_vertex(t);
        EventRecord::new_vertex(t, v)
    } else {
        let n = (t - 1) / block;
        let i = phase + 1;
        let denom = 2 * (u64::from(m) * n + i - 1) - 1;
        if denom != state.pool.len() as u64 + 1 {
            // the literal formula and the degree mass disagree
            return Err(Error::ProbabilityMass {
                step: t,
                sum: (state.pool.len() as f64 + 1.0) / denom as f64,
            });
        }
        attach_with_self_slot(state, t, rng)
    };
    state.t = t;
    state.debug_check_pool();
    Ok(record)
}

/// Runs until `n_target` vertices are complete: `t = n_target * (m + 1)`.
pub fn ba_run_rescaled<R: Rng + ?Sized>(n_target: u64, m: u32, rng: &mut R) -> Result<GraphState> {
    check_m(m)?;
    let mut state = GraphState::empty(WeightKind::Degree);
    let t_end = n_target * (u64::from(m) + 1);
    state.pool.reserve(2 * (n_target * u64::from(m)) as usize);
    while state.t < t_end {
        ba_rescaled_step(&mut state, m, rng)?;
    }
    Ok(state)
}

pub struct BaSingleProcess<R> {
    state: GraphState,
    rng: R,
}

impl<R: Rng> BaSingleProcess<R> {
    pub fn new(rng: R) -> Self {
        BaSingleProcess {
            state: ba_init(),
            rng,
        }
    }
}

impl<R: Rng> Iterator for BaSingleProcess<R> {
    type Item = EventRecord;

    fn next(&mut self) -> Option<EventRecord> {
        Some(ba_step_single(&mut self.state, &mut self.rng))
    }
}

impl<R: Rng> GrowthProcess for BaSingleProcess<R> {
    fn step_into(&mut self, sink: &mut dyn FnMut(EventRecord)) {
        sink(ba_step_single(&mut self.state, &mut self.rng));
    }

    fn state(&self) -> &GraphState {
        &self.state
    }
}

pub struct BaRescaledProcess<R> {
    m: u32,
    state: GraphState,
    rng: R,
}

impl<R: Rng> BaRescaledProcess<R> {
    pub fn new(m: u32, rng: R) -> Result<Self> {
        check_m(m)?;
        Ok(BaRescaledProcess {
            m,
            state: GraphState::empty(WeightKind::Degree),
            rng,
        })
    }

    pub fn state(&self) -> &GraphState {
        &self.state
    }

    pub fn run_until_complete(&mut self, n: u64) -> Result<()> {
        let t_end = n * (u64::from(self.m) + 1);
        while self.state.t < t_end {
            ba_rescaled_step(&mut self.state, self.m, &mut self.rng)?;
        }
        Ok(())
    }
}

impl<R: Rng> GrowthProcess for BaRescaledProcess<R> {
    fn step_into(&mut self, sink: &mut dyn FnMut(EventRecord)) {
        // The mass check cannot fail for states built by this process.
        let e = ba_rescaled_step(&mut self.state, self.m, &mut self.rng)
            .expect("probability mass is consistent");
        sink(e);
    }

    fn state(&self) -> &GraphState {
        &self.state
    }

    fn complete_vertices(&self) -> usize {
        (self.state.t / (u64::from(self.m) + 1)) as usize
    }
}
