//! The Price model.
//!
//! `v_1` starts with `M_1 + k0` directed loops. Each step adds `v_{n+1}` with
//! `k0` directed loops and `M_{n+1}` edges to distinct old vertices, drawn
//! proportionally to in-degrees frozen at the start of the batch. Distinctness
//! is enforced by rejecting repeats, so each accepted draw is proportional to
//! the frozen weights of the vertices not yet chosen.
//!
//! When `M_{n+1}` exceeds the number of old vertices the batch is truncated to
//! all of them and the truncation counter is bumped.

use rand::Rng;

use super::{EventRecord, GraphState, GrowthProcess, OutDegreeLaw, WeightKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct PriceState {
    pub graph: GraphState,
    pub k0: u32,
    pub law: OutDegreeLaw,
    /// `n * k0 + sum of M_i`, the normalising constant with untruncated batches.
    pub nominal_mass: u64,
    /// Number of batches that were cut short.
    pub truncations: u64,
}

impl PriceState {
    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices()
    }
}

pub fn price_init<R: Rng + ?Sized>(k0: u32, law: OutDegreeLaw, rng: &mut R) -> Result<PriceState> {
    if k0 < 1 {
        return Err(Error::invalid("k0 must be >= 1"));
    }
    law.validate()?;
    let m1 = law.sample(rng);
    let mut graph = GraphState::empty(WeightKind::InDegree);
    let v = graph.add_vertex(1);
    let loops = m1 + k0;
    graph.in_degree[v as usize] = loops;
    graph.pool.extend(std::iter::repeat_n(v, loops as usize));
    graph.t = 1;
    Ok(PriceState {
        graph,
        k0,
        law,
        nominal_mass: u64::from(loops),
        truncations: 0,
    })
}

/// Adds one vertex and its batch. Records go to `sink`: the new vertex first,
/// then one edge per target.
pub fn price_step<R: Rng + ?Sized>(
    state: &mut PriceState,
    rng: &mut R,
    sink: &mut dyn FnMut(EventRecord),
) {
    let m_next = state.law.sample(rng);
    let old = state.graph.n_vertices();
    let frozen = state.graph.pool.len();
    let t = state.graph.t + 1;

    let mut targets: Vec<u32> = Vec::with_capacity(m_next as usize);
    if m_next as usize >= old {
        if m_next as usize > old {
            state.truncations += 1;
        }
        targets.extend(0..old as u32);
    } else {
        while targets.len() < m_next as usize {
            let v = state.graph.pool[rng.random_range(0..frozen)];
            if !targets.contains(&v) {
                targets.push(v);
            }
        }
    }

    let v = state.graph.add_vertex(t);
    state.graph.in_degree[v as usize] = state.k0;
    state
        .graph
        .pool
        .extend(std::iter::repeat_n(v, state.k0 as usize));
    sink(EventRecord::new_vertex(t, v));
    for &target in &targets {
        state.graph.in_degree[target as usize] += 1;
        state.graph.pool.push(target);
        sink(EventRecord::edge(t, v, target));
    }
    state.nominal_mass += u64::from(state.k0) + u64::from(m_next);
    state.graph.t = t;
    state.graph.debug_check_pool();
}

/// Runs until `n_target` vertices exist.
pub fn price_run<R: Rng + ?Sized>(
    n_target: u64,
    k0: u32,
    law: OutDegreeLaw,
    rng: &mut R,
) -> Result<PriceState> {
    let mut state = price_init(k0, law, rng)?;
    while (state.n_vertices() as u64) < n_target {
        price_step(&mut state, rng, &mut |_| {});
    }
    Ok(state)
}

pub struct PriceProcess<R> {
    state: PriceState,
    rng: R,
}

impl<R: Rng> PriceProcess<R> {
    pub fn new(k0: u32, law: OutDegreeLaw, mut rng: R) -> Result<Self> {
        let state = price_init(k0, law, &mut rng)?;
        Ok(PriceProcess { state, rng })
    }

    pub fn price_state(&self) -> &PriceState {
        &self.state
    }
}

impl<R: Rng> GrowthProcess for PriceProcess<R> {
    fn step_into(&mut self, sink: &mut dyn FnMut(EventRecord)) {
        price_step(&mut self.state, &mut self.rng, sink);
    }

    fn state(&self) -> &GraphState {
        &self.state.graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Purpose, StreamRng};

    #[test]
    fn one_old_vertex_is_the_only_target() {
        let mut rng = StreamRng::seeded(1, Purpose::Price);
        for _ in 0..100 {
            let s = price_run(2, 1, OutDegreeLaw::Constant { m: 1 }, &mut rng).unwrap();
            // v1: 1 + 1 loops, then one edge from v2
            assert_eq!(s.graph.in_degree(), &[3, 1]);
        }
    }

    #[test]
    fn batches_hit_distinct_targets() {
        let mut rng = StreamRng::seeded(2, Purpose::Price);
        let mut state = price_init(1, OutDegreeLaw::Constant { m: 3 }, &mut rng).unwrap();
        for _ in 0..500 {
            let mut targets = Vec::new();
            price_step(&mut state, &mut rng, &mut |e| {
                if e.kind != super::super::EventKind::NewVertex {
                    targets.push(e.target)
                }
            });
            let mut dedup = targets.clone();
            dedup.sort_unstable();
            dedup.dedup();
            assert_eq!(dedup.len(), targets.len());
        }
        assert!(state.graph.pool_consistent());
    }

    #[test]
    fn truncation_is_counted() {
        let mut rng = StreamRng::seeded(3, Purpose::Price);
        let s = price_run(3, 1, OutDegreeLaw::Constant { m: 2 }, &mut rng).unwrap();
        // n=1 -> 2 needs 2 targets but only one old vertex exists
        assert_eq!(s.truncations, 1);
        // v1 has 3 loops + 2 edges, v2 has its loop + the edge from v3
        assert_eq!(s.graph.in_degree(), &[5, 2, 1]);
    }

    #[test]
    fn nominal_mass_matches_in_degree_sum_without_truncation() {
        let mut rng = StreamRng::seeded(4, Purpose::Price);
        let s = price_run(2000, 1, OutDegreeLaw::Geometric { mean: 2.0 }, &mut rng).unwrap();
        let sum: u64 = s.graph.in_degree().iter().map(|&d| u64::from(d)).sum();
        if s.truncations == 0 {
            assert_eq!(sum, s.nominal_mass);
        } else {
            assert!(sum < s.nominal_mass);
        }
    }
}
