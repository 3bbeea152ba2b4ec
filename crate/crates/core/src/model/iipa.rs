//! The II-PA model.
//!
//! Vertex `v_{n+1}` arrives at `t = n(m+1) + 1` with a directed loop and then
//! emits `m` directed edges at `t = n(m+1) + i`, `i = 2..=m+1`. Each target is
//! drawn with probability `in_degree(v_j, t-1) / (t-1)` over all vertices,
//! the newcomer included.

use rand::Rng;

use super::{check_m, EventRecord, GraphState, GrowthProcess, WeightKind};
use crate::error::Result;

/// One elementary II-PA step: a vertex arrival or one of its edges.
#[inline]
pub fn iipa_step<R: Rng + ?Sized>(state: &mut GraphState, m: u32, rng: &mut R) -> EventRecord {
    let t = state.t + 1;
    let phase = (t - 1) % (u64::from(m) + 1);
    let record = if phase == 0 {
        let v = state.add_vertex(t);
        state.in_degree[v as usize] = 1;
        state.pool.push(v);
        EventRecord::new_vertex(t, v)
    } else {
        // pool length is t - 1 here
        let target = state.pool[rng.random_range(0..state.pool.len())];
        state.in_degree[target as usize] += 1;
        state.pool.push(target);
        EventRecord::edge(t, state.last_vertex, target)
    };
    state.t = t;
    debug_assert_eq!(state.pool.len() as u64, state.t);
    state.debug_check_pool();
    record
}

/// Runs until `n_target` vertices are complete, i.e. `t = n_target * (m + 1)`.
pub fn iipa_run<R: Rng + ?Sized>(n_target: u64, m: u32, rng: &mut R) -> Result<GraphState> {
    check_m(m)?;
    let mut state = GraphState::empty(WeightKind::InDegree);
    let t_end = n_target * (u64::from(m) + 1);
    state.pool.reserve(t_end as usize);
    while state.t < t_end {
        iipa_step(&mut state, m, rng);
    }
    Ok(state)
}

pub struct IipaProcess<R> {
    m: u32,
    state: GraphState,
    rng: R,
}

impl<R: Rng> IipaProcess<R> {
    /// A fresh process; the first call to `step` creates `v_1`.
    pub fn new(m: u32, rng: R) -> Result<Self> {
        check_m(m)?;
        Ok(IipaProcess {
            m,
            state: GraphState::empty(WeightKind::InDegree),
            rng,
        })
    }

    pub fn state(&self) -> &GraphState {
        &self.state
    }

    pub fn run_until_complete(&mut self, n: u64) {
        let t_end = n * (u64::from(self.m) + 1);
        while self.state.t < t_end {
            iipa_step(&mut self.state, self.m, &mut self.rng);
        }
    }
}

impl<R: Rng> Iterator for IipaProcess<R> {
    type Item = EventRecord;

    fn next(&mut self) -> Option<EventRecord> {
        Some(iipa_step(&mut self.state, self.m, &mut self.rng))
    }
}

impl<R: Rng> GrowthProcess for IipaProcess<R> {
    fn step_into(&mut self, sink: &mut dyn FnMut(EventRecord)) {
        sink(iipa_step(&mut self.state, self.m, &mut self.rng));
    }

    fn state(&self) -> &GraphState {
        &self.state
    }

    fn complete_vertices(&self) -> usize {
        (self.state.t / (u64::from(self.m) + 1)) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Purpose, StreamRng};

    #[test]
    fn single_vertex_takes_all_its_edges() {
        let mut rng = StreamRng::seeded(3, Purpose::Iipa);
        let s = iipa_run(1, 2, &mut rng).unwrap();
        assert_eq!(s.in_degree(), &[3]);
        assert_eq!(s.t(), 3);
    }

    #[test]
    fn first_edge_of_second_vertex() {
        // in-degrees 2 and 1 at t = 3: P(v1) = 2/3
        let mut rng = StreamRng::seeded(5, Purpose::Iipa);
        let n = 200_000;
        let mut hits_v1 = 0u64;
        for _ in 0..n {
            let s = iipa_run(2, 1, &mut rng).unwrap();
            if s.in_degree()[0] == 3 {
                hits_v1 += 1;
            }
        }
        let p = 2.0 / 3.0;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((hits_v1 as f64 / n as f64 - p).abs() < 4.0 * se);
    }

    #[test]
    fn conservation() {
        let mut rng = StreamRng::seeded(9, Purpose::Iipa);
        let s = iipa_run(3000, 3, &mut rng).unwrap();
        assert_eq!(s.n_vertices(), 3000);
        assert_eq!(
            s.in_degree().iter().map(|&d| u64::from(d)).sum::<u64>(),
            s.t()
        );
        assert!(s.in_degree().iter().all(|&d| d >= 1));
        assert!(s.pool_consistent());
    }
}
