//! The Simon model.
//!
//! Starts at `t = 1` with one vertex carrying a directed loop. Each step adds,
//! with probability `alpha`, a new vertex with a directed loop; otherwise a
//! directed edge from the most recently added vertex to `v_j`, chosen with
//! probability `in_degree(v_j) / t`. The target range includes the source.

use rand::Rng;

use super::{check_alpha, EventRecord, GraphState, GrowthProcess, WeightKind};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimonBranch {
    NewVertex,
    Edge,
}

pub fn simon_init() -> GraphState {
    let mut state = GraphState::empty(WeightKind::InDegree);
    let v = state.add_vertex(1);
    state.in_degree[v as usize] = 1;
    state.pool.push(v);
    state.t = 1;
    state
}

/// One step of the Simon process.
#[inline]
pub fn simon_step<R: Rng + ?Sized>(state: &mut GraphState, alpha: f64, rng: &mut R) -> EventRecord {
    debug_assert!(alpha > 0.0 && alpha < 1.0);
    let branch = if rng.random_bool(alpha) {
        SimonBranch::NewVertex
    } else {
        SimonBranch::Edge
    };
    simon_step_forced(state, branch, rng)
}

/// One step with the branch fixed by the caller. The edge target is still random.
#[inline]
pub fn simon_step_forced<R: Rng + ?Sized>(
    state: &mut GraphState,
    branch: SimonBranch,
    rng: &mut R,
) -> EventRecord {
    let t = state.t + 1;
    let record = match branch {
        SimonBranch::NewVertex => {
            let v = state.add_vertex(t);
            state.in_degree[v as usize] = 1;
            state.pool.push(v);
            EventRecord::new_vertex(t, v)
        }
        SimonBranch::Edge => {
            let target = state.pool[rng.random_range(0..state.pool.len())];
            state.in_degree[target as usize] += 1;
            state.pool.push(target);
            EventRecord::edge(t, state.last_vertex, target)
        }
    };
    state.t = t;
    debug_assert_eq!(
        state.pool.len() as u64,
        state.t,
        "in-degree sum must equal t"
    );
    state.debug_check_pool();
    record
}

/// Runs from the initial state until `t_target` steps have elapsed.
pub fn simon_run<R: Rng + ?Sized>(t_target: u64, alpha: f64, rng: &mut R) -> Result<GraphState> {
    check_alpha(alpha)?;
    let mut state = simon_init();
    state.pool.reserve(t_target.saturating_sub(1) as usize);
    let vertices = (alpha * t_target as f64 * 1.01) as usize;
    state.in_degree.reserve(vertices);
    state.birth_time.reserve(vertices);
    while state.t < t_target {
        simon_step(&mut state, alpha, rng);
    }
    Ok(state)
}

/// Iterator-style Simon process. Each call to `next` is one step.
pub struct SimonProcess<R> {
    alpha: f64,
    state: GraphState,
    rng: R,
}

impl<R: Rng> SimonProcess<R> {
    pub fn new(alpha: f64, rng: R) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(SimonProcess {
            alpha,
            state: simon_init(),
            rng,
        })
    }

    pub fn state(&self) -> &GraphState {
        &self.state
    }

    pub fn into_state(self) -> GraphState {
        self.state
    }

    pub fn run_until(&mut self, t: u64) {
        while self.state.t < t {
            simon_step(&mut self.state, self.alpha, &mut self.rng);
        }
    }
}

impl<R: Rng> Iterator for SimonProcess<R> {
    type Item = EventRecord;

    fn next(&mut self) -> Option<EventRecord> {
        Some(simon_step(&mut self.state, self.alpha, &mut self.rng))
    }
}

impl<R: Rng> GrowthProcess for SimonProcess<R> {
    fn step_into(&mut self, sink: &mut dyn FnMut(EventRecord)) {
        sink(simon_step(&mut self.state, self.alpha, &mut self.rng));
    }

    fn state(&self) -> &GraphState {
        &self.state
    }
}

/// A Simon run in duplication form: every new vertex records a parent chosen
/// uniformly among the vertices existing just before it.
#[derive(Debug, Clone)]
pub struct GenealogyRun {
    pub state: GraphState,
    pub events: Vec<EventRecord>,
    /// `parent[v]` for every vertex; `None` for the initial vertex.
    pub parent: Vec<Option<u32>>,
}

impl GenealogyRun {
    /// For every vertex, the vertex among `0..n_roots` it descends from.
    /// Vertices below `n_roots` are their own root.
    pub fn roots(&self, n_roots: usize) -> Vec<u32> {
        let mut root = Vec::with_capacity(self.parent.len());
        for (v, p) in self.parent.iter().enumerate() {
            let r = if v < n_roots {
                v as u32
            } else {
                // parents are always older, so root[p] is already known
                root[p.expect("only vertex 0 lacks a parent") as usize]
            };
            root.push(r);
        }
        root
    }

    /// Descendant counts `D_j(t)` at the end of the run for the roots `0..n_roots`.
    pub fn descendant_counts(&self, n_roots: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n_roots];
        for r in self.roots(n_roots) {
            counts[r as usize] += 1;
        }
        counts
    }
}

/// One step in duplication form. Marginally the same law as [`simon_step`].
pub fn simon_genealogy_step<R: Rng + ?Sized>(
    state: &mut GraphState,
    parent: &mut Vec<Option<u32>>,
    alpha: f64,
    rng: &mut R,
) -> EventRecord {
    if rng.random_bool(alpha) {
        let p = rng.random_range(0..state.n_vertices()) as u32;
        parent.push(Some(p));
        simon_step_forced(state, SimonBranch::NewVertex, rng)
    } else {
        simon_step_forced(state, SimonBranch::Edge, rng)
    }
}

pub fn simon_run_with_genealogy<R: Rng + ?Sized>(
    t_target: u64,
    alpha: f64,
    rng: &mut R,
) -> Result<GenealogyRun> {
    check_alpha(alpha)?;
    let mut state = simon_init();
    let mut parent = vec![None];
    let mut events = Vec::with_capacity(t_target as usize);
    events.push(EventRecord::new_vertex(1, 0));
    while state.t < t_target {
        events.push(simon_genealogy_step(&mut state, &mut parent, alpha, rng));
    }
    Ok(GenealogyRun {
        state,
        events,
        parent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Purpose, StreamRng};

    fn rng() -> StreamRng {
        StreamRng::seeded(11, Purpose::Simon)
    }

    #[test]
    fn forced_new_vertex_at_t1() {
        let mut s = simon_init();
        let e = simon_step_forced(&mut s, SimonBranch::NewVertex, &mut rng());
        assert_eq!(s.t(), 2);
        assert_eq!(s.n_vertices(), 2);
        assert_eq!(s.in_degree(), &[1, 1]);
        assert_eq!(e.kind, super::super::EventKind::NewVertex);
    }

    #[test]
    fn forced_edge_at_t1_hits_the_only_vertex() {
        let mut r = rng();
        for _ in 0..50 {
            let mut s = simon_init();
            let e = simon_step_forced(&mut s, SimonBranch::Edge, &mut r);
            assert_eq!(s.in_degree(), &[2]);
            assert_eq!((e.source, e.target), (0, 0));
        }
    }

    #[test]
    fn edge_source_is_last_vertex() {
        let mut r = rng();
        let mut s = simon_init();
        simon_step_forced(&mut s, SimonBranch::NewVertex, &mut r);
        simon_step_forced(&mut s, SimonBranch::NewVertex, &mut r);
        for _ in 0..20 {
            let e = simon_step_forced(&mut s, SimonBranch::Edge, &mut r);
            assert_eq!(e.source, 2);
        }
    }

    #[test]
    fn conservation_along_a_run() {
        let mut r = rng();
        let mut s = simon_init();
        for _ in 0..5000 {
            simon_step(&mut s, 0.3, &mut r);
            let sum: u64 = s.in_degree().iter().map(|&d| u64::from(d)).sum();
            assert_eq!(sum, s.t());
            assert!(s.in_degree().iter().all(|&d| d >= 1));
        }
        assert!(s.pool_consistent());
    }

    #[test]
    fn genealogy_with_alpha_near_one_partitions_vertices() {
        let mut r = rng();
        let run = simon_run_with_genealogy(2000, 0.999_999, &mut r).unwrap();
        let n_roots = 10;
        let counts = run.descendant_counts(n_roots);
        assert!(counts.iter().all(|&c| c >= 1));
        assert_eq!(counts.iter().sum::<u64>() as usize, run.state.n_vertices());
        assert_eq!(run.parent.len(), run.state.n_vertices());
    }

    #[test]
    fn genealogy_parents_are_older() {
        let run = simon_run_with_genealogy(10_000, 0.5, &mut rng()).unwrap();
        for (v, p) in run.parent.iter().enumerate().skip(1) {
            assert!((p.unwrap() as usize) < v);
        }
    }
}
