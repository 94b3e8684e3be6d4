//! First passage percolation on `K_n` with deterministic lazy edge weights.
//!
//! An [`Instance`] is `(n, seed, model)`. The weight of edge `{u, v}` is a
//! pure function of the seed and the canonical key: a counter-based mix
//! produces a unit variate in (0, 1) which is pushed through the model's
//! quantile. No adjacency structure is ever materialized, so memory is
//! O(n) and results are independent of evaluation order and thread count.

mod bidi;
mod enumerate;

pub use bidi::shortest_path_bidirectional;
pub use enumerate::{
    brute_force_shortest, count_paths_within, min_weight_k_hops, min_weight_k_hops_exact,
    min_weight_k_hops_walk_lb, KHopWeight,
};

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use thiserror::Error;

use crate::models::{EdgeLaw, WeightModel};
use crate::rng::{splitmix_at, unit_open};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("self loop: vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {v} outside [1, {n}]")]
    VertexOutOfRange { v: u32, n: u32 },
    #[error("hop count k={k} must satisfy 1 <= k <= n-1 (n={n})")]
    BadHopCount { k: u32, n: u32 },
    #[error("exhaustive mode refused for n = {n} (limit {limit})")]
    TooLarge { n: u32, limit: u32 },
    #[error("budget too generous: DFS exceeded the work bound of {bound} expansions")]
    WorkBoundExceeded { bound: u64 },
}

/// Canonical undirected edge `{u, v}` with `u < v`, vertices in `[1, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeKey {
    a: u32,
    b: u32,
}

impl EdgeKey {
    pub fn new(u: u32, v: u32) -> Result<Self, SimError> {
        if u == v {
            return Err(SimError::SelfLoop(u));
        }
        Ok(if u < v { Self { a: u, b: v } } else { Self { a: v, b: u } })
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    /// 64-bit counter fed to the mixing function.
    #[inline(always)]
    pub fn code(&self) -> u64 {
        ((self.a as u64) << 32) | self.b as u64
    }
}

/// One realization of `K_n`: weights are a pure function of `(seed, edge)`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub n: u32,
    pub seed: u64,
    pub model: WeightModel,
}

impl Instance {
    pub fn new(n: u32, seed: u64, model: WeightModel) -> Self {
        assert!(n >= 2, "K_n needs n >= 2, got {n}");
        Self { n, seed, model }
    }

    /// Weight of the edge `{u, v}`.
    pub fn edge_weight(&self, u: u32, v: u32) -> Result<f64, SimError> {
        for w in [u, v] {
            if w < 1 || w > self.n {
                return Err(SimError::VertexOutOfRange { v: w, n: self.n });
            }
        }
        let key = EdgeKey::new(u, v)?;
        Ok(self.law().quantile(edge_unit(self.seed, key.code())))
    }

    /// Closed-form law frozen at this instance's `n`.
    pub fn law(&self) -> EdgeLaw {
        self.model.law(self.n as u64)
    }

    /// Recompute the weight of a vertex path in path order.
    pub fn path_weight(&self, path: &[u32]) -> Result<f64, SimError> {
        let mut sum = 0.0;
        for pair in path.windows(2) {
            sum += self.edge_weight(pair[0], pair[1])?;
        }
        Ok(sum)
    }
}

/// Unit variate in (0, 1) for the edge with canonical code `code`.
#[inline(always)]
pub(crate) fn edge_unit(seed: u64, code: u64) -> f64 {
    unit_open(splitmix_at(seed, code))
}

#[inline(always)]
pub(crate) fn edge_unit_uv(seed: u64, u: u32, v: u32) -> f64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    edge_unit(seed, ((a as u64) << 32) | b as u64)
}

/// Result of an optimal-path search between vertex 1 and vertex 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SpResult {
    /// `W_n`: weight of the optimal path, summed in path order.
    pub weight: f64,
    /// `H_n`: number of edges on the optimal path.
    pub hopcount: u32,
    /// Vertex sequence from 1 to 2.
    pub path: Vec<u32>,
    /// Number of Dijkstra-settled vertices (0 for brute force).
    pub settled: u32,
    /// `X_{12}`, the weight of the direct edge.
    pub weight_of_direct_edge: f64,
}

/// Query for `N_k(b)`: paths with exactly `k` edges and weight at most `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathBudgetQuery {
    pub k: u32,
    pub budget: f64,
}

#[derive(Clone, Copy)]
struct HeapEntry {
    dist: f64,
    v: u32,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    // Reversed on distance so BinaryHeap pops the minimum; ties broken by
    // vertex id to keep the pop order fully deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.v.cmp(&self.v))
    }
}

/// Dijkstra from vertex 1 with lazy edge generation, terminating when
/// vertex 2 is settled. This is the reference implementation; the
/// bidirectional engine in [`shortest_path_bidirectional`] computes the
/// same optimum faster on large instances.
pub fn shortest_path(instance: &Instance) -> SpResult {
    let n = instance.n as usize;
    let law = instance.law();
    let seed = instance.seed;
    let mut dist = vec![f64::INFINITY; n + 1];
    let mut parent = vec![0u32; n + 1];
    let mut settled = vec![false; n + 1];
    let mut heap = BinaryHeap::new();
    dist[1] = 0.0;
    heap.push(HeapEntry { dist: 0.0, v: 1 });
    let mut settled_count = 0u32;

    while let Some(HeapEntry { dist: d, v }) = heap.pop() {
        let vi = v as usize;
        if settled[vi] {
            continue;
        }
        settled[vi] = true;
        settled_count += 1;
        if v == 2 {
            break;
        }
        for u in 1..=n as u32 {
            let ui = u as usize;
            if u == v || settled[ui] {
                continue;
            }
            let w = law.quantile(edge_unit_uv(seed, v, u));
            let nd = d + w;
            if nd < dist[ui] {
                dist[ui] = nd;
                parent[ui] = v;
                heap.push(HeapEntry { dist: nd, v: u });
            }
        }
    }
    debug_assert!(settled[2], "vertex 2 unreachable on a complete graph");

    let mut path = Vec::new();
    let mut v = 2u32;
    while v != 0 {
        path.push(v);
        if v == 1 {
            break;
        }
        v = parent[v as usize];
    }
    path.reverse();
    finish_result(instance, path, settled_count)
}

/// Assemble an [`SpResult`], recomputing the weight in path order so that
/// every search algorithm reports bit-identical weights for equal paths.
pub(crate) fn finish_result(instance: &Instance, path: Vec<u32>, settled: u32) -> SpResult {
    debug_assert!(path.first() == Some(&1) && path.last() == Some(&2));
    let weight = instance.path_weight(&path).expect("path uses valid vertices");
    SpResult {
        weight,
        hopcount: (path.len() - 1) as u32,
        path,
        settled,
        weight_of_direct_edge: instance.edge_weight(1, 2).expect("n >= 2"),
    }
}

/// Exact `N_k(b)` for an instance (see [`count_paths_within`]).
pub fn count_paths(instance: &Instance, query: PathBudgetQuery, work_bound: u64) -> Result<u64, SimError> {
    count_paths_within(instance, query, work_bound)
}

/// Monte Carlo batch: replication `i` runs on the instance with seed
/// `splitmix_at(master_seed, i)`. The output is a pure function of
/// `(model, n, reps, master_seed)`, in replication order, independent of
/// the worker count.
pub fn sample_batch(model: &WeightModel, n: u32, reps: u64, master_seed: u64) -> Vec<SpResult> {
    (0..reps)
        .into_par_iter()
        .map(|i| {
            let inst = Instance::new(n, splitmix_at(master_seed, i), model.clone());
            shortest_path_bidirectional(&inst)
        })
        .collect()
}

/// Seed used by replication `i` of [`sample_batch`].
pub fn replication_seed(master_seed: u64, i: u64) -> u64 {
    splitmix_at(master_seed, i)
}
