//! Exhaustive-search oracles: brute-force optimal paths, exact budgeted
//! path counts, and hop-constrained optima.

use super::{finish_result, Instance, PathBudgetQuery, SimError, SpResult};

const BRUTE_FORCE_LIMIT: u32 = 10;
const EXACT_K_HOPS_LIMIT: u32 = 16;

/// Exact optimal path by enumerating every self-avoiding 1 -> 2 path.
/// Refused for `n > 10`.
pub fn brute_force_shortest(instance: &Instance) -> Result<SpResult, SimError> {
    let n = instance.n;
    if n > BRUTE_FORCE_LIMIT {
        return Err(SimError::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    let mut best_weight = f64::INFINITY;
    let mut best_path: Vec<u32> = Vec::new();
    let mut stack: Vec<u32> = vec![1];
    let mut visited = vec![false; n as usize + 1];
    visited[1] = true;

    fn rec(
        inst: &Instance,
        v: u32,
        weight: f64,
        stack: &mut Vec<u32>,
        visited: &mut [bool],
        best_weight: &mut f64,
        best_path: &mut Vec<u32>,
    ) {
        let w2 = weight + inst.edge_weight(v, 2).expect("valid edge");
        if w2 < *best_weight {
            *best_weight = w2;
            best_path.clear();
            best_path.extend_from_slice(stack);
            best_path.push(2);
        }
        for u in 3..=inst.n {
            if visited[u as usize] {
                continue;
            }
            let w = weight + inst.edge_weight(v, u).expect("valid edge");
            visited[u as usize] = true;
            stack.push(u);
            rec(inst, u, w, stack, visited, best_weight, best_path);
            stack.pop();
            visited[u as usize] = false;
        }
    }

    rec(instance, 1, 0.0, &mut stack, &mut visited, &mut best_weight, &mut best_path);
    Ok(finish_result(instance, best_path, 0))
}

/// Exact `N_k(b)`: the number of self-avoiding 1 -> 2 paths with exactly
/// `k` edges and weight at most `b`, by depth-first search over
/// self-avoiding prefixes, pruning any prefix heavier than `b`.
///
/// `work_bound` caps the number of edge expansions; exceeding it means
/// the budget admits too much of the light-edge subgraph.
pub fn count_paths_within(
    instance: &Instance,
    query: PathBudgetQuery,
    work_bound: u64,
) -> Result<u64, SimError> {
    let n = instance.n;
    let k = query.k;
    if k < 1 || k > n - 1 {
        return Err(SimError::BadHopCount { k, n });
    }
    let mut visited = vec![false; n as usize + 1];
    visited[1] = true;
    let mut work = 0u64;
    let mut count = 0u64;
    dfs_count(instance, 1, 0, 0.0, query, &mut visited, &mut work, work_bound, &mut count)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn dfs_count(
    inst: &Instance,
    v: u32,
    edges_used: u32,
    weight: f64,
    query: PathBudgetQuery,
    visited: &mut [bool],
    work: &mut u64,
    work_bound: u64,
    count: &mut u64,
) -> Result<(), SimError> {
    *work += 1;
    if *work > work_bound {
        return Err(SimError::WorkBoundExceeded { bound: work_bound });
    }
    if edges_used + 1 == query.k {
        let w = weight + inst.edge_weight(v, 2).expect("valid edge");
        if w <= query.budget {
            *count += 1;
        }
        return Ok(());
    }
    for u in 3..=inst.n {
        if visited[u as usize] {
            continue;
        }
        let w = weight + inst.edge_weight(v, u).expect("valid edge");
        if w > query.budget {
            continue;
        }
        visited[u as usize] = true;
        dfs_count(inst, u, edges_used + 1, w, query, visited, work, work_bound, count)?;
        visited[u as usize] = false;
    }
    Ok(())
}

/// Hop-constrained optimum, either exact or flagged as a walk relaxation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KHopWeight {
    /// Exact `W_n(k)` over self-avoiding k-edge paths.
    Exact(f64),
    /// Lower bound: minimum over k-edge walks, which may revisit
    /// vertices and therefore undercount the weight.
    WalkRelaxation(f64),
}

impl KHopWeight {
    pub fn value(&self) -> f64 {
        match self {
            Self::Exact(w) | Self::WalkRelaxation(w) => *w,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }
}

/// `W_n(k)`: exact for `n <= 16`, otherwise the flagged walk relaxation.
pub fn min_weight_k_hops(instance: &Instance, k: u32) -> Result<KHopWeight, SimError> {
    if instance.n <= EXACT_K_HOPS_LIMIT {
        min_weight_k_hops_exact(instance, k).map(KHopWeight::Exact)
    } else {
        Ok(KHopWeight::WalkRelaxation(min_weight_k_hops_walk_lb(instance, k)?))
    }
}

/// Exact minimum weight over self-avoiding 1 -> 2 paths with exactly `k`
/// edges. Branch-and-bound with a greedy incumbent; refused for `n > 16`.
pub fn min_weight_k_hops_exact(instance: &Instance, k: u32) -> Result<f64, SimError> {
    let n = instance.n;
    if n > EXACT_K_HOPS_LIMIT {
        return Err(SimError::TooLarge { n, limit: EXACT_K_HOPS_LIMIT });
    }
    if k < 1 || k > n - 1 {
        return Err(SimError::BadHopCount { k, n });
    }
    let mut best = greedy_k_hops(instance, k);
    let mut visited = vec![false; n as usize + 1];
    visited[1] = true;
    dfs_min(instance, 1, 0, 0.0, k, &mut visited, &mut best);
    Ok(best)
}

/// Greedy k-hop incumbent: cheapest available extension at every step.
fn greedy_k_hops(instance: &Instance, k: u32) -> f64 {
    let n = instance.n;
    let mut visited = vec![false; n as usize + 1];
    visited[1] = true;
    visited[2] = true;
    let mut v = 1u32;
    let mut total = 0.0;
    for _ in 0..k - 1 {
        let mut best_u = 0;
        let mut best_w = f64::INFINITY;
        for u in 3..=n {
            if visited[u as usize] {
                continue;
            }
            let w = instance.edge_weight(v, u).expect("valid edge");
            if w < best_w {
                best_w = w;
                best_u = u;
            }
        }
        visited[best_u as usize] = true;
        total += best_w;
        v = best_u;
    }
    total + instance.edge_weight(v, 2).expect("valid edge")
}

fn dfs_min(inst: &Instance, v: u32, edges_used: u32, weight: f64, k: u32, visited: &mut [bool], best: &mut f64) {
    if weight >= *best {
        return;
    }
    if edges_used + 1 == k {
        let w = weight + inst.edge_weight(v, 2).expect("valid edge");
        if w < *best {
            *best = w;
        }
        return;
    }
    for u in 3..=inst.n {
        if visited[u as usize] {
            continue;
        }
        let w = weight + inst.edge_weight(v, u).expect("valid edge");
        if w >= *best {
            continue;
        }
        visited[u as usize] = true;
        dfs_min(inst, u, edges_used + 1, w, k, visited, best);
        visited[u as usize] = false;
    }
}

/// Hop-layered relaxation: minimum weight over 1 -> 2 *walks* with exactly
/// `k` edges, a lower bound for `W_n(k)`. O(k n²) lazy edge evaluations.
pub fn min_weight_k_hops_walk_lb(instance: &Instance, k: u32) -> Result<f64, SimError> {
    let n = instance.n;
    if k < 1 || k > n - 1 {
        return Err(SimError::BadHopCount { k, n });
    }
    let size = n as usize + 1;
    let mut cur = vec![f64::INFINITY; size];
    let mut next = vec![f64::INFINITY; size];
    cur[1] = 0.0;
    for _ in 0..k {
        next.iter_mut().for_each(|d| *d = f64::INFINITY);
        for v in 1..=n {
            let dv = cur[v as usize];
            if dv.is_infinite() {
                continue;
            }
            for u in 1..=n {
                if u == v {
                    continue;
                }
                let nd = dv + instance.edge_weight(v, u).expect("valid edge");
                if nd < next[u as usize] {
                    next[u as usize] = nd;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(cur[2])
}
