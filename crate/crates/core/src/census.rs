//! Counting ordered pairs of self-avoiding 1 -> 2 paths by overlap.
//!
//! `P(k, l)` is the set of ordered pairs `(p, q)` of k-edge paths between
//! vertices 1 and 2 sharing exactly `l` edges. Three routes are provided:
//!
//! * exact counts by full enumeration over ordered pairs (`n <= 10`);
//! * exact counts by symmetry reduction (`k <= 4`, `n <= 400`): fix the
//!   lexicographically least path `p0` and scale the per-overlap counts
//!   of its partners by `|S_{1,2}(k)|`, which is valid because vertex
//!   relabelings fixing 1 and 2 act transitively on `S_{1,2}(k)`;
//! * the first-order approximation `(l+1) n^{2k-l-2}` together with the
//!   exact combinatorial upper bound obtained by summing over the number
//!   `m` of excursions the second path makes from the first.
//!
//! Everything exact is carried in big integers; `n^{2k-l-2}` overflows 64
//! bits already at `n = 400`, `k = 4`.

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("path census needs 1 <= k <= n-1, got n={n}, k={k}")]
    BadPathLength { n: u64, k: u64 },
    #[error("overlap l={l} outside [0, k={k}]")]
    BadOverlap { l: u64, k: u64 },
    #[error("exact census refused: needs n <= 10, or k <= 4 and n <= 400 (got n={n}, k={k})")]
    SizeLimit { n: u64, k: u64 },
    #[error("the first-order formula covers l in [1, k]; l = 0 has no asymptotic")]
    DisjointNotCovered,
    #[error("the excursion-sum bound needs 1 <= l <= k-2, got k={k}, l={l}")]
    UpperBoundRange { k: u64, l: u64 },
}

/// `|S_{1,2}(k)| = (n-2)! / (n-k-1)!`, the product of `(n-j)` for
/// `j = 2..=k` (empty product at `k = 1`).
pub fn path_count_exact(n: u64, k: u64) -> Result<BigUint, CensusError> {
    if n < 2 || k < 1 || k > n - 1 {
        return Err(CensusError::BadPathLength { n, k });
    }
    Ok(falling_product(n, k))
}

/// `prod_{j=2}^{hi} (n - j)`, zero if the range runs past `n`.
fn falling_product(n: u64, hi: u64) -> BigUint {
    if hi < 2 {
        return BigUint::from(1u32);
    }
    if hi >= n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for j in 2..=hi {
        acc *= n - j;
    }
    acc
}

fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    let b = b.min(a - b);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..b {
        num *= a - i;
        den *= i + 1;
    }
    num / den
}

fn factorial(a: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 2..=a {
        acc *= i;
    }
    acc
}

/// Exact `|P(k, l)|` for every overlap at once: index `l` of the result
/// holds the count of ordered pairs sharing exactly `l` edges.
pub fn pair_census(n: u64, k: u64) -> Result<Vec<BigUint>, CensusError> {
    if n < 3 || k < 1 || k > n - 1 {
        return Err(CensusError::BadPathLength { n, k });
    }
    if k <= 4 && n <= 400 {
        pair_census_reduced(n, k)
    } else if n <= 10 {
        pair_census_full(n, k)
    } else {
        Err(CensusError::SizeLimit { n, k })
    }
}

/// Exact `|P(k, l)|` for one overlap value.
pub fn pair_count_exact(n: u64, k: u64, l: u64) -> Result<BigUint, CensusError> {
    if l > k {
        return Err(CensusError::BadOverlap { l, k });
    }
    Ok(pair_census(n, k)?.swap_remove(l as usize))
}

/// Full enumeration over ordered pairs of paths. `n <= 10`.
pub fn pair_census_full(n: u64, k: u64) -> Result<Vec<BigUint>, CensusError> {
    if n < 3 || k < 1 || k > n - 1 {
        return Err(CensusError::BadPathLength { n, k });
    }
    if n > 10 {
        return Err(CensusError::SizeLimit { n, k });
    }
    let paths = all_paths(n as u32, k as u32);
    let edge_sets: Vec<Vec<u64>> = paths.iter().map(|p| edge_set(p)).collect();
    let mut counts = vec![0u64; k as usize + 1];
    for p in &edge_sets {
        for q in &edge_sets {
            counts[shared_edges(p, q)] += 1;
        }
    }
    Ok(counts.into_iter().map(BigUint::from).collect())
}

/// Symmetry-reduced exact census: enumerate only the partners of the
/// lexicographically least path `p0 = (1, 3, 4, ..., k+1, 2)` and scale
/// by `|S_{1,2}(k)|`. `k <= 4`, `n <= 400`.
pub fn pair_census_reduced(n: u64, k: u64) -> Result<Vec<BigUint>, CensusError> {
    if n < 3 || k < 1 || k > n - 1 {
        return Err(CensusError::BadPathLength { n, k });
    }
    if k > 4 || n > 400 {
        return Err(CensusError::SizeLimit { n, k });
    }
    let nn = n as u32;
    let kk = k as u32;
    let mut counts = vec![0u64; k as usize + 1];

    // Overlap of q's edges with p0's: (1,3), (3,4), ..., (k, k+1), (k+1, 2).
    #[inline(always)]
    fn on_p0(u: u32, v: u32, k: u32) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let hit = if k == 1 {
            a == 1 && b == 2
        } else {
            (a == 1 && b == 3)
                || (a == 2 && b == k + 1)
                || (b == a + 1 && a >= 3 && b <= k + 1)
        };
        usize::from(hit)
    }

    match kk {
        1 => counts[1] += 1,
        2 => {
            for v1 in 3..=nn {
                counts[on_p0(1, v1, 2) + on_p0(v1, 2, 2)] += 1;
            }
        }
        3 => {
            for v1 in 3..=nn {
                let e1 = on_p0(1, v1, 3);
                for v2 in 3..=nn {
                    if v2 == v1 {
                        continue;
                    }
                    counts[e1 + on_p0(v1, v2, 3) + on_p0(v2, 2, 3)] += 1;
                }
            }
        }
        4 => {
            for v1 in 3..=nn {
                let e1 = on_p0(1, v1, 4);
                for v2 in 3..=nn {
                    if v2 == v1 {
                        continue;
                    }
                    let e2 = e1 + on_p0(v1, v2, 4);
                    for v3 in 3..=nn {
                        if v3 == v1 || v3 == v2 {
                            continue;
                        }
                        counts[e2 + on_p0(v2, v3, 4) + on_p0(v3, 2, 4)] += 1;
                    }
                }
            }
        }
        _ => unreachable!(),
    }

    let total = path_count_exact(n, k)?;
    Ok(counts.into_iter().map(|c| BigUint::from(c) * &total).collect())
}

/// First-order count `(l+1) n^{2k-l-2}` for `l in [1, k-2]`; exactly zero
/// at `l = k-1`; the exact path count at `l = k`. Disjoint pairs
/// (`l = 0`) are outside the formula's coverage and are refused.
pub fn pair_count_asymptotic(n: u64, k: u64, l: u64) -> Result<f64, CensusError> {
    if n < 3 || k < 1 || k > n - 1 {
        return Err(CensusError::BadPathLength { n, k });
    }
    if l > k {
        return Err(CensusError::BadOverlap { l, k });
    }
    if l == 0 {
        return Err(CensusError::DisjointNotCovered);
    }
    if l == k {
        return Ok(biguint_to_f64(&path_count_exact(n, k)?));
    }
    if l == k - 1 {
        return Ok(0.0);
    }
    let exponent = (2 * k - l - 2) as i32;
    Ok((l + 1) as f64 * (n as f64).powi(exponent))
}

/// Exact integer evaluation of the excursion-count upper bound
///
/// ```text
/// sum_{m=1}^{k-l} C(m+l, m) C(k-l-1, m-1)^2 (m-1)! 2^(m-1)
///                 prod_{j=2}^{2k-l-m} (n-j)
/// ```
///
/// for `1 <= l <= k-2`. Each term chooses the shared-edge layout before
/// each of `m` gaps, the gap and excursion lengths, the order and
/// direction of the shared pieces, and the excursions' new vertices.
pub fn pair_count_upper(n: u64, k: u64, l: u64) -> Result<BigUint, CensusError> {
    if n < 3 || k < 1 || k > n - 1 {
        return Err(CensusError::BadPathLength { n, k });
    }
    if l < 1 || l + 2 > k {
        return Err(CensusError::UpperBoundRange { k, l });
    }
    let mut acc = BigUint::from(0u32);
    for m in 1..=(k - l) {
        let choose_common = binomial(m + l, m);
        let choose_lengths = binomial(k - l - 1, m - 1);
        let order = factorial(m - 1);
        let directions = BigUint::from(2u32).pow((m - 1) as u32);
        let vertices = falling_product(n, 2 * k - l - m);
        acc += choose_common * &choose_lengths * choose_lengths * order * directions * vertices;
    }
    Ok(acc)
}

/// Relative deviation `|exact / asymptotic - 1|` where both are defined.
pub fn census_rel_error(n: u64, k: u64, l: u64) -> Result<f64, CensusError> {
    let exact = biguint_to_f64(&pair_count_exact(n, k, l)?);
    let asym = pair_count_asymptotic(n, k, l)?;
    Ok((exact / asym - 1.0).abs())
}

pub fn biguint_to_f64(v: &BigUint) -> f64 {
    // Round-trip through the decimal string; exact counts here are far
    // below 2^53 after the leading digits that matter.
    v.to_string().parse().unwrap_or(f64::INFINITY)
}

/// All self-avoiding 1 -> 2 paths with exactly `k` edges, as vertex lists.
fn all_paths(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![1u32];
    let mut used = vec![false; n as usize + 1];
    fn rec(n: u32, left: u32, cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            cur.push(2);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for u in 3..=n {
            if used[u as usize] {
                continue;
            }
            used[u as usize] = true;
            cur.push(u);
            rec(n, left - 1, cur, used, out);
            cur.pop();
            used[u as usize] = false;
        }
    }
    rec(n, k, &mut cur, &mut used, &mut out);
    out
}

fn edge_set(path: &[u32]) -> Vec<u64> {
    let mut edges: Vec<u64> = path
        .windows(2)
        .map(|w| {
            let (a, b) = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
            ((a as u64) << 32) | b as u64
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn shared_edges(p: &[u64], q: &[u64]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < p.len() && j < q.len() {
        match p[i].cmp(&q[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_count_examples() {
        assert_eq!(path_count_exact(5, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(path_count_exact(5, 3).unwrap(), BigUint::from(6u32));
        assert_eq!(path_count_exact(5, 1).unwrap(), BigUint::from(1u32));
        // (n-2)! at k = n-1.
        assert_eq!(path_count_exact(8, 7).unwrap(), BigUint::from(720u32));
        assert!(path_count_exact(5, 5).is_err());
        assert!(path_count_exact(5, 0).is_err());
    }

    #[test]
    fn census_small_examples() {
        // n=4, k=2: the two paths 1-3-2 and 1-4-2 either coincide (l=2)
        // or are disjoint; l=1 is impossible.
        let c = pair_census_full(4, 2).unwrap();
        assert_eq!(c[2], BigUint::from(2u32));
        assert_eq!(c[1], BigUint::from(0u32));
        assert_eq!(c[0], BigUint::from(2u32));

        // n=5, k=3, counts derived by hand over the 36 ordered pairs:
        // 6 diagonal (l=3), 18 sharing one edge (first, last, or the
        // reversed middle), l=2 impossible, 12 disjoint.
        let c = pair_census_full(5, 3).unwrap();
        assert_eq!(c, vec![
            BigUint::from(12u32),
            BigUint::from(18u32),
            BigUint::from(0u32),
            BigUint::from(6u32)
        ]);
    }

    #[test]
    fn reduced_agrees_with_full_enumeration() {
        for n in [5u64, 6, 7, 8] {
            for k in 1..=4.min(n - 1) {
                let full = pair_census_full(n, k).unwrap();
                let reduced = pair_census_reduced(n, k).unwrap();
                assert_eq!(full, reduced, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn completeness_and_diagonal() {
        for n in [5u64, 6, 7, 8] {
            for k in 1..n {
                let c = pair_census_full(n, k).unwrap();
                let total: BigUint = c.iter().sum();
                let s = path_count_exact(n, k).unwrap();
                assert_eq!(total, &s * &s, "n={n} k={k}");
                assert_eq!(c[k as usize], s, "diagonal n={n} k={k}");
                if k >= 2 {
                    assert_eq!(c[k as usize - 1], BigUint::from(0u32), "l=k-1 n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(pair_count_asymptotic(100, 3, 1).unwrap(), 2_000_000.0);
        assert_eq!(pair_count_asymptotic(123, 4, 3).unwrap(), 0.0);
        assert_eq!(pair_count_asymptotic(100, 3, 3).unwrap(), 98.0 * 97.0);
        assert!(matches!(
            pair_count_asymptotic(100, 3, 0),
            Err(CensusError::DisjointNotCovered)
        ));
    }

    #[test]
    fn upper_bound_example_and_domination() {
        // n=5, k=3, l=1: m=1 gives 2 * (3*2*1) = 12, m=2 gives
        // 3 * 1 * 1 * 2 * (3*2) = 36, total 48.
        let u = pair_count_upper(5, 3, 1).unwrap();
        assert_eq!(u, BigUint::from(48u32));
        let e = pair_count_exact(5, 3, 1).unwrap();
        assert_eq!(e, BigUint::from(18u32));
        assert!(e <= u);

        assert!(pair_count_upper(5, 3, 2).is_err());
        assert!(pair_count_upper(5, 3, 0).is_err());
    }

    #[test]
    fn exact_below_upper_on_small_grid() {
        for n in [6u64, 7, 8] {
            for k in 3..n {
                let census = pair_census_full(n, k).unwrap();
                for l in 1..=(k - 2) {
                    let u = pair_count_upper(n, k, l).unwrap();
                    assert!(census[l as usize] <= u, "n={n} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn reduced_mode_at_moderate_n() {
        // Spot-check the structure at a size where only the reduced path
        // is viable: totals must still sum to |S|².
        let n = 50;
        let k = 3;
        let c = pair_census_reduced(n, k).unwrap();
        let s = path_count_exact(n, k).unwrap();
        let total: BigUint = c.iter().sum();
        assert_eq!(total, &s * &s);
        assert_eq!(c[2], BigUint::from(0u32));
        assert_eq!(c[3], s);
        // And the upper bound dominates at l = 1.
        assert!(c[1] <= pair_count_upper(n, k, 1).unwrap());
    }

    #[test]
    fn size_limits_enforced() {
        assert!(matches!(pair_census_full(11, 3), Err(CensusError::SizeLimit { .. })));
        assert!(matches!(pair_census_reduced(401, 3), Err(CensusError::SizeLimit { .. })));
        assert!(matches!(pair_census_reduced(10, 5), Err(CensusError::SizeLimit { .. })));
        assert!(matches!(pair_census(500, 5), Err(CensusError::SizeLimit { .. })));
    }
}
