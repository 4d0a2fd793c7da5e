//! Minimum-weight perfect matchings on small complete graphs and minimum
//! T-joins built from them.

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, EdgeId, NodeId, WeightedGraph};

/// Largest point count accepted by the subset dynamic program.
pub const DP_MATCHING_CAP: usize = 24;

/// Point count up to which [`MatchingEngine::Auto`] uses the subset DP.
pub const AUTO_DP_LIMIT: usize = 20;

// Keeps 2·(max distance + 1) and the blossom duals inside i32.
const BLOSSOM_MAX_DISTANCE: i64 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchingEngine {
    /// Bitmask dynamic program, exact, at most [`DP_MATCHING_CAP`] points.
    SubsetDp,
    /// Edmonds' weighted blossom algorithm, exact, no size cap.
    Blossom,
    /// Subset DP up to [`AUTO_DP_LIMIT`] points, blossom beyond.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub pairs: Vec<(usize, usize)>,
    pub weight: i64,
}

/// Exact minimum-weight perfect matching of the points `0..d.len()`.
pub fn min_weight_perfect_matching(d: &DistanceMatrix, engine: MatchingEngine) -> Result<PerfectMatching> {
    let k = d.len();
    if k % 2 == 1 {
        return Err(Error::OddTSet(k));
    }
    if k == 0 {
        return Ok(PerfectMatching {
            pairs: Vec::new(),
            weight: 0,
        });
    }
    let mut pairs = match engine {
        MatchingEngine::SubsetDp => matching_dp(d)?,
        MatchingEngine::Blossom => matching_blossom(d)?,
        MatchingEngine::Auto if k <= AUTO_DP_LIMIT => matching_dp(d)?,
        MatchingEngine::Auto => matching_blossom(d)?,
    };
    pairs.sort_unstable();
    let weight = pairs.iter().map(|&(i, j)| d.get(i, j)).sum();
    Ok(PerfectMatching { pairs, weight })
}

fn matching_dp(d: &DistanceMatrix) -> Result<Vec<(usize, usize)>> {
    let k = d.len();
    if k > DP_MATCHING_CAP {
        return Err(Error::TooLarge {
            what: "matching point count",
            size: k,
            cap: DP_MATCHING_CAP,
        });
    }
    let full = (1usize << k) - 1;
    // best[mask]: optimum for the points in mask, always pairing its lowest point first
    let mut best = vec![i64::MAX; 1 << k];
    best[0] = 0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut m = rest;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            let sub = best[rest & !(1 << j)];
            if sub != i64::MAX {
                best[mask] = best[mask].min(sub + d.get(i, j));
            }
        }
    }
    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let j = (0..k)
            .filter(|&j| rest & (1 << j) != 0)
            .find(|&j| {
                let sub = best[rest & !(1 << j)];
                sub != i64::MAX && sub + d.get(i, j) == best[mask]
            })
            .expect("optimal partner exists");
        pairs.push((i, j));
        mask = rest & !(1 << j);
    }
    Ok(pairs)
}

fn matching_blossom(d: &DistanceMatrix) -> Result<Vec<(usize, usize)>> {
    let k = d.len();
    let max_d = d.max_entry();
    if max_d >= BLOSSOM_MAX_DISTANCE {
        return Err(Error::TooLarge {
            what: "distance for the blossom engine",
            size: max_d as usize,
            cap: BLOSSOM_MAX_DISTANCE as usize,
        });
    }
    // maximum-cardinality maximum-weight matching on weights 2·(D + 1 − d);
    // even weights keep the engine's halved duals integral
    let mut edges = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j, (2 * (max_d + 1 - d.get(i, j))) as i32));
        }
    }
    let mate = mwmatching::Matching::new(edges).max_cardinality().solve();
    let mut pairs = Vec::with_capacity(k / 2);
    for (i, &j) in mate.iter().enumerate() {
        if j == mwmatching::SENTINEL {
            return Err(Error::InvariantViolation(format!(
                "blossom engine left point {i} unmatched"
            )));
        }
        if i < j {
            pairs.push((i, j));
        }
    }
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TJoin {
    /// Edge ids, sorted, each at most once.
    pub edges: Vec<EdgeId>,
    pub cost: i64,
}

/// Minimum T-join of a connected graph with nonnegative weights.
///
/// Matches `T` optimally under shortest-path distances, joins each matched
/// pair by a shortest path, and keeps the edges used an odd number of times.
pub fn min_t_join(g: &WeightedGraph, t: &[NodeId], engine: MatchingEngine) -> Result<TJoin> {
    let n = g.node_count();
    if t.len() % 2 == 1 {
        return Err(Error::OddTSet(t.len()));
    }
    let mut in_t = vec![false; n];
    for &v in t {
        if v >= n {
            return Err(Error::NodeOutOfRange {
                node: v,
                node_count: n,
            });
        }
        if std::mem::replace(&mut in_t[v], true) {
            return Err(Error::InvalidArgument(format!("node {v} repeated in T")));
        }
    }
    if !g.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let trees: Vec<_> = t.iter().map(|&s| g.shortest_paths(s)).collect();
    let d = DistanceMatrix::from_fn(t.len(), |i, j| {
        trees[i].dist[t[j]].expect("connected graph")
    });
    let matching = min_weight_perfect_matching(&d, engine)?;
    let mut parity = vec![false; g.graph().edge_count()];
    for &(i, j) in &matching.pairs {
        let path = trees[i]
            .path_edges(g.graph(), t[j])
            .expect("connected graph");
        for e in path {
            parity[e] = !parity[e];
        }
    }
    let edges: Vec<EdgeId> = (0..parity.len()).filter(|&e| parity[e]).collect();
    let cost = edges.iter().map(|&e| g.weight(e)).sum();
    Ok(TJoin { edges, cost })
}

/// Nodes of odd degree in the multigraph `(V, edges)`.
pub fn odd_nodes(g: &crate::graph::MultiGraph, edges: &[EdgeId]) -> Vec<NodeId> {
    let mut odd = vec![false; g.node_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        if u != v {
            odd[u] = !odd[u];
            odd[v] = !odd[v];
        }
    }
    (0..g.node_count()).filter(|&v| odd[v]).collect()
}
