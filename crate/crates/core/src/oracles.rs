//! Exact reference solvers: Held-Karp TSP and exhaustive enumerations used
//! as ground truth by the tests. Every routine has a hard size cap.

use std::collections::BTreeSet;

use crate::deltamatroid::SquareGraph;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, EdgeId, MultiGraph, NodeId, WeightedGraph};
use crate::halfpoint::{decompose, HalfIntegerPoint};

pub const HELD_KARP_CAP: usize = 24;
pub const BRUTE_HAM_CAP: usize = 20;
pub const BRUTE_T_JOIN_CAP: usize = 18;
pub const BRUTE_RAINBOW_CAP: usize = 6;
pub const BRUTE_CUT_CAP: usize = 12;
pub const BRUTE_MATCHING_CAP: usize = 14;

fn cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::TooLarge { what, size, cap })
    } else {
        Ok(())
    }
}

trait Cell: Copy {
    const INF: Self;
    fn from_i64(v: i64) -> Self;
    fn to_i64(self) -> i64;
}

impl Cell for u32 {
    const INF: Self = u32::MAX;
    fn from_i64(v: i64) -> Self {
        v as u32
    }
    fn to_i64(self) -> i64 {
        self as i64
    }
}

impl Cell for i64 {
    const INF: Self = i64::MAX;
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_i64(self) -> i64 {
        self
    }
}

/// Cost of a shortest Hamiltonian cycle under `d`, by the Held-Karp subset
/// DP. Node 0 is the fixed start; table entries exist only for `(S, j)`
/// with `j ∈ S ⊆ {1, …, n−1}`.
pub fn held_karp(d: &DistanceMatrix) -> Result<i64> {
    let n = d.len();
    cap("Held-Karp node count", n, HELD_KARP_CAP)?;
    match n {
        0 | 1 => return Ok(0),
        2 => return Ok(2 * d.get(0, 1)),
        _ => {}
    }
    let bound = d.max_entry().saturating_mul(n as i64);
    if bound < u32::MAX as i64 {
        Ok(held_karp_table::<u32>(d))
    } else {
        Ok(held_karp_table::<i64>(d))
    }
}

fn held_karp_table<T: Cell>(d: &DistanceMatrix) -> i64 {
    let n = d.len();
    let m = n - 1; // node i + 1 is bit i
    let subsets = 1usize << m;
    let mut offset = vec![0usize; subsets + 1];
    for s in 0..subsets {
        offset[s + 1] = offset[s] + s.count_ones() as usize;
    }
    let mut dp = vec![T::INF; offset[subsets]];
    for j in 0..m {
        dp[offset[1 << j]] = T::from_i64(d.get(0, j + 1));
    }
    for s in 1..subsets {
        if s.count_ones() < 2 {
            continue;
        }
        let mut rest = s;
        let mut slot = offset[s];
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << j);
            let mut best = i64::MAX;
            let mut it = prev;
            let mut k = offset[prev];
            while it != 0 {
                let i = it.trailing_zeros() as usize;
                it &= it - 1;
                let v = dp[k].to_i64() + d.get(i + 1, j + 1);
                best = best.min(v);
                k += 1;
            }
            dp[slot] = T::from_i64(best);
            slot += 1;
        }
    }
    let full = subsets - 1;
    (0..m)
        .map(|j| dp[offset[full] + j].to_i64() + d.get(j + 1, 0))
        .min()
        .expect("n ≥ 3")
}

/// Whether the edges in `keep` form one cycle through every node.
fn is_hamiltonian_edge_set(g: &MultiGraph, keep: &[bool]) -> bool {
    let n = g.node_count();
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for (e, u, v) in g.edges() {
        if keep[e] {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// All matching choices (one bit per square: 0 keeps edges 0 and 2 of the
/// square, 1 keeps edges 1 and 3) whose kept edges plus `M` form a
/// Hamiltonian cycle, in increasing order of the choice bitmask.
pub fn hamiltonian_choices(sg: &SquareGraph) -> Result<Vec<Vec<u8>>> {
    let t = sg.square_count();
    cap("square count", t, BRUTE_HAM_CAP)?;
    let g = sg.graph();
    let mut found = Vec::new();
    for mask in 0..1u64 << t {
        let choice: Vec<u8> = (0..t).map(|i| (mask >> i & 1) as u8).collect();
        let mut keep: Vec<bool> = (0..g.edge_count()).map(|e| sg.is_m_edge(e)).collect();
        for (sq, &k) in sg.squares().iter().zip(&choice) {
            keep[sq.edges[k as usize]] = true;
            keep[sq.edges[k as usize + 2]] = true;
        }
        if is_hamiltonian_edge_set(g, &keep) {
            found.push(choice);
        }
    }
    Ok(found)
}

/// Minimum cost of a Hamiltonian cycle containing `M`, by enumeration of
/// every matching choice. `None` if no choice gives a Hamiltonian cycle.
pub fn brute_ham(sg: &SquareGraph, costs: &[i64]) -> Result<Option<i64>> {
    if costs.len() != sg.graph().edge_count() {
        return Err(Error::CostLength {
            expected: sg.graph().edge_count(),
            got: costs.len(),
        });
    }
    let m_cost: i64 = sg.m_edges().map(|e| costs[e]).sum();
    Ok(hamiltonian_choices(sg)?
        .iter()
        .map(|choice| {
            let squares: i64 = sg
                .squares()
                .iter()
                .zip(choice)
                .map(|(sq, &k)| costs[sq.edges[k as usize]] + costs[sq.edges[k as usize + 2]])
                .sum();
            m_cost + squares
        })
        .min())
}

/// The family `{H ∩ R}` as sets of square indices: square `i` is a member
/// element iff its kept matching contains its lowest-id edge.
pub fn ham_family(sg: &SquareGraph) -> Result<Vec<BTreeSet<usize>>> {
    let mut family: Vec<BTreeSet<usize>> = hamiltonian_choices(sg)?
        .iter()
        .map(|choice| {
            sg.squares()
                .iter()
                .zip(choice)
                .enumerate()
                .filter(|(_, (sq, &k))| {
                    let r = *sq.edges.iter().min().unwrap();
                    sq.edges[k as usize] == r || sq.edges[k as usize + 2] == r
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    family.sort();
    family.dedup();
    Ok(family)
}

/// Minimum cost of an edge set whose odd-degree nodes are exactly `t`, by
/// enumeration of all edge subsets. `None` if no such set exists.
pub fn brute_t_join(g: &WeightedGraph, t: &[NodeId]) -> Result<Option<i64>> {
    let graph = g.graph();
    let m = graph.edge_count();
    cap("edge count", m, BRUTE_T_JOIN_CAP)?;
    let n = graph.node_count();
    let mut target = vec![false; n];
    for &v in t {
        if v >= n {
            return Err(Error::NodeOutOfRange {
                node: v,
                node_count: n,
            });
        }
        target[v] = !target[v];
    }
    let mut best = None;
    for mask in 0u32..1 << m {
        let mut odd = vec![false; n];
        let mut cost = 0;
        for (e, u, v) in graph.edges() {
            if mask >> e & 1 == 1 {
                odd[u] = !odd[u];
                odd[v] = !odd[v];
                cost += g.weight(e);
            }
        }
        if odd == target && best.is_none_or(|b| cost < b) {
            best = Some(cost);
        }
    }
    Ok(best)
}

/// Minimum cost of a rainbow 1-tree (special node 0) of a square point, by
/// enumerating one edge per pair class on top of all 1-edges. `None` if
/// no selection is a 1-tree.
pub fn brute_rainbow(x: &HalfIntegerPoint, costs: &[i64]) -> Result<Option<i64>> {
    x.check_costs(costs)?;
    let dec = decompose(x)?;
    cap("square count", dec.squares.len(), BRUTE_RAINBOW_CAP)?;
    let ones: Vec<EdgeId> = x.edges().filter(|e| e.3 == 2).map(|e| e.0).collect();
    let pairs = &dec.pair_partition;
    let mut best = None;
    for mask in 0u32..1 << pairs.len() {
        let mut edges = ones.clone();
        for (i, pair) in pairs.iter().enumerate() {
            edges.push(pair[(mask >> i & 1) as usize]);
        }
        if brute_is_one_tree(x, &edges) {
            let cost = edges.iter().map(|&e| costs[e]).sum::<i64>();
            if best.is_none_or(|b| cost < b) {
                best = Some(cost);
            }
        }
    }
    Ok(best)
}

/// `n` edges, two of them at node 0, the rest a spanning tree of the other
/// nodes.
fn brute_is_one_tree(x: &HalfIntegerPoint, edges: &[EdgeId]) -> bool {
    let n = x.n();
    if edges.len() != n {
        return false;
    }
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut at_zero = 0;
    for &e in edges {
        let (u, v) = x.endpoints(e);
        if u == 0 || v == 0 {
            at_zero += 1;
        } else {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    if at_zero != 2 || n < 2 {
        return false;
    }
    // n − 2 edges reaching all of 1..n form a spanning tree there
    let mut seen = vec![false; n];
    let mut stack = vec![1];
    seen[1] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n - 1
}

/// Minimum weight of `δ(S)` over every nonempty proper subset `S`, with the
/// smallest-mask witness among sets containing node 0.
pub fn brute_min_cut(g: &WeightedGraph) -> Result<(i64, Vec<NodeId>)> {
    let n = g.node_count();
    cap("node count", n, BRUTE_CUT_CAP)?;
    if n < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            got: n,
        });
    }
    let mut best: Option<(i64, u32)> = None;
    // fixing node 0 inside S visits every cut once
    for mask in (1u32..1 << n).step_by(2) {
        if mask == (1 << n) - 1 {
            continue;
        }
        let value: i64 = g
            .graph()
            .edges()
            .filter(|&(_, u, v)| (mask >> u & 1) != (mask >> v & 1))
            .map(|(e, _, _)| g.weight(e))
            .sum();
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, mask));
        }
    }
    let (value, mask) = best.expect("n ≥ 2");
    Ok((value, (0..n).filter(|&v| mask >> v & 1 == 1).collect()))
}

/// Whether `x` satisfies every degree and cut constraint, checked by
/// enumerating all node subsets.
pub fn brute_cuts(x: &HalfIntegerPoint) -> Result<bool> {
    let n = x.n();
    cap("node count", n, BRUTE_CUT_CAP)?;
    let mut degree = vec![0u32; n];
    for (_, u, v, x2) in x.edges() {
        degree[u] += x2 as u32;
        degree[v] += x2 as u32;
    }
    if degree.iter().any(|&d| d != 4) {
        return Ok(false);
    }
    for mask in (1u32..1 << n).step_by(2) {
        if mask == (1 << n) - 1 {
            continue;
        }
        let crossing: u32 = x
            .edges()
            .filter(|&(_, u, v, _)| (mask >> u & 1) != (mask >> v & 1))
            .map(|e| e.3 as u32)
            .sum();
        if crossing < 4 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum weight of a perfect matching of `0..d.len()` by enumerating all
/// matchings.
pub fn brute_perfect_matching(d: &DistanceMatrix) -> Result<i64> {
    let k = d.len();
    cap("matching point count", k, BRUTE_MATCHING_CAP)?;
    if k % 2 == 1 {
        return Err(Error::OddTSet(k));
    }
    fn go(d: &DistanceMatrix, free: &mut Vec<usize>) -> i64 {
        if free.is_empty() {
            return 0;
        }
        let i = free.remove(0);
        let mut best = i64::MAX;
        for idx in 0..free.len() {
            let j = free.remove(idx);
            best = best.min(d.get(i, j) + go(d, free));
            free.insert(idx, j);
        }
        free.insert(0, i);
        best
    }
    Ok(go(d, &mut (0..k).collect()))
}

/// All-pairs distances by Floyd-Warshall; `None` entries are unreachable.
pub fn floyd_warshall(g: &WeightedGraph) -> Vec<Vec<Option<i64>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for (e, u, v) in g.graph().edges() {
        let w = g.weight(e);
        for (a, b) in [(u, v), (v, u)] {
            if d[a][b].is_none_or(|old| w < old) {
                d[a][b] = Some(w);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].is_none_or(|old| ik + kj < old) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}
