//! Matroid oracles, weighted matroid intersection, and rainbow 1-trees.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, NodeId, UnionFind};
use crate::halfpoint::{decompose, HalfIntegerPoint};

/// Independence oracle over the ground set `0..ground_size()`.
pub trait Matroid {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, set: &[usize]) -> bool;

    /// Rank of the whole ground set, by the greedy algorithm.
    fn rank(&self) -> usize {
        let mut basis = Vec::new();
        for x in 0..self.ground_size() {
            basis.push(x);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        basis.len()
    }
}

/// Cycle matroid of a multigraph; loops are dependent.
#[derive(Debug, Clone)]
pub struct GraphicMatroid<'a> {
    graph: &'a MultiGraph,
}

impl<'a> GraphicMatroid<'a> {
    pub fn new(graph: &'a MultiGraph) -> Self {
        GraphicMatroid { graph }
    }
}

impl Matroid for GraphicMatroid<'_> {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.graph.node_count());
        set.iter().all(|&e| {
            let (u, v) = self.graph.endpoints(e);
            uf.union(u, v)
        })
    }
}

/// 1-tree matroid: at most two edges at the special node, and the remaining
/// edges a forest on the other nodes. Its bases are the 1-trees.
#[derive(Debug, Clone)]
pub struct OneTreeMatroid<'a> {
    graph: &'a MultiGraph,
    special: NodeId,
}

impl<'a> OneTreeMatroid<'a> {
    pub fn new(graph: &'a MultiGraph, special: NodeId) -> Self {
        OneTreeMatroid { graph, special }
    }
}

impl Matroid for OneTreeMatroid<'_> {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut at_special = 0;
        let mut uf = UnionFind::new(self.graph.node_count());
        for &e in set {
            let (u, v) = self.graph.endpoints(e);
            if u == v {
                return false;
            }
            if u == self.special || v == self.special {
                at_special += 1;
                if at_special > 2 {
                    return false;
                }
            } else if !uf.union(u, v) {
                return false;
            }
        }
        true
    }
}

/// Partition matroid allowing at most one element per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    class_of: Vec<usize>,
    class_count: usize,
}

impl PartitionMatroid {
    pub fn new(class_of: Vec<usize>, class_count: usize) -> Result<Self> {
        if let Some(&c) = class_of.iter().find(|&&c| c >= class_count) {
            return Err(Error::InvalidArgument(format!(
                "class {c} out of range for {class_count} classes"
            )));
        }
        Ok(PartitionMatroid {
            class_of,
            class_count,
        })
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.class_of.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut taken = vec![false; self.class_count];
        set.iter()
            .all(|&x| !std::mem::replace(&mut taken[self.class_of[x]], true))
    }

    /// The declared class count: a basis takes one element from every
    /// class, so an empty class leaves the matroid without a basis of that
    /// size and intersection reports infeasibility.
    fn rank(&self) -> usize {
        self.class_count
    }
}

/// Minimum-cost common basis of two matroids on the same ground set, or
/// `None` when the ranks differ or no common basis exists.
///
/// Grows a common independent set one element at a time along shortest
/// augmenting paths in the exchange graph. Elements outside the current set
/// weigh `cost`, elements inside weigh `-cost`, and paths are compared by
/// (total weight, arc count), which keeps every intermediate set of minimum
/// cost for its size.
pub fn weighted_matroid_intersection<M1, M2>(m1: &M1, m2: &M2, cost: &[i64]) -> Result<Option<Vec<usize>>>
where
    M1: Matroid + ?Sized,
    M2: Matroid + ?Sized,
{
    let n = m1.ground_size();
    if m2.ground_size() != n {
        return Err(Error::InvalidArgument(format!(
            "ground sets differ: {n} vs {}",
            m2.ground_size()
        )));
    }
    if cost.len() != n {
        return Err(Error::CostLength {
            expected: n,
            got: cost.len(),
        });
    }
    let rank = m1.rank();
    if m2.rank() != rank {
        return Ok(None);
    }
    let mut in_set = vec![false; n];
    let mut current: Vec<usize> = Vec::new();
    while current.len() < rank {
        match shortest_augmenting_path(m1, m2, cost, &current, &in_set) {
            Some(path) => {
                for x in path {
                    in_set[x] = !in_set[x];
                }
                current = (0..n).filter(|&x| in_set[x]).collect();
            }
            None => return Ok(None),
        }
    }
    Ok(Some(current))
}

fn shortest_augmenting_path<M1, M2>(
    m1: &M1,
    m2: &M2,
    cost: &[i64],
    current: &[usize],
    in_set: &[bool],
) -> Option<Vec<usize>>
where
    M1: Matroid + ?Sized,
    M2: Matroid + ?Sized,
{
    let n = in_set.len();
    let outside: Vec<usize> = (0..n).filter(|&x| !in_set[x]).collect();
    let mut with = current.to_vec();
    let mut sources = vec![false; n];
    let mut sinks = vec![false; n];
    for &x in &outside {
        with.push(x);
        sources[x] = m1.is_independent(&with);
        sinks[x] = m2.is_independent(&with);
        with.pop();
    }
    // arcs y -> x when I - y + x ∈ M1, x -> y when I - y + x ∈ M2
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut swapped = current.to_vec();
    for (pos, &y) in current.iter().enumerate() {
        for &x in &outside {
            swapped[pos] = x;
            if m1.is_independent(&swapped) {
                out_arcs[y].push(x);
            }
            if m2.is_independent(&swapped) {
                out_arcs[x].push(y);
            }
        }
        swapped[pos] = y;
    }
    let weight = |x: usize| if in_set[x] { -cost[x] } else { cost[x] };

    // Bellman–Ford on node weights, lexicographic (weight, arcs)
    let mut dist: Vec<Option<(i64, usize)>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for &x in &outside {
        if sources[x] {
            dist[x] = Some((weight(x), 0));
        }
    }
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            let Some((du, hu)) = dist[u] else { continue };
            for &v in &out_arcs[u] {
                let cand = (du + weight(v), hu + 1);
                if dist[v].is_none_or(|old| cand < old) {
                    dist[v] = Some(cand);
                    pred[v] = Some(u);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let end = (0..n)
        .filter(|&x| sinks[x] && dist[x].is_some())
        .min_by_key(|&x| (dist[x].unwrap(), x))?;
    let mut path = vec![end];
    let mut v = end;
    while let Some(p) = pred[v] {
        if dist[v].unwrap().1 == 0 {
            break;
        }
        path.push(p);
        v = p;
    }
    Some(path)
}

/// A 1-tree of the support containing every 1-edge and exactly one edge of
/// each square matching pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowOneTree {
    /// Support edge ids, sorted.
    pub edges: Vec<EdgeId>,
    pub cost: i64,
}

/// Minimum-cost rainbow 1-tree of a square point, with node 0 as the special
/// node of the 1-tree.
pub fn rainbow_one_tree(x: &HalfIntegerPoint, costs: &[i64]) -> Result<RainbowOneTree> {
    x.check_costs(costs)?;
    let dec = decompose(x)?;
    if dec.squares.is_empty() {
        return Err(Error::IntegralPoint);
    }
    let g = x.support_graph();
    let mut class_of = vec![usize::MAX; x.edge_count()];
    for (c, pair) in dec.pair_partition.iter().enumerate() {
        for &e in pair {
            class_of[e] = c;
        }
    }
    let mut classes = dec.pair_partition.len();
    for c in class_of.iter_mut().filter(|c| **c == usize::MAX) {
        *c = classes;
        classes += 1;
    }
    let partition = PartitionMatroid::new(class_of, classes)?;
    let one_tree = OneTreeMatroid::new(&g, 0);
    let edges = weighted_matroid_intersection(&one_tree, &partition, costs)?.ok_or_else(|| {
        Error::InvariantViolation("no rainbow 1-tree exists for a valid square point".into())
    })?;
    let cost = edges.iter().map(|&e| costs[e]).sum();
    Ok(RainbowOneTree { edges, cost })
}

/// Whether `edges` is a 1-tree of `g` with special node `special`.
pub fn is_one_tree(g: &MultiGraph, special: NodeId, edges: &[EdgeId]) -> bool {
    let n = g.node_count();
    if n < 3 || edges.len() != n {
        return false;
    }
    let at_special = edges
        .iter()
        .filter(|&&e| {
            let (u, v) = g.endpoints(e);
            u == special || v == special
        })
        .count();
    at_special == 2 && OneTreeMatroid::new(g, special).is_independent(edges)
}
