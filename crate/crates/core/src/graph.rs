//! Multigraph substrate shared by every other module.
//!
//! Edges are identified by dense ids in insertion order; each edge has two
//! darts, `(edge, 0)` at its first endpoint and `(edge, 1)` at its second.
//! Loops are legal and contribute both darts to the same node. Iteration is
//! always by ascending edge id, then by end.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

/// One end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: u8,
}

impl Dart {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        debug_assert!(end < 2);
        Dart { edge, end }
    }

    /// The other dart of the same edge.
    pub fn twin(self) -> Self {
        Dart {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

impl std::fmt::Display for Dart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.edge, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    node_count: usize,
    edges: Vec<[NodeId; 2]>,
    incidence: Vec<Vec<Dart>>,
}

impl MultiGraph {
    pub fn new(node_count: usize) -> Self {
        MultiGraph {
            node_count,
            edges: Vec::new(),
            incidence: vec![Vec::new(); node_count],
        }
    }

    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = MultiGraph::new(node_count);
        for (u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Adds an edge and returns its id.
    ///
    /// Panics if either endpoint is out of range.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> EdgeId {
        assert!(
            u < self.node_count && v < self.node_count,
            "edge ({u}, {v}) out of range for {} nodes",
            self.node_count
        );
        let id = self.edges.len();
        self.edges.push([u, v]);
        self.incidence[u].push(Dart::new(id, 0));
        self.incidence[v].push(Dart::new(id, 1));
        id
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        let [u, v] = self.edges[e];
        (u, v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, NodeId, NodeId)> + '_ {
        self.edges.iter().enumerate().map(|(e, &[u, v])| (e, u, v))
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [u, v] = self.edges[e];
        u == v
    }

    /// Node at which the dart sits.
    pub fn dart_node(&self, d: Dart) -> NodeId {
        self.edges[d.edge][d.end as usize]
    }

    /// Darts at `v`, ordered by edge id then end.
    pub fn darts_at(&self, v: NodeId) -> &[Dart] {
        &self.incidence[v]
    }

    /// Degree counting loops twice.
    pub fn degree(&self, v: NodeId) -> usize {
        self.incidence[v].len()
    }

    /// Endpoint of `e` opposite to `v`.
    pub fn opposite(&self, e: EdgeId, v: NodeId) -> NodeId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_with(|_| true)
    }

    /// Connectivity of the spanning subgraph made of the edges accepted by `keep`.
    pub fn is_connected_with<F: Fn(EdgeId) -> bool>(&self, keep: F) -> bool {
        if self.node_count <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(self.node_count);
        let mut parts = self.node_count;
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            if keep(e) && uf.union(u, v) {
                parts -= 1;
                if parts == 1 {
                    return true;
                }
            }
        }
        parts == 1
    }

    /// Component label per node for the edges accepted by `keep`; labels are
    /// the smallest node id of each component.
    pub fn components_with<F: Fn(EdgeId) -> bool>(&self, keep: F) -> Vec<NodeId> {
        let mut uf = UnionFind::new(self.node_count);
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            if keep(e) {
                uf.union(u, v);
            }
        }
        let mut label = vec![usize::MAX; self.node_count];
        let mut out = vec![0; self.node_count];
        for v in 0..self.node_count {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = v;
            }
            out[v] = label[r];
        }
        out
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// A multigraph with a nonnegative integer weight on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: MultiGraph,
    weight: Vec<i64>,
}

impl WeightedGraph {
    pub fn new(graph: MultiGraph, weight: Vec<i64>) -> Result<Self> {
        if weight.len() != graph.edge_count() {
            return Err(Error::CostLength {
                expected: graph.edge_count(),
                got: weight.len(),
            });
        }
        if let Some((edge, &cost)) = weight.iter().enumerate().find(|(_, &w)| w < 0) {
            return Err(Error::NegativeCost { edge, cost });
        }
        Ok(WeightedGraph { graph, weight })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn weight(&self, e: EdgeId) -> i64 {
        self.weight[e]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weight
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Single-source shortest paths by Dijkstra.
    pub fn shortest_paths(&self, source: NodeId) -> ShortestPathTree {
        let n = self.graph.node_count();
        let mut dist: Vec<Option<i64>> = vec![None; n];
        let mut pred: Vec<Option<Dart>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0);
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            for &dart in self.graph.darts_at(v) {
                let w = self.graph.dart_node(dart.twin());
                if done[w] {
                    continue;
                }
                let nd = d + self.weight[dart.edge];
                if dist[w].is_none_or(|old| nd < old) {
                    dist[w] = Some(nd);
                    pred[w] = Some(dart.twin());
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        ShortestPathTree { source, dist, pred }
    }
}

/// Result of a single-source shortest path computation.
///
/// `pred[v]` is the dart at `v` of the last edge on the path from the source.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    pub source: NodeId,
    pub dist: Vec<Option<i64>>,
    pub pred: Vec<Option<Dart>>,
}

impl ShortestPathTree {
    /// Edges of the tree path from the source to `target`, source side first.
    pub fn path_edges(&self, graph: &MultiGraph, target: NodeId) -> Option<Vec<EdgeId>> {
        self.dist[target]?;
        let mut path = Vec::new();
        let mut v = target;
        while v != self.source {
            let d = self.pred[v]?;
            path.push(d.edge);
            v = graph.dart_node(d.twin());
        }
        path.reverse();
        Some(path)
    }
}

/// Dense symmetric matrix of nonnegative distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<i64>,
}

impl DistanceMatrix {
    pub fn zeros(n: usize) -> Self {
        DistanceMatrix { n, d: vec![0; n * n] }
    }

    /// Builds the matrix from `f(i, j)` for `i < j`, mirrored.
    pub fn from_fn<F: FnMut(usize, usize) -> i64>(n: usize, mut f: F) -> Self {
        let mut m = DistanceMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.d[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.d[i * self.n + j] = value;
        self.d[j * self.n + i] = value;
    }

    pub fn max_entry(&self) -> i64 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Cost of the closed tour visiting `order` cyclically.
    pub fn cycle_cost(&self, order: &[NodeId]) -> i64 {
        if order.len() < 2 {
            return 0;
        }
        order
            .iter()
            .zip(order.iter().cycle().skip(1))
            .map(|(&a, &b)| self.get(a, b))
            .sum()
    }
}

/// Cyclic node order of `edges` when they form a Hamiltonian cycle of `g`,
/// starting at node 0 and leaving it along its lower edge id.
pub fn cycle_order(g: &MultiGraph, edges: &[EdgeId]) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    if n == 0 || edges.len() != n {
        return None;
    }
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        if u == v {
            return None;
        }
        at[u].push(e);
        at[v].push(e);
    }
    if at.iter().any(|l| l.len() != 2) {
        return None;
    }
    let mut order = Vec::with_capacity(n);
    let (mut cur, mut via) = (0, *at[0].iter().min().unwrap());
    loop {
        order.push(cur);
        cur = g.opposite(via, cur);
        if cur == 0 {
            break;
        }
        via = if at[cur][0] == via { at[cur][1] } else { at[cur][0] };
        if order.len() > n {
            return None;
        }
    }
    (order.len() == n).then_some(order)
}

/// Outcome of [`global_min_cut`]: the cut value and the side holding node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    pub value: i64,
    pub side: Vec<NodeId>,
}

/// Global minimum cut by Stoer–Wagner.
///
/// Parallel edges are summed and loops ignored. The witness side is the
/// shore containing node 0, sorted.
pub fn global_min_cut(g: &WeightedGraph) -> Result<MinCut> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            got: n,
        });
    }
    if !g.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let mut w = vec![vec![0i64; n]; n];
    for (e, u, v) in g.graph().edges() {
        if u != v {
            w[u][v] += g.weight(e);
            w[v][u] += g.weight(e);
        }
    }
    let mut groups: Vec<Vec<NodeId>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<NodeId> = (0..n).collect();
    let mut best: Option<(i64, Vec<NodeId>)> = None;

    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0i64; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let sel = active
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .max_by(|&a, &b| key[a].cmp(&key[b]).then(b.cmp(&a)))
                .expect("an unadded node remains");
            added[sel] = true;
            if step + 1 == active.len() {
                last = sel;
            } else {
                prev = sel;
                for &v in &active {
                    if !added[v] {
                        key[v] += w[sel][v];
                    }
                }
            }
        }
        let cut = key[last];
        if best.as_ref().is_none_or(|(b, _)| cut < *b) {
            best = Some((cut, groups[last].clone()));
        }
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for v in 0..n {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        active.retain(|&v| v != last);
    }

    let (value, side) = best.expect("at least one phase runs");
    let mut in_side = vec![false; n];
    for &v in &side {
        in_side[v] = true;
    }
    let side: Vec<NodeId> = (0..n).filter(|&v| in_side[v] == in_side[0]).collect();
    Ok(MinCut { value, side })
}

/// All-pairs shortest path distances.
pub fn metric_closure(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let n = g.node_count();
    let mut m = DistanceMatrix::zeros(n);
    for s in 0..n {
        let tree = g.shortest_paths(s);
        for t in 0..n {
            m.d[s * n + t] = tree.dist[t].ok_or(Error::Disconnected)?;
        }
    }
    Ok(m)
}

/// Closed Eulerian circuit starting at `start`, taking the lowest unused dart
/// first at every node (Hierholzer). Returns the leaving dart of each step.
pub fn eulerian_circuit(g: &MultiGraph, start: NodeId) -> Result<Vec<Dart>> {
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    if start >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: start,
            node_count: g.node_count(),
        });
    }
    if let Some(v) = (0..g.node_count()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::InvariantViolation(format!(
            "node {v} has odd degree; no Eulerian circuit"
        )));
    }
    let mut used = vec![false; g.edge_count()];
    let mut ptr = vec![0usize; g.node_count()];
    let mut stack: Vec<(NodeId, Option<Dart>)> = vec![(start, None)];
    let mut circuit = Vec::with_capacity(g.edge_count());
    while let Some(&(v, via)) = stack.last() {
        let darts = g.darts_at(v);
        while ptr[v] < darts.len() && used[darts[ptr[v]].edge] {
            ptr[v] += 1;
        }
        if let Some(&d) = darts.get(ptr[v]) {
            used[d.edge] = true;
            stack.push((g.dart_node(d.twin()), Some(d)));
        } else {
            stack.pop();
            if let Some(d) = via {
                circuit.push(d);
            }
        }
    }
    if circuit.len() != g.edge_count() {
        return Err(Error::Disconnected);
    }
    circuit.reverse();
    Ok(circuit)
}
