//! Half-integer points of the subtour polytope: storage, membership,
//! classification, and the square/1-path structure of their support.

use std::fmt;

use crate::deltamatroid::SquareGraph;
use crate::error::{Error, Result};
use crate::graph::{global_min_cut, EdgeId, MultiGraph, NodeId, WeightedGraph};

/// A point with entries in {0, 1/2, 1} over the edges of `K_n`.
///
/// Only the support is stored, as doubled values `x2 ∈ {1, 2}`. Support
/// edges are kept sorted by `(u, v)` with `u < v`; the position in that
/// order is the edge's id in [`HalfIntegerPoint::support_graph`] and the
/// index expected by every per-edge cost slice.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HalfIntegerPoint {
    n: usize,
    edges: Vec<(NodeId, NodeId, u8)>,
}

impl HalfIntegerPoint {
    pub fn new(n: usize) -> Self {
        HalfIntegerPoint {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, u8)>,
    {
        let mut x = HalfIntegerPoint::new(n);
        for (u, v, x2) in edges {
            x.insert(u, v, x2)?;
        }
        Ok(x)
    }

    /// Sets `x_{uv} = x2 / 2`. The pair must not already be in the support.
    pub fn insert(&mut self, u: NodeId, v: NodeId, x2: u8) -> Result<()> {
        for node in [u, v] {
            if node >= self.n {
                return Err(Error::NodeOutOfRange {
                    node,
                    node_count: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::InvalidPoint(format!("loop at node {u}")));
        }
        if !(1..=2).contains(&x2) {
            return Err(Error::InvalidPoint(format!(
                "edge ({u}, {v}) has doubled value {x2}, expected 1 or 2"
            )));
        }
        let key = (u.min(v), u.max(v));
        match self.edges.binary_search_by(|&(a, b, _)| (a, b).cmp(&key)) {
            Ok(_) => Err(Error::InvalidPoint(format!(
                "edge ({}, {}) listed twice",
                key.0, key.1
            ))),
            Err(pos) => {
                self.edges.insert(pos, (key.0, key.1, x2));
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Support edges `(id, u, v, x2)` in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, NodeId, NodeId, u8)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(e, &(u, v, x2))| (e, u, v, x2))
    }

    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        let (u, v, _) = self.edges[e];
        (u, v)
    }

    pub fn x2_of(&self, e: EdgeId) -> u8 {
        self.edges[e].2
    }

    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .ok()
    }

    /// Doubled value of `x_{uv}`; 0 off the support.
    pub fn x2(&self, u: NodeId, v: NodeId) -> u8 {
        self.edge_id(u, v).map_or(0, |e| self.edges[e].2)
    }

    pub fn support_graph(&self) -> MultiGraph {
        let mut g = MultiGraph::new(self.n);
        for &(u, v, _) in &self.edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Support graph weighted by doubled x-values.
    pub fn doubled_support(&self) -> WeightedGraph {
        let w = self.edges.iter().map(|&(_, _, x2)| x2 as i64).collect();
        WeightedGraph::new(self.support_graph(), w).expect("x2 weights are positive")
    }

    /// Support graph weighted by `costs` (one entry per support edge).
    pub fn weighted_support(&self, costs: &[i64]) -> Result<WeightedGraph> {
        self.check_costs(costs)?;
        WeightedGraph::new(self.support_graph(), costs.to_vec())
    }

    pub fn check_costs(&self, costs: &[i64]) -> Result<()> {
        if costs.len() != self.edges.len() {
            return Err(Error::CostLength {
                expected: self.edges.len(),
                got: costs.len(),
            });
        }
        if let Some((edge, &cost)) = costs.iter().enumerate().find(|(_, &c)| c < 0) {
            return Err(Error::NegativeCost { edge, cost });
        }
        Ok(())
    }

    /// `2 · (c·x)`, exact.
    pub fn cost_x2(&self, costs: &[i64]) -> Result<i64> {
        self.check_costs(costs)?;
        Ok(self
            .edges
            .iter()
            .zip(costs)
            .map(|(&(_, _, x2), &c)| c * x2 as i64)
            .sum())
    }

    /// Doubled degree `2·x(δ(v))` of every node.
    pub fn doubled_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for &(u, v, x2) in &self.edges {
            deg[u] += x2 as u32;
            deg[v] += x2 as u32;
        }
        deg
    }

    fn adjacency(&self, x2: u8) -> Vec<Vec<(NodeId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, u, v, val) in self.edges() {
            if val == x2 {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        adj
    }
}

/// Outcome of the subtour-LP membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubtourCheck {
    Valid,
    /// `2·x(δ(v)) ≠ 4`.
    Degree { node: NodeId, x2_degree: u32 },
    /// The support is disconnected; `side` is the component of node 0.
    Disconnected { side: Vec<NodeId> },
    /// A cut with `2·x(δ(S)) < 4`; `side` contains node 0.
    Cut { side: Vec<NodeId>, x2_value: i64 },
}

impl SubtourCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SubtourCheck::Valid)
    }
}

impl fmt::Display for SubtourCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes = |s: &[NodeId]| {
            s.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            SubtourCheck::Valid => write!(f, "valid"),
            SubtourCheck::Degree { node, x2_degree } => {
                write!(f, "degree node={node} x={x2_degree}/2")
            }
            SubtourCheck::Disconnected { side } => {
                write!(f, "cut x=0/2 side={{{}}}", nodes(side))
            }
            SubtourCheck::Cut { side, x2_value } => {
                write!(f, "cut x={x2_value}/2 side={{{}}}", nodes(side))
            }
        }
    }
}

/// Checks degree constraints, then the cut constraints through a global
/// minimum cut of the doubled support.
pub fn validate_subtour(x: &HalfIntegerPoint) -> SubtourCheck {
    if let Some((node, &x2_degree)) = x
        .doubled_degrees()
        .iter()
        .enumerate()
        .find(|(_, &d)| d != 4)
    {
        return SubtourCheck::Degree { node, x2_degree };
    }
    let g = x.doubled_support();
    if !g.graph().is_connected() {
        let comp = g.graph().components_with(|_| true);
        let side = (0..x.n()).filter(|&v| comp[v] == comp[0]).collect();
        return SubtourCheck::Disconnected { side };
    }
    if x.n() < 2 {
        return SubtourCheck::Valid;
    }
    let cut = global_min_cut(&g).expect("connected support with at least two nodes");
    if cut.value < 4 {
        return SubtourCheck::Cut {
            side: cut.side,
            x2_value: cut.value,
        };
    }
    SubtourCheck::Valid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    /// Half-edges form node-disjoint 4-cycles (squares), possibly none.
    Square,
    /// A square point with cubic support: every node lies on a square.
    BoydCarr,
    /// Half-edges form one cycle through all nodes.
    CarrVempala,
    OtherHalfInteger,
}

impl PointClass {
    pub fn is_square(self) -> bool {
        matches!(self, PointClass::Square | PointClass::BoydCarr)
    }

    pub fn label(self) -> &'static str {
        match self {
            PointClass::Square => "SQUARE",
            PointClass::BoydCarr => "BOYD-CARR",
            PointClass::CarrVempala => "CARR-VEMPALA",
            PointClass::OtherHalfInteger => "HALF-INTEGER",
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify(x: &HalfIntegerPoint) -> Result<PointClass> {
    let check = validate_subtour(x);
    if !check.holds() {
        return Err(Error::NotInSubtourPolytope(check.to_string()));
    }
    let half = x.adjacency(1);
    let g = x.support_graph();
    let comp = g.components_with(|e| x.x2_of(e) == 1);
    let mut comp_size = vec![0usize; x.n()];
    for &c in &comp {
        comp_size[c] += 1;
    }

    // Degrees are 4 in doubled units, so half-degree is 0, 2 or 4.
    let square = (0..x.n()).all(|v| match half[v].len() {
        0 => true,
        2 => comp_size[comp[v]] == 4,
        _ => false,
    });
    let every_node_half = (0..x.n()).all(|v| half[v].len() == 2);
    if square {
        return Ok(if every_node_half {
            PointClass::BoydCarr
        } else {
            PointClass::Square
        });
    }
    let one_cycle = x.n() > 0 && comp_size[comp[0]] == x.n();
    if every_node_half && one_cycle {
        return Ok(PointClass::CarrVempala);
    }
    Ok(PointClass::OtherHalfInteger)
}

/// A square of the support: `edges[i]` joins `nodes[i]` and `nodes[i+1 mod 4]`.
///
/// `matchings[0]` is the lexicographically smaller of the two perfect
/// matchings `{edges[0], edges[2]}` and `{edges[1], edges[3]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSquare {
    pub nodes: [NodeId; 4],
    pub edges: [EdgeId; 4],
    pub matchings: [[EdgeId; 2]; 2],
}

/// A maximal path of 1-edges. For the integral degenerate case the single
/// 1-path is closed and `nodes` repeats its first node at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePath {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportDecomposition {
    pub squares: Vec<PointSquare>,
    pub one_paths: Vec<OnePath>,
    /// Two classes per square, `2i` and `2i + 1` being the matchings of square `i`.
    pub pair_partition: Vec<[EdgeId; 2]>,
}

pub fn decompose(x: &HalfIntegerPoint) -> Result<SupportDecomposition> {
    if !classify(x)?.is_square() {
        return Err(Error::NotSquarePoint);
    }
    let half = x.adjacency(1);
    let one = x.adjacency(2);

    let mut squares = Vec::new();
    let mut on_square = vec![false; x.n()];
    for start in 0..x.n() {
        if half[start].len() != 2 || on_square[start] {
            continue;
        }
        // walk the 4-cycle from its smallest node towards the smaller neighbour
        let mut nodes = [start; 4];
        let mut edges = [0; 4];
        let (first_next, first_edge) = half[start].iter().copied().min().unwrap();
        nodes[1] = first_next;
        edges[0] = first_edge;
        for i in 1..4 {
            let cur = nodes[i];
            let &(next, e) = half[cur]
                .iter()
                .find(|&&(_, e)| e != edges[i - 1])
                .expect("square node has two half-edges");
            edges[i] = e;
            if i < 3 {
                nodes[i + 1] = next;
            }
        }
        for v in nodes {
            on_square[v] = true;
        }
        let mut a = [edges[0], edges[2]];
        let mut b = [edges[1], edges[3]];
        a.sort_unstable();
        b.sort_unstable();
        let matchings = if a <= b { [a, b] } else { [b, a] };
        squares.push(PointSquare {
            nodes,
            edges,
            matchings,
        });
    }

    let mut used = vec![false; x.edge_count()];
    let mut one_paths = Vec::new();
    for start in 0..x.n() {
        if !on_square[start] {
            continue;
        }
        let &(mut next, mut e) = one[start].first().expect("square node has a 1-edge");
        if used[e] {
            continue;
        }
        let mut path = OnePath {
            nodes: vec![start],
            edges: Vec::new(),
            closed: false,
        };
        loop {
            used[e] = true;
            path.edges.push(e);
            path.nodes.push(next);
            if on_square[next] {
                break;
            }
            let &(n2, e2) = one[next]
                .iter()
                .find(|&&(_, f)| f != e)
                .expect("inner path node has two 1-edges");
            next = n2;
            e = e2;
        }
        one_paths.push(path);
    }
    if squares.is_empty() && x.n() > 0 {
        // integral point: the 1-edges form one Hamiltonian cycle
        let mut path = OnePath {
            nodes: vec![0],
            edges: Vec::new(),
            closed: true,
        };
        let (mut cur, mut prev_edge) = (0, usize::MAX);
        loop {
            let &(next, e) = one[cur]
                .iter()
                .filter(|&&(_, e)| e != prev_edge)
                .min_by_key(|&&(_, e)| e)
                .expect("integral point node has two 1-edges");
            path.edges.push(e);
            path.nodes.push(next);
            if next == 0 {
                break;
            }
            cur = next;
            prev_edge = e;
        }
        one_paths.push(path);
    }

    let pair_partition = squares
        .iter()
        .flat_map(|s| s.matchings.iter().copied())
        .collect();
    Ok(SupportDecomposition {
        squares,
        one_paths,
        pair_partition,
    })
}

/// The square graph obtained by replacing every 1-path with one `M` edge.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub square_graph: SquareGraph,
    /// Cost per square-graph edge; `M` edges carry their path's total.
    pub costs: Vec<i64>,
    /// Point node of each square-graph node.
    pub node_of: Vec<NodeId>,
    /// Support edges (in path order) that each square-graph edge stands for.
    pub expansion: Vec<Vec<EdgeId>>,
    pub decomposition: SupportDecomposition,
}

/// Square-graph node `4i + j` is corner `j` of square `i`; square edges come
/// first (`4i + j` joins corners `j` and `j+1`), then one `M` edge per 1-path.
pub fn contract_one_paths(x: &HalfIntegerPoint, costs: &[i64]) -> Result<Contraction> {
    x.check_costs(costs)?;
    let dec = decompose(x)?;
    if dec.squares.is_empty() {
        return Err(Error::IntegralPoint);
    }
    let s = dec.squares.len();
    let mut corner_of = vec![usize::MAX; x.n()];
    let mut node_of = Vec::with_capacity(4 * s);
    for (i, sq) in dec.squares.iter().enumerate() {
        for (j, &v) in sq.nodes.iter().enumerate() {
            corner_of[v] = 4 * i + j;
            node_of.push(v);
        }
    }
    let mut g = MultiGraph::new(4 * s);
    let mut graph_costs = Vec::new();
    let mut expansion = Vec::new();
    let mut square_edges = Vec::with_capacity(s);
    for (i, sq) in dec.squares.iter().enumerate() {
        let mut ids = [0; 4];
        for j in 0..4 {
            ids[j] = g.add_edge(4 * i + j, 4 * i + (j + 1) % 4);
            graph_costs.push(costs[sq.edges[j]]);
            expansion.push(vec![sq.edges[j]]);
        }
        square_edges.push(ids);
    }
    for p in &dec.one_paths {
        let a = corner_of[p.nodes[0]];
        let b = corner_of[*p.nodes.last().unwrap()];
        g.add_edge(a, b);
        graph_costs.push(p.edges.iter().map(|&e| costs[e]).sum());
        expansion.push(p.edges.clone());
    }
    let square_graph = SquareGraph::new(g, square_edges)?;
    Ok(Contraction {
        square_graph,
        costs: graph_costs,
        node_of,
        expansion,
        decomposition: dec,
    })
}
