//! Eulerian trails of 4-regular multigraphs that avoid one forbidden
//! bitransition per node.
//!
//! Each node is blown up into a square whose corners carry the node's four
//! darts, with the forbidden pairs on the diagonals. The original edges
//! become the matching `M`, the two allowed bitransitions become the two
//! perfect matchings of the square, and a Hamiltonian cycle through `M`
//! reads back as an allowed Eulerian trail.

use crate::deltamatroid::{ham_min_cost, SquareGraph};
use crate::error::{Error, Result};
use crate::graph::{Dart, MultiGraph, NodeId};

/// A connected 4-regular multigraph with a forbidden pairing of the darts
/// at each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitransitionSystem {
    graph: MultiGraph,
    forbidden: Vec<[[Dart; 2]; 2]>,
}

impl BitransitionSystem {
    /// Checks that every node has four darts and that `forbidden[v]` pairs
    /// exactly those four. Connectivity is checked by [`find_trail`].
    pub fn new(graph: MultiGraph, forbidden: Vec<[[Dart; 2]; 2]>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidBitransitionSystem(msg));
        if forbidden.len() != graph.node_count() {
            return bad(format!(
                "{} forbidden pairings for {} nodes",
                forbidden.len(),
                graph.node_count()
            ));
        }
        for (v, pairs) in forbidden.iter().enumerate() {
            if graph.degree(v) != 4 {
                return bad(format!("not 4-regular: node {v} has degree {}", graph.degree(v)));
            }
            let mut listed: Vec<Dart> = pairs.iter().flatten().copied().collect();
            if listed.iter().any(|d| d.edge >= graph.edge_count() || d.end > 1) {
                return bad(format!("forbidden pairing at node {v} names an unknown dart"));
            }
            listed.sort_unstable();
            if listed != graph.darts_at(v) {
                return bad(format!(
                    "forbidden pairing at node {v} is not a pairing of its darts"
                ));
            }
        }
        Ok(BitransitionSystem { graph, forbidden })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn forbidden(&self, v: NodeId) -> [[Dart; 2]; 2] {
        self.forbidden[v]
    }
}

/// Closed Eulerian trail as a dart sequence: for step `i`, `darts[2i]` is the
/// dart where the edge is entered and `darts[2i + 1]` its twin where it is
/// left, so `darts[2i + 1]` and `darts[2i + 2]` form a transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trail {
    pub darts: Vec<Dart>,
}

impl Trail {
    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }
}

/// Blown-up square graph of a system; node `4v + j` is corner `j` of node
/// `v`, square edges get ids `4v + j`, and edge `e` becomes `M` edge `4n + e`.
pub(crate) struct BlowUp {
    pub(crate) square_graph: SquareGraph,
    /// Dart attached to each corner.
    pub(crate) corner_dart: Vec<Dart>,
    /// Corner holding each dart, indexed by `2·edge + end`.
    pub(crate) dart_corner: Vec<usize>,
}

pub(crate) fn blow_up(sys: &BitransitionSystem) -> Result<BlowUp> {
    let g = &sys.graph;
    let n = g.node_count();
    let mut corner_dart = Vec::with_capacity(4 * n);
    let mut dart_corner = vec![0; 2 * g.edge_count()];
    let mut sg = MultiGraph::new(4 * n);
    let mut squares = Vec::with_capacity(n);
    for v in 0..n {
        let [[a, b], [c, d]] = sys.forbidden[v];
        // forbidden pairs (a, b) and (c, d) sit on the diagonals
        for (j, dart) in [a, c, b, d].into_iter().enumerate() {
            corner_dart.push(dart);
            dart_corner[2 * dart.edge + dart.end as usize] = 4 * v + j;
        }
        let mut ids = [0; 4];
        for (j, id) in ids.iter_mut().enumerate() {
            *id = sg.add_edge(4 * v + j, 4 * v + (j + 1) % 4);
        }
        squares.push(ids);
    }
    for e in 0..g.edge_count() {
        sg.add_edge(dart_corner[2 * e], dart_corner[2 * e + 1]);
    }
    let square_graph = SquareGraph::new(sg, squares).map_err(|err| match err {
        Error::NotSquareGraph(msg) if msg.contains("disconnected") => Error::Disconnected,
        other => Error::InvariantViolation(format!("blow-up failed: {other}")),
    })?;
    Ok(BlowUp {
        square_graph,
        corner_dart,
        dart_corner,
    })
}

impl BlowUp {
    /// Reads a Hamiltonian cycle of the blow-up (given by its per-square
    /// choice) back as a trail on the original graph, starting along edge 0
    /// from its end 0.
    pub(crate) fn trail_of_choice(&self, choice: &[u8]) -> Trail {
        let sg = &self.square_graph;
        let n_orig = sg.square_count();
        let m = sg.graph().edge_count() - 4 * n_orig;
        // partner corner inside the square under the chosen matching
        let mut partner = vec![0usize; 4 * n_orig];
        for (v, &k) in choice.iter().enumerate() {
            for e in sg.squares()[v].matching(k) {
                let (a, b) = sg.graph().endpoints(e);
                partner[a] = b;
                partner[b] = a;
            }
        }
        let mut darts = Vec::with_capacity(2 * m);
        let mut dart = Dart::new(0, 0);
        for _ in 0..m {
            darts.push(dart);
            let out = dart.twin();
            darts.push(out);
            let corner = partner[self.dart_corner[2 * out.edge + out.end as usize]];
            dart = self.corner_dart[corner];
        }
        Trail { darts }
    }
}

/// Finds an Eulerian trail that avoids every forbidden bitransition.
pub fn find_trail(sys: &BitransitionSystem) -> Result<Trail> {
    if !sys.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if sys.graph.edge_count() == 0 {
        return Ok(Trail { darts: Vec::new() });
    }
    let blow = blow_up(sys)?;
    let unit = vec![1; blow.square_graph.graph().edge_count()];
    let ham = ham_min_cost(&blow.square_graph, &unit)?;
    Ok(blow.trail_of_choice(&ham.choice))
}

/// True iff `trail` is a closed Eulerian trail of the system's graph whose
/// transitions at every node differ from the forbidden bitransition.
pub fn verify_trail(sys: &BitransitionSystem, trail: &Trail) -> bool {
    let g = &sys.graph;
    let m = g.edge_count();
    if trail.darts.len() != 2 * m {
        return false;
    }
    if m == 0 {
        return true;
    }
    if trail.darts.iter().any(|d| d.edge >= m || d.end > 1) {
        return false;
    }
    let mut seen = vec![false; m];
    for step in trail.darts.chunks(2) {
        let (enter, leave) = (step[0], step[1]);
        if leave != enter.twin() || seen[enter.edge] {
            return false;
        }
        seen[enter.edge] = true;
    }
    // transitions: (darts[2i+1], darts[2i+2]) cyclically
    let mut used: Vec<Vec<[Dart; 2]>> = vec![Vec::new(); g.node_count()];
    for i in 0..m {
        let a = trail.darts[2 * i + 1];
        let b = trail.darts[(2 * i + 2) % (2 * m)];
        let v = g.dart_node(a);
        if g.dart_node(b) != v {
            return false;
        }
        used[v].push(sorted_pair(a, b));
    }
    (0..g.node_count()).all(|v| {
        let mut u = used[v].clone();
        u.sort_unstable();
        let mut f = sys.forbidden[v].map(|[a, b]| sorted_pair(a, b));
        f.sort_unstable();
        u.len() == 2 && u != f
    })
}

fn sorted_pair(a: Dart, b: Dart) -> [Dart; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}
