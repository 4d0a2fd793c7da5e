//! Square graphs, their delta-matroid of Hamiltonian cycles, the general
//! delta-matroid greedy, and HAM.
//!
//! A square graph is a cubic, 2-edge-connected multigraph together with a
//! perfect matching `M` whose complement is a disjoint union of 4-cycles.
//! Every Hamiltonian cycle containing `M` keeps exactly one of the two
//! perfect matchings of each square, so cycles are described by a choice
//! vector with one entry in {0, 1} per square.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{cycle_order, EdgeId, MultiGraph, NodeId};

/// One square: `edges[j]` joins `nodes[j]` and `nodes[(j + 1) % 4]`.
/// Matching 0 is `{edges[0], edges[2]}`, matching 1 is `{edges[1], edges[3]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCycle {
    pub nodes: [NodeId; 4],
    pub edges: [EdgeId; 4],
}

impl SquareCycle {
    pub fn matching(&self, k: u8) -> [EdgeId; 2] {
        match k {
            0 => [self.edges[0], self.edges[2]],
            _ => [self.edges[1], self.edges[3]],
        }
    }

    /// Index of the lexicographically smaller matching (sorted edge ids).
    pub fn preferred_matching(&self) -> u8 {
        let mut a = self.matching(0);
        let mut b = self.matching(1);
        a.sort_unstable();
        b.sort_unstable();
        if a <= b {
            0
        } else {
            1
        }
    }

    /// Which matching contains `e`, if `e` is an edge of this square.
    pub fn matching_of(&self, e: EdgeId) -> Option<u8> {
        self.edges
            .iter()
            .position(|&f| f == e)
            .map(|pos| (pos % 2) as u8)
    }
}

#[derive(Debug, Clone)]
pub struct SquareGraph {
    graph: MultiGraph,
    squares: Vec<SquareCycle>,
    square_of_edge: Vec<Option<usize>>,
    reference: Vec<EdgeId>,
}

impl SquareGraph {
    /// Builds a square graph from a multigraph and the edge lists of its
    /// squares (consecutive edges sharing a node). All remaining edges form `M`.
    pub fn new(graph: MultiGraph, squares: Vec<[EdgeId; 4]>) -> Result<Self> {
        let bad = |msg: String| Err(Error::NotSquareGraph(msg));
        let n = graph.node_count();
        let m = graph.edge_count();
        let mut square_of_edge = vec![None; m];
        let mut square_of_node = vec![None; n];
        let mut cycles = Vec::with_capacity(squares.len());
        for (i, edges) in squares.iter().enumerate() {
            if let Some(&e) = edges.iter().find(|&&e| e >= m) {
                return bad(format!("square {i} names unknown edge {e}"));
            }
            let Some(nodes) = square_nodes(&graph, edges) else {
                return bad(format!("square {i} is not a 4-cycle"));
            };
            for &e in edges {
                if square_of_edge[e].replace(i).is_some() {
                    return bad(format!("edge {e} lies in two squares"));
                }
            }
            for v in nodes {
                if square_of_node[v].replace(i).is_some() {
                    return bad(format!("node {v} lies in two squares"));
                }
            }
            cycles.push(SquareCycle {
                nodes,
                edges: *edges,
            });
        }
        for v in 0..n {
            if square_of_node[v].is_none() {
                return bad(format!("node {v} is on no square"));
            }
            if graph.degree(v) != 3 {
                return bad(format!("node {v} has degree {}", graph.degree(v)));
            }
        }
        let mut m_at = vec![0usize; n];
        for (e, u, v) in graph.edges() {
            if square_of_edge[e].is_none() {
                if u == v {
                    return bad(format!("matching edge {e} is a loop"));
                }
                m_at[u] += 1;
                m_at[v] += 1;
            }
        }
        if let Some(v) = (0..n).find(|&v| m_at[v] != 1) {
            return bad(format!("node {v} meets {} matching edges", m_at[v]));
        }
        if !graph.is_connected() {
            return bad("graph is disconnected".into());
        }
        // square edges lie on cycles, so only matching edges can be bridges
        for e in 0..m {
            if square_of_edge[e].is_none() && !graph.is_connected_with(|f| f != e) {
                return bad(format!("matching edge {e} is a bridge"));
            }
        }
        let reference = cycles
            .iter()
            .map(|c| *c.edges.iter().min().unwrap())
            .collect();
        Ok(SquareGraph {
            graph,
            squares: cycles,
            square_of_edge,
            reference,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn squares(&self) -> &[SquareCycle] {
        &self.squares
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn is_m_edge(&self, e: EdgeId) -> bool {
        self.square_of_edge[e].is_none()
    }

    pub fn m_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.graph.edge_count()).filter(|&e| self.is_m_edge(e))
    }

    pub fn square_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.square_of_edge[e]
    }

    /// Reference edge of every square: its lowest edge id.
    pub fn reference_set(&self) -> &[EdgeId] {
        &self.reference
    }

    /// Matching of square `i` that contains its reference edge.
    pub fn reference_matching(&self, i: usize) -> u8 {
        self.squares[i]
            .matching_of(self.reference[i])
            .expect("reference edge lies in its square")
    }

    /// Edge mask for a partial choice: `None` keeps both matchings.
    fn kept_mask(&self, choice: &[Option<u8>]) -> Vec<bool> {
        let mut keep = vec![true; self.graph.edge_count()];
        for (sq, c) in self.squares.iter().zip(choice) {
            if let Some(k) = c {
                for e in sq.matching(1 - k) {
                    keep[e] = false;
                }
            }
        }
        keep
    }

    fn connected_under(&self, choice: &[Option<u8>]) -> bool {
        let keep = self.kept_mask(choice);
        self.graph.is_connected_with(|e| keep[e])
    }

    /// Whether the full choice yields a Hamiltonian cycle.
    pub fn choice_is_hamiltonian(&self, choice: &[u8]) -> bool {
        let partial: Vec<Option<u8>> = choice.iter().map(|&k| Some(k)).collect();
        choice.len() == self.squares.len() && self.connected_under(&partial)
    }

    /// Edges (sorted) of `M` plus the chosen matching of every square.
    pub fn cycle_edges(&self, choice: &[u8]) -> Vec<EdgeId> {
        let mut edges: Vec<EdgeId> = self.m_edges().collect();
        for (sq, &k) in self.squares.iter().zip(choice) {
            edges.extend(sq.matching(k));
        }
        edges.sort_unstable();
        edges
    }

    /// Total cost of each square's two matchings.
    pub fn matching_costs(&self, costs: &[i64]) -> Vec<[i64; 2]> {
        self.squares
            .iter()
            .map(|sq| {
                let c = |k| sq.matching(k).iter().map(|&e| costs[e]).sum::<i64>();
                [c(0), c(1)]
            })
            .collect()
    }

    pub(crate) fn check_costs(&self, costs: &[i64]) -> Result<()> {
        if costs.len() != self.graph.edge_count() {
            return Err(Error::CostLength {
                expected: self.graph.edge_count(),
                got: costs.len(),
            });
        }
        Ok(())
    }
}

fn square_nodes(g: &MultiGraph, edges: &[EdgeId; 4]) -> Option<[NodeId; 4]> {
    let (a0, b0) = g.endpoints(edges[0]);
    let (a1, b1) = g.endpoints(edges[1]);
    let n1 = if b0 == a1 || b0 == b1 {
        b0
    } else if a0 == a1 || a0 == b1 {
        a0
    } else {
        return None;
    };
    let n0 = g.opposite(edges[0], n1);
    let n2 = g.opposite(edges[1], n1);
    let (a2, b2) = g.endpoints(edges[2]);
    if a2 != n2 && b2 != n2 {
        return None;
    }
    let n3 = g.opposite(edges[2], n2);
    let (a3, b3) = g.endpoints(edges[3]);
    if !((a3 == n3 && b3 == n0) || (a3 == n0 && b3 == n3)) {
        return None;
    }
    let nodes = [n0, n1, n2, n3];
    for i in 0..4 {
        for j in i + 1..4 {
            if nodes[i] == nodes[j] {
                return None;
            }
        }
    }
    Some(nodes)
}

/// Extendability oracle of a delta-matroid on ground set `0..ground_size()`.
pub trait DeltaMatroidOracle {
    fn ground_size(&self) -> usize;

    /// Is there a member `D` with `forced_in ⊆ D` and `D ∩ forced_out = ∅`?
    fn is_extendable(&self, forced_in: &BTreeSet<usize>, forced_out: &BTreeSet<usize>) -> bool;
}

/// A delta-matroid given by the explicit list of its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitDeltaMatroid {
    ground_size: usize,
    family: Vec<BTreeSet<usize>>,
}

impl ExplicitDeltaMatroid {
    pub fn new(ground_size: usize, family: Vec<BTreeSet<usize>>) -> Result<Self> {
        if let Some(&x) = family.iter().flatten().find(|&&x| x >= ground_size) {
            return Err(Error::InvalidArgument(format!(
                "element {x} outside ground set of size {ground_size}"
            )));
        }
        Ok(ExplicitDeltaMatroid {
            ground_size,
            family,
        })
    }

    pub fn family(&self) -> &[BTreeSet<usize>] {
        &self.family
    }
}

impl DeltaMatroidOracle for ExplicitDeltaMatroid {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn is_extendable(&self, forced_in: &BTreeSet<usize>, forced_out: &BTreeSet<usize>) -> bool {
        self.family
            .iter()
            .any(|d| forced_in.is_subset(d) && forced_out.is_disjoint(d))
    }
}

/// The square delta-matroid `{H ∩ R}` of a square graph; element `i` is the
/// reference edge of square `i`.
#[derive(Debug, Clone, Copy)]
pub struct SquareDeltaMatroid<'a> {
    sg: &'a SquareGraph,
}

impl<'a> SquareDeltaMatroid<'a> {
    pub fn new(sg: &'a SquareGraph) -> Self {
        SquareDeltaMatroid { sg }
    }

    /// A full choice vector witnessing the query, if one exists.
    ///
    /// Squares in `forced_in` keep the matching through their reference edge,
    /// squares in `forced_out` the other one; the rest are settled one by one
    /// in index order, each keeping a matching that leaves the graph connected.
    pub fn extension(
        &self,
        forced_in: &BTreeSet<usize>,
        forced_out: &BTreeSet<usize>,
    ) -> Option<Vec<u8>> {
        let t = self.sg.square_count();
        if !forced_in.is_disjoint(forced_out) || forced_in.iter().chain(forced_out).any(|&i| i >= t)
        {
            return None;
        }
        let mut choice: Vec<Option<u8>> = vec![None; t];
        for &i in forced_in {
            choice[i] = Some(self.sg.reference_matching(i));
        }
        for &i in forced_out {
            choice[i] = Some(1 - self.sg.reference_matching(i));
        }
        if !self.sg.connected_under(&choice) {
            return None;
        }
        for i in 0..t {
            if choice[i].is_some() {
                continue;
            }
            let first = self.sg.squares[i].preferred_matching();
            let settled = [first, 1 - first].into_iter().find(|&k| {
                choice[i] = Some(k);
                self.sg.connected_under(&choice)
            });
            settled?;
        }
        Some(choice.into_iter().map(|c| c.unwrap()).collect())
    }

    /// `H ∩ R` for the cycle described by `choice`.
    pub fn member_of_choice(&self, choice: &[u8]) -> BTreeSet<usize> {
        (0..self.sg.square_count())
            .filter(|&i| choice[i] == self.sg.reference_matching(i))
            .collect()
    }

    /// Inverse of [`Self::member_of_choice`].
    pub fn choice_of_member(&self, member: &BTreeSet<usize>) -> Vec<u8> {
        (0..self.sg.square_count())
            .map(|i| {
                let r = self.sg.reference_matching(i);
                if member.contains(&i) {
                    r
                } else {
                    1 - r
                }
            })
            .collect()
    }
}

impl DeltaMatroidOracle for SquareDeltaMatroid<'_> {
    fn ground_size(&self) -> usize {
        self.sg.square_count()
    }

    fn is_extendable(&self, forced_in: &BTreeSet<usize>, forced_out: &BTreeSet<usize>) -> bool {
        self.extension(forced_in, forced_out).is_some()
    }
}

/// Minimum-cost member of a delta-matroid by the greedy algorithm.
///
/// Elements are scanned by decreasing `|cost|`, ties by ascending element.
/// A nonpositive element goes into the solution if still extendable, a
/// positive one is kept out if still extendable.
pub fn greedy<O: DeltaMatroidOracle + ?Sized>(oracle: &O, cost: &[i64]) -> Result<BTreeSet<usize>> {
    let n = oracle.ground_size();
    if cost.len() != n {
        return Err(Error::CostLength {
            expected: n,
            got: cost.len(),
        });
    }
    let mut forced_in = BTreeSet::new();
    let mut forced_out = BTreeSet::new();
    if !oracle.is_extendable(&forced_in, &forced_out) {
        return Err(Error::EmptyFamily);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(cost[i].unsigned_abs()), i));
    for i in order {
        let (try_in, fallback_in) = if cost[i] <= 0 {
            (true, false)
        } else {
            (false, true)
        };
        let target = if try_in { &mut forced_in } else { &mut forced_out };
        target.insert(i);
        if oracle.is_extendable(&forced_in, &forced_out) {
            continue;
        }
        if try_in {
            forced_in.remove(&i);
        } else {
            forced_out.remove(&i);
        }
        if fallback_in {
            forced_in.insert(i);
        } else {
            forced_out.insert(i);
        }
    }
    Ok(forced_in)
}

/// A Hamiltonian cycle of a square graph containing `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamCycle {
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    /// Cyclic node order starting at node 0.
    pub order: Vec<NodeId>,
    /// Kept matching per square.
    pub choice: Vec<u8>,
    pub cost: i64,
}

/// HAM: minimum-cost Hamiltonian cycle containing `M`.
///
/// Squares are processed by non-increasing `|difference of matching costs|`
/// (ties by square index). Each square keeps its cheaper matching unless
/// deleting the other one disconnects the graph formed by the decided
/// squares and the still-intact remaining squares; equal costs prefer the
/// lexicographically smaller matching.
pub fn ham_min_cost(sg: &SquareGraph, costs: &[i64]) -> Result<HamCycle> {
    sg.check_costs(costs)?;
    let mc = sg.matching_costs(costs);
    let t = sg.square_count();
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse((mc[i][0] - mc[i][1]).unsigned_abs()), i));
    let mut choice: Vec<Option<u8>> = vec![None; t];
    for i in order {
        let cheaper = match mc[i][0].cmp(&mc[i][1]) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Equal => sg.squares[i].preferred_matching(),
        };
        let mut ok = [false; 2];
        for k in 0..2u8 {
            choice[i] = Some(k);
            ok[k as usize] = sg.connected_under(&choice);
        }
        choice[i] = match (ok[cheaper as usize], ok[1 - cheaper as usize]) {
            (true, _) => Some(cheaper),
            (false, true) => Some(1 - cheaper),
            (false, false) => {
                return Err(Error::InvariantViolation(format!(
                    "square {i}: both matchings disconnect the graph"
                )))
            }
        };
    }
    let choice: Vec<u8> = choice.into_iter().map(|c| c.unwrap()).collect();
    let edges = sg.cycle_edges(&choice);
    let order = cycle_order(sg.graph(), &edges).ok_or_else(|| {
        Error::InvariantViolation("HAM output is not a Hamiltonian cycle".into())
    })?;
    let cost = edges.iter().map(|&e| costs[e]).sum();
    Ok(HamCycle {
        edges,
        order,
        choice,
        cost,
    })
}

/// True iff `edges` contains `M`, exactly one matching of each square, and
/// forms a Hamiltonian cycle.
pub fn verify_ham(sg: &SquareGraph, edges: &[EdgeId]) -> bool {
    let m = sg.graph().edge_count();
    let mut present = vec![false; m];
    for &e in edges {
        if e >= m || present[e] {
            return false;
        }
        present[e] = true;
    }
    if sg.m_edges().any(|e| !present[e]) {
        return false;
    }
    for sq in sg.squares() {
        let has = |k: u8| sq.matching(k).iter().map(|&e| present[e] as u8).sum::<u8>();
        let (a, b) = (has(0), has(1));
        if !((a == 2 && b == 0) || (a == 0 && b == 2)) {
            return false;
        }
    }
    cycle_order(sg.graph(), edges).is_some()
}

/// A counterexample to the symmetric exchange axiom: members `d1`, `d2` and
/// `j ∈ d1 Δ d2` with no `k ∈ d1 Δ d2` such that `d1 Δ {j, k}` is a member.
pub fn symmetric_exchange_violation(
    family: &[BTreeSet<usize>],
) -> Option<(BTreeSet<usize>, BTreeSet<usize>, usize)> {
    let members: BTreeSet<&BTreeSet<usize>> = family.iter().collect();
    for d1 in family {
        for d2 in family {
            let diff: Vec<usize> = d1.symmetric_difference(d2).copied().collect();
            for &j in &diff {
                let repaired = diff.iter().any(|&k| {
                    let mut d = d1.clone();
                    for x in BTreeSet::from([j, k]) {
                        if !d.remove(&x) {
                            d.insert(x);
                        }
                    }
                    members.contains(&d)
                });
                if !repaired {
                    return Some((d1.clone(), d2.clone(), j));
                }
            }
        }
    }
    None
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// K4 as a square graph: square 0-1-2-3 and both diagonals in `M`.
    pub(crate) fn k4_square_graph() -> SquareGraph {
        let g = MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        SquareGraph::new(g, vec![[0, 1, 2, 3]]).unwrap()
    }

    /// Two squares a0..a3, b0..b3 linked by four matching edges
    /// a0–b0, a1–b1, a2–b2, a3–b3 (a prism-like "cube").
    fn cube() -> SquareGraph {
        let mut g = MultiGraph::new(8);
        for base in [0, 4] {
            for j in 0..4 {
                g.add_edge(base + j, base + (j + 1) % 4);
            }
        }
        for j in 0..4 {
            g.add_edge(j, 4 + j);
        }
        SquareGraph::new(g, vec![[0, 1, 2, 3], [4, 5, 6, 7]]).unwrap()
    }

    #[test]
    fn k4_structure() {
        let sg = k4_square_graph();
        assert_eq!(sg.m_edges().collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(sg.reference_set(), &[0]);
        assert_eq!(sg.reference_matching(0), 0);
    }

    #[test]
    fn k4_ham_unit_costs() {
        let sg = k4_square_graph();
        let h = ham_min_cost(&sg, &[1; 6]).unwrap();
        assert_eq!(h.cost, 4);
        assert!(h.edges.contains(&4) && h.edges.contains(&5));
        assert!(verify_ham(&sg, &h.edges));
    }

    #[test]
    fn k4_both_matchings_extend() {
        let sg = k4_square_graph();
        let dm = SquareDeltaMatroid::new(&sg);
        let none = BTreeSet::new();
        let r = BTreeSet::from([0]);
        assert!(dm.is_extendable(&none, &none));
        assert!(dm.is_extendable(&r, &none));
        assert!(dm.is_extendable(&none, &r));
        assert!(!dm.is_extendable(&r, &r));
    }

    #[test]
    fn cube_forced_parallel_choice_disconnects() {
        let sg = cube();
        // square 0 keeping {01, 23} and square 1 keeping {45, 67} leaves two 4-cycles
        let dm = SquareDeltaMatroid::new(&sg);
        assert_eq!(sg.reference_matching(0), 0);
        assert_eq!(sg.reference_matching(1), 0);
        let both = BTreeSet::from([0, 1]);
        assert!(!dm.is_extendable(&both, &BTreeSet::new()));
        assert!(dm.is_extendable(&BTreeSet::from([0]), &BTreeSet::new()));
        let w = dm.extension(&BTreeSet::from([0]), &BTreeSet::new()).unwrap();
        assert_eq!(w, vec![0, 1]);
    }

    #[test]
    fn verify_rejects_bad_cycles() {
        let sg = k4_square_graph();
        // missing an M edge
        assert!(!verify_ham(&sg, &[0, 2, 4]));
        // both matchings of the square
        assert!(!verify_ham(&sg, &[0, 1, 2, 3, 4, 5]));
        assert!(verify_ham(&sg, &[1, 3, 4, 5]));
    }

    #[test]
    fn explicit_greedy_examples() {
        let single = ExplicitDeltaMatroid::new(2, vec![BTreeSet::from([1])]).unwrap();
        assert_eq!(greedy(&single, &[-7, 9]).unwrap(), BTreeSet::from([1]));

        let free = ExplicitDeltaMatroid::new(
            2,
            vec![
                BTreeSet::new(),
                BTreeSet::from([0]),
                BTreeSet::from([1]),
                BTreeSet::from([0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(greedy(&free, &[-3, 5]).unwrap(), BTreeSet::from([0]));

        let empty = ExplicitDeltaMatroid::new(1, vec![]).unwrap();
        assert_eq!(greedy(&empty, &[1]).unwrap_err(), Error::EmptyFamily);
    }

    #[test]
    fn greedy_on_k4_picks_cheaper_matching() {
        let sg = k4_square_graph();
        let costs = [5, 1, 5, 1, 0, 0];
        let dm = SquareDeltaMatroid::new(&sg);
        // reference edge 0 lies in matching 0 (cost 10) vs matching 1 (cost 2)
        let d = greedy(&dm, &[10 - 2]).unwrap();
        assert!(d.is_empty());
        let h = ham_min_cost(&sg, &costs).unwrap();
        assert_eq!(h.choice, vec![1]);
        assert_eq!(h.cost, 2);
    }

    #[test]
    fn rejects_non_square_graphs() {
        // K4 with a square declared but a node of degree 4
        let g = MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)]).unwrap();
        assert!(matches!(
            SquareGraph::new(g, vec![[0, 1, 2, 3]]),
            Err(Error::NotSquareGraph(_))
        ));
        let g = MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        assert!(SquareGraph::new(g.clone(), vec![[0, 2, 1, 3]]).is_err());
        assert!(SquareGraph::new(g, vec![]).is_err());
    }

    #[test]
    fn symmetric_exchange_detects_violation() {
        let ok = vec![BTreeSet::new(), BTreeSet::from([0])];
        assert!(symmetric_exchange_violation(&ok).is_none());
        let bad = vec![BTreeSet::new(), BTreeSet::from([0, 1, 2])];
        assert!(symmetric_exchange_violation(&bad).is_some());
    }
}
