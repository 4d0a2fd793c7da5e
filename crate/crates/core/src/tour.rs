//! The tour pipeline for square points: a Hamiltonian cycle `H` through all
//! 1-edges, a rainbow 1-tree completed to a tour by a minimum T-join, the
//! cheaper of the two, and a shortcut Hamiltonian cycle of `K_n`.

use crate::deltamatroid::ham_min_cost;
use crate::error::{Error, Result};
use crate::graph::{cycle_order, eulerian_circuit, metric_closure, EdgeId, MultiGraph, NodeId};
use crate::halfpoint::{classify, contract_one_paths, decompose, HalfIntegerPoint};
use crate::tjoin::{min_t_join, odd_nodes, MatchingEngine};
use crate::treesel::rainbow_one_tree;

/// A Hamiltonian cycle of the support graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportCycle {
    /// Support edge ids, sorted.
    pub edges: Vec<EdgeId>,
    /// Cyclic node order starting at node 0.
    pub order: Vec<NodeId>,
    pub cost: i64,
}

/// Minimum-cost Hamiltonian cycle of the support containing every 1-edge.
pub fn hamiltonian_with_ones(x: &HalfIntegerPoint, costs: &[i64]) -> Result<SupportCycle> {
    x.check_costs(costs)?;
    if !classify(x)?.is_square() {
        return Err(Error::NotSquarePoint);
    }
    let dec = decompose(x)?;
    let mut edges: Vec<EdgeId> = if dec.squares.is_empty() {
        (0..x.edge_count()).collect()
    } else {
        let con = contract_one_paths(x, costs)?;
        let ham = ham_min_cost(&con.square_graph, &con.costs)?;
        ham.edges
            .iter()
            .flat_map(|&e| con.expansion[e].iter().copied())
            .collect()
    };
    edges.sort_unstable();
    let order = cycle_order(&x.support_graph(), &edges).ok_or_else(|| {
        Error::InvariantViolation("expanded cycle is not Hamiltonian".into())
    })?;
    let cost = edges.iter().map(|&e| costs[e]).sum();
    Ok(SupportCycle { edges, order, cost })
}

/// `y = (2/3)x − (1/6)χ^H` over the support, in sixths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YVector {
    pub y6: Vec<u8>,
}

impl YVector {
    /// `6 · (c·y)`.
    pub fn cost6(&self, costs: &[i64]) -> i64 {
        self.y6.iter().zip(costs).map(|(&y, &c)| y as i64 * c).sum()
    }
}

/// Computes `y` for the Hamiltonian cycle visiting `order` cyclically.
pub fn compute_y(x: &HalfIntegerPoint, order: &[NodeId]) -> Result<YVector> {
    let n = x.n();
    if order.len() != n {
        return Err(Error::InvalidArgument(format!(
            "cycle visits {} nodes, expected {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidArgument(format!(
                "cycle is not a permutation of the nodes (node {v})"
            )));
        }
    }
    let mut in_h = vec![false; x.edge_count()];
    for (i, &u) in order.iter().enumerate() {
        let v = order[(i + 1) % n];
        let e = x.edge_id(u, v).ok_or_else(|| {
            Error::InvalidArgument(format!("cycle edge ({u}, {v}) is not in the support"))
        })?;
        in_h[e] = true;
    }
    let y6 = x
        .edges()
        .map(|(e, _, _, x2)| 2 * x2 - in_h[e] as u8)
        .collect();
    Ok(YVector { y6 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChosenTour {
    H,
    JStar,
}

/// Everything the pipeline computed. Costs are exact; `c_x2 = 2·(c·x)` and
/// `c_y6 = 6·(c·y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourReport {
    pub h: SupportCycle,
    /// Rainbow 1-tree edges (empty for an integral point).
    pub f_star: Vec<EdgeId>,
    pub t_join: Vec<EdgeId>,
    /// Multiplicity of each support edge in `J* = F* ⊎ J`.
    pub j_star: Vec<u8>,
    pub c_h: i64,
    pub c_f: i64,
    pub c_t: i64,
    pub c_j: i64,
    pub c_x2: i64,
    pub c_y6: i64,
    pub bound_holds: bool,
    pub chosen: ChosenTour,
    /// Hamiltonian cycle of `K_n` after shortcutting the chosen tour.
    pub final_cycle: Vec<NodeId>,
    /// Cost of `final_cycle` under the metric closure of the support.
    pub final_cost: i64,
}

impl TourReport {
    pub fn min_cost(&self) -> i64 {
        self.c_h.min(self.c_j)
    }
}

/// Runs the pipeline and fails with [`Error::BoundViolated`] unless
/// `7·min(c(H), c(J*)) ≤ 10·c·x`.
pub fn run_tour(x: &HalfIntegerPoint, costs: &[i64]) -> Result<TourReport> {
    let report = tour_report(x, costs, MatchingEngine::Auto)?;
    if !report.bound_holds {
        return Err(Error::BoundViolated(format!(
            "14·min(c_H, c_J) = {} > 10·c_x2 = {}",
            14 * report.min_cost(),
            10 * report.c_x2
        )));
    }
    Ok(report)
}

/// Runs the pipeline and reports whether the bound holds instead of failing.
pub fn tour_report(x: &HalfIntegerPoint, costs: &[i64], engine: MatchingEngine) -> Result<TourReport> {
    x.check_costs(costs)?;
    if !classify(x)?.is_square() {
        return Err(Error::NotSquarePoint);
    }
    let c_x2 = x.cost_x2(costs)?;
    let h = hamiltonian_with_ones(x, costs)?;
    let c_h = h.cost;
    let y = compute_y(x, &h.order)?;
    let c_y6 = y.cost6(costs);
    let m = x.edge_count();
    let support = x.weighted_support(costs)?;

    let (f_star, t_join) = if decompose(x)?.squares.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let f = rainbow_one_tree(x, costs)?;
        let t = odd_nodes(support.graph(), &f.edges);
        let j = min_t_join(&support, &t, engine)?;
        (f.edges, j.edges)
    };
    let mut j_star = vec![0u8; m];
    if f_star.is_empty() {
        // integral point: the tour is the 1-edge cycle itself
        for &e in &h.edges {
            j_star[e] = 1;
        }
    }
    for &e in f_star.iter().chain(&t_join) {
        j_star[e] += 1;
    }
    let c_f: i64 = f_star.iter().map(|&e| costs[e]).sum();
    let c_t: i64 = t_join.iter().map(|&e| costs[e]).sum();
    let c_j: i64 = j_star.iter().zip(costs).map(|(&k, &c)| k as i64 * c).sum();
    let bound_holds = 14 * c_h.min(c_j) <= 10 * c_x2;

    let chosen = if c_h <= c_j { ChosenTour::H } else { ChosenTour::JStar };
    let mut tour = MultiGraph::new(x.n());
    match chosen {
        ChosenTour::H => {
            for &e in &h.edges {
                let (u, v) = x.endpoints(e);
                tour.add_edge(u, v);
            }
        }
        ChosenTour::JStar => {
            for (e, &k) in j_star.iter().enumerate() {
                let (u, v) = x.endpoints(e);
                for _ in 0..k {
                    tour.add_edge(u, v);
                }
            }
        }
    }
    let metric = metric_closure(&support)?;
    let final_cycle = shortcut(&tour)?;
    let final_cost = metric.cycle_cost(&final_cycle);
    if final_cost > c_h.min(c_j) {
        return Err(Error::InvariantViolation(format!(
            "shortcut cost {final_cost} exceeds tour cost {}",
            c_h.min(c_j)
        )));
    }
    Ok(TourReport {
        h,
        f_star,
        t_join,
        j_star,
        c_h,
        c_f,
        c_t,
        c_j,
        c_x2,
        c_y6,
        bound_holds,
        chosen,
        final_cycle,
        final_cost,
    })
}

/// Node order of the lowest-dart-first Eulerian circuit from node 0 with
/// repeated nodes skipped.
pub fn shortcut(tour: &MultiGraph) -> Result<Vec<NodeId>> {
    let circuit = eulerian_circuit(tour, 0)?;
    let n = tour.node_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for d in circuit {
        let v = tour.dart_node(d);
        if !std::mem::replace(&mut seen[v], true) {
            order.push(v);
        }
    }
    if order.len() != n {
        return Err(Error::Disconnected);
    }
    Ok(order)
}
