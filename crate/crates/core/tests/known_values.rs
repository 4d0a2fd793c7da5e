//! Small hand-checkable instances with known answers.

use std::collections::BTreeSet;

use squaretour::deltamatroid::{
    greedy, ham_min_cost, verify_ham, DeltaMatroidOracle, ExplicitDeltaMatroid, SquareDeltaMatroid, SquareGraph,
};
use squaretour::graph::{global_min_cut, metric_closure};
use squaretour::halfpoint::{classify, contract_one_paths, decompose, validate_subtour, PointClass, SubtourCheck};
use squaretour::instances::{
    everywhere_instance, make_donut, node_weighted_costs, random_square_point, DonutNode,
};
use squaretour::kotzig::{find_trail, verify_trail, BitransitionSystem, Trail};
use squaretour::oracles::{brute_ham, brute_min_cut, brute_rainbow, floyd_warshall, held_karp};
use squaretour::tjoin::{min_t_join, min_weight_perfect_matching, MatchingEngine};
use squaretour::tour::{compute_y, hamiltonian_with_ones, run_tour};
use squaretour::treesel::{rainbow_one_tree, weighted_matroid_intersection, GraphicMatroid, PartitionMatroid};
use squaretour::{Dart, DistanceMatrix, HalfIntegerPoint, MultiGraph, WeightedGraph};

fn unit(g: MultiGraph) -> WeightedGraph {
    let m = g.edge_count();
    WeightedGraph::new(g, vec![1; m]).unwrap()
}

/// Square a-b-c-d (0..4) with 1-paths a–p–c and b–q–d (p = 4, q = 5).
fn six_node_point() -> HalfIntegerPoint {
    HalfIntegerPoint::from_edges(
        6,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 4, 2), (2, 4, 2), (1, 5, 2), (3, 5, 2)],
    )
    .unwrap()
}

fn cycle_point(n: usize) -> HalfIntegerPoint {
    HalfIntegerPoint::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 2))).unwrap()
}

fn k4_square_graph() -> SquareGraph {
    let g = MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
    SquareGraph::new(g, vec![[0, 1, 2, 3]]).unwrap()
}

/// Squares a0..a3 and b0..b3 with `M` = {ai–bi}. Keeping the same matching
/// in both squares splits the graph into two 4-cycles.
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

fn node_of(layout: &[DonutNode], want: DonutNode) -> usize {
    layout.iter().position(|&n| n == want).unwrap()
}

#[test]
fn connectivity() {
    assert!(MultiGraph::new(1).is_connected());
    assert!(!MultiGraph::new(2).is_connected());
    assert!(MultiGraph::from_edges(2, [(0, 1); 4]).unwrap().is_connected());
}

#[test]
fn small_min_cuts() {
    let tri = unit(MultiGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap());
    assert_eq!(global_min_cut(&tri).unwrap().value, 2);
    let sq = unit(MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
    assert_eq!(global_min_cut(&sq).unwrap().value, 2);
    let disconnected = unit(MultiGraph::from_edges(3, [(0, 1)]).unwrap());
    assert!(global_min_cut(&disconnected).is_err());
}

#[test]
fn donut_cut_and_distances() {
    let d = make_donut(2).unwrap();
    let doubled = d.point.doubled_support();
    assert_eq!(global_min_cut(&doubled).unwrap().value, 4);
    assert_eq!(brute_min_cut(&doubled).unwrap().0, 4);

    let w = d.point.weighted_support(&d.costs).unwrap();
    let m = metric_closure(&w).unwrap();
    let fw = floyd_warshall(&w);
    // the inner corner of square 0 and the far end of its inner 1-path
    let a = node_of(&d.layout, DonutNode::Corner { square: 0, corner: 2 });
    let b = node_of(&d.layout, DonutNode::Corner { square: 1, corner: 0 });
    assert_eq!(m.get(a, b), 2);
    assert_eq!(fw[a][b], Some(2));
    // across the square: one rung plus one cost-k edge
    let c = node_of(&d.layout, DonutNode::Corner { square: 0, corner: 0 });
    let e = node_of(&d.layout, DonutNode::Corner { square: 0, corner: 3 });
    assert_eq!(m.get(c, e), 3);
}

#[test]
fn small_metrics() {
    let path = unit(MultiGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
    assert_eq!(metric_closure(&path).unwrap().get(0, 2), 2);
    let g = MultiGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let tri = WeightedGraph::new(g, vec![1, 1, 5]).unwrap();
    assert_eq!(metric_closure(&tri).unwrap().get(0, 2), 2);
    assert!(metric_closure(&unit(MultiGraph::new(2))).is_err());
}

#[test]
fn membership_examples() {
    assert!(validate_subtour(&cycle_point(5)).holds());
    assert!(validate_subtour(&make_donut(2).unwrap().point).holds());

    // square a-b-c-d with 1-paths a–p–b and c–q–d: {a, p, b} is cut off by x-value 1
    let x = HalfIntegerPoint::from_edges(
        6,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 4, 2), (4, 1, 2), (2, 5, 2), (5, 3, 2)],
    )
    .unwrap();
    assert_eq!(
        validate_subtour(&x),
        SubtourCheck::Cut {
            side: vec![0, 1, 4],
            x2_value: 2
        }
    );
    assert!(classify(&x).is_err());
}

#[test]
fn classification_examples() {
    assert_eq!(classify(&make_donut(2).unwrap().point).unwrap(), PointClass::Square);
    let cv = HalfIntegerPoint::from_edges(
        12,
        (0..12).map(|i| (i, (i + 1) % 12, 1)).chain((0..6).map(|i| (i, i + 6, 2))),
    )
    .unwrap();
    assert_eq!(classify(&cv).unwrap(), PointClass::CarrVempala);
    assert_eq!(classify(&six_node_point()).unwrap(), PointClass::Square);
    let k4 = HalfIntegerPoint::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 2), (1, 3, 2)]).unwrap();
    assert_eq!(classify(&k4).unwrap(), PointClass::BoydCarr);
}

#[test]
fn decomposition_examples() {
    let dec = decompose(&make_donut(2).unwrap().point).unwrap();
    assert_eq!(dec.squares.len(), 2);
    assert_eq!(dec.one_paths.len(), 4);
    assert!(dec.one_paths.iter().all(|p| p.edges.len() == 2));
    assert_eq!(dec.pair_partition.len(), 4);

    let dec = decompose(&cycle_point(7)).unwrap();
    assert!(dec.squares.is_empty() && dec.pair_partition.is_empty());
    assert_eq!(dec.one_paths.len(), 1);
    assert!(dec.one_paths[0].closed);
    assert_eq!(dec.one_paths[0].edges.len(), 7);

    let dec = decompose(&make_donut(4).unwrap().point).unwrap();
    assert_eq!(dec.squares.len(), 4);
    assert_eq!(dec.one_paths.len(), 8);
    assert!(dec.one_paths.iter().all(|p| p.edges.len() == 4));
    assert_eq!(dec.pair_partition.len(), 8);
}

#[test]
fn contraction_examples() {
    let d = make_donut(2).unwrap();
    let con = contract_one_paths(&d.point, &d.costs).unwrap();
    let sg = &con.square_graph;
    assert_eq!(sg.graph().node_count(), 8);
    let m: Vec<usize> = sg.m_edges().collect();
    assert_eq!(m.len(), 4);
    assert!(m.iter().all(|&e| con.costs[e] == 2));
    assert_eq!(sg.graph().edge_count() - m.len(), 8);

    // 1-paths of length 1: nothing to contract
    let k4 = HalfIntegerPoint::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 2), (1, 3, 2)]).unwrap();
    let con = contract_one_paths(&k4, &[1; 6]).unwrap();
    assert_eq!(con.square_graph.graph().node_count(), 4);
    assert_eq!(con.square_graph.graph().edge_count(), 6);

    let con = contract_one_paths(&six_node_point(), &[1; 8]).unwrap();
    let sg = &con.square_graph;
    assert_eq!(sg.graph().node_count(), 4);
    for e in sg.m_edges() {
        assert_eq!(con.costs[e], 2);
        let (u, v) = sg.graph().endpoints(e);
        // a chord joins opposite corners
        assert_eq!((u as isize - v as isize).abs(), 2);
    }

    assert!(contract_one_paths(&cycle_point(5), &[1; 5]).is_err());
}

#[test]
fn square_oracle_examples() {
    let k4 = k4_square_graph();
    let oracle = SquareDeltaMatroid::new(&k4);
    let none = BTreeSet::new();
    assert!(oracle.is_extendable(&none, &none));
    assert!(oracle.is_extendable(&BTreeSet::from([0]), &none));
    assert!(oracle.is_extendable(&none, &BTreeSet::from([0])));
    assert!(!oracle.is_extendable(&BTreeSet::from([0]), &BTreeSet::from([0])));

    let cube = cube();
    let oracle = SquareDeltaMatroid::new(&cube);
    assert!(oracle.is_extendable(&none, &none));
    // both reference edges lie in matching 0 of their square
    assert!(!oracle.is_extendable(&BTreeSet::from([0, 1]), &none));
    assert!(!oracle.is_extendable(&none, &BTreeSet::from([0, 1])));
    assert!(oracle.is_extendable(&BTreeSet::from([0]), &BTreeSet::from([1])));
}

#[test]
fn greedy_examples() {
    let d = BTreeSet::from([1, 3]);
    let single = ExplicitDeltaMatroid::new(4, vec![d.clone()]).unwrap();
    assert_eq!(greedy(&single, &[5, -5, 5, 7]).unwrap(), d);

    let free = ExplicitDeltaMatroid::new(
        2,
        vec![BTreeSet::new(), BTreeSet::from([0]), BTreeSet::from([1]), BTreeSet::from([0, 1])],
    )
    .unwrap();
    assert_eq!(greedy(&free, &[-3, 5]).unwrap(), BTreeSet::from([0]));

    let empty = ExplicitDeltaMatroid::new(2, vec![]).unwrap();
    assert!(greedy(&empty, &[1, 1]).is_err());

    // K4: matching {0-1, 2-3} cheaper than {1-2, 3-0}
    let k4 = k4_square_graph();
    let oracle = SquareDeltaMatroid::new(&k4);
    let costs = [1, 9, 1, 9, 1, 1];
    let ham = ham_min_cost(&k4, &costs).unwrap();
    assert_eq!(ham.cost, 4);
    assert_eq!(ham.edges, vec![0, 2, 4, 5]);
    let member = greedy(&oracle, &[-8]).unwrap();
    assert_eq!(oracle.choice_of_member(&member), ham.choice);
}

#[test]
fn ham_examples() {
    let k4 = k4_square_graph();
    let ham = ham_min_cost(&k4, &[1; 6]).unwrap();
    assert_eq!(ham.cost, 4);
    assert!(ham.edges.contains(&4) && ham.edges.contains(&5));
    assert_eq!(brute_ham(&k4, &[1; 6]).unwrap(), Some(4));
    assert!(verify_ham(&k4, &ham.edges));
    let missing_m: Vec<usize> = ham.edges.iter().copied().filter(|&e| e != 4).collect();
    assert!(!verify_ham(&k4, &missing_m));
    assert!(!verify_ham(&k4, &[0, 1, 2, 3, 4, 5]));

    // equal matching costs: only connectivity matters
    let cube = cube();
    let costs = [3, 3, 3, 3, 2, 2, 2, 2, 1, 1, 1, 1];
    let ham = ham_min_cost(&cube, &costs).unwrap();
    assert_eq!(ham.cost, 4 + 6 + 4);
    assert_ne!(ham.choice[0], ham.choice[1]);

    let d = make_donut(2).unwrap();
    let con = contract_one_paths(&d.point, &d.costs).unwrap();
    let ham = ham_min_cost(&con.square_graph, &con.costs).unwrap();
    assert_eq!(Some(ham.cost), brute_ham(&con.square_graph, &con.costs).unwrap());
    assert_eq!(ham.cost, 14);
}

fn theta() -> BitransitionSystem {
    let g = MultiGraph::from_edges(2, [(0, 1); 4]).unwrap();
    let at = |end| [[Dart::new(0, end), Dart::new(1, end)], [Dart::new(2, end), Dart::new(3, end)]];
    BitransitionSystem::new(g, vec![at(0), at(1)]).unwrap()
}

#[test]
fn kotzig_examples() {
    let sys = theta();
    let trail = find_trail(&sys).unwrap();
    assert_eq!(trail.edge_count(), 4);
    assert!(verify_trail(&sys, &trail));
    let naive = Trail {
        darts: (0..4).flat_map(|e| [Dart::new(e, (e % 2) as u8), Dart::new(e, 1 - (e % 2) as u8)]).collect(),
    };
    assert!(!verify_trail(&sys, &naive));
    let repeated = Trail {
        darts: vec![Dart::new(0, 0), Dart::new(0, 1), Dart::new(0, 1), Dart::new(0, 0)],
    };
    assert!(!verify_trail(&sys, &repeated));

    let g = MultiGraph::from_edges(1, [(0, 0), (0, 0)]).unwrap();
    let forbidden = [[Dart::new(0, 0), Dart::new(0, 1)], [Dart::new(1, 0), Dart::new(1, 1)]];
    let sys = BitransitionSystem::new(g, vec![forbidden]).unwrap();
    let trail = find_trail(&sys).unwrap();
    assert_eq!(trail.edge_count(), 2);
    assert!(verify_trail(&sys, &trail));
}

#[test]
fn intersection_examples() {
    let tri = MultiGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
    let m = GraphicMatroid::new(&tri);
    let basis = weighted_matroid_intersection(&m, &m, &[1, 1, 1]).unwrap().unwrap();
    assert_eq!(basis.len(), 2);

    let part = PartitionMatroid::new(vec![0, 0, 1], 3).unwrap();
    assert_eq!(weighted_matroid_intersection(&m, &part, &[1, 1, 1]).unwrap(), None);
}

#[test]
fn rainbow_examples() {
    let x = six_node_point();
    let f = rainbow_one_tree(&x, &[1; 8]).unwrap();
    assert_eq!(f.edges.len(), 6);
    assert_eq!(f.cost, 6);
    assert_eq!(2 * f.cost, x.cost_x2(&[1; 8]).unwrap());
    assert_eq!(brute_rainbow(&x, &[1; 8]).unwrap(), Some(6));

    let d = make_donut(2).unwrap();
    let f = rainbow_one_tree(&d.point, &d.costs).unwrap();
    assert!(f.cost <= 14);
    assert_eq!(brute_rainbow(&d.point, &d.costs).unwrap(), Some(f.cost));

    assert!(rainbow_one_tree(&cycle_point(5), &[1; 5]).is_err());
}

#[test]
fn matching_and_t_join_examples() {
    let two = DistanceMatrix::from_fn(2, |i, j| if i == j { 0 } else { 7 });
    assert_eq!(min_weight_perfect_matching(&two, MatchingEngine::Auto).unwrap().weight, 7);
    let path = DistanceMatrix::from_fn(4, |i, j| (i as i64 - j as i64).abs());
    assert_eq!(min_weight_perfect_matching(&path, MatchingEngine::Auto).unwrap().weight, 2);
    assert!(min_weight_perfect_matching(&DistanceMatrix::zeros(3), MatchingEngine::Auto).is_err());

    let g = unit(MultiGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap());
    let j = min_t_join(&g, &[0, 4], MatchingEngine::Auto).unwrap();
    assert_eq!(j.edges, vec![0, 1, 2, 3]);
    let j = min_t_join(&g, &[], MatchingEngine::Auto).unwrap();
    assert!(j.edges.is_empty() && j.cost == 0);
    assert!(min_t_join(&g, &[0, 1, 2], MatchingEngine::Auto).is_err());
}

#[test]
fn ham_with_ones_examples() {
    let x = six_node_point();
    let h = hamiltonian_with_ones(&x, &[1; 8]).unwrap();
    let edge = |u, v| x.edge_id(u, v).unwrap();
    let first = BTreeSet::from([edge(0, 4), edge(2, 4), edge(2, 3), edge(3, 5), edge(1, 5), edge(0, 1)]);
    let second = BTreeSet::from([edge(0, 4), edge(2, 4), edge(1, 2), edge(1, 5), edge(3, 5), edge(0, 3)]);
    let got: BTreeSet<usize> = h.edges.iter().copied().collect();
    assert!(got == first || got == second);

    // the k=2 donut: 4k² − 2k + 2 = 14
    let d = make_donut(2).unwrap();
    let h = hamiltonian_with_ones(&d.point, &d.costs).unwrap();
    assert_eq!(h.cost, 14);

    let x = cycle_point(6);
    let h = hamiltonian_with_ones(&x, &[2; 6]).unwrap();
    assert_eq!(h.edges, (0..6).collect::<Vec<_>>());
    assert_eq!(2 * h.cost, x.cost_x2(&[2; 6]).unwrap());
}

#[test]
fn y_vector_examples() {
    // K4 point with the outer square as H: both 1-edges stay outside H
    let k4 = HalfIntegerPoint::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 2), (1, 3, 2)]).unwrap();
    let y = compute_y(&k4, &[0, 1, 2, 3]).unwrap();
    for (u, v, want) in [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 4), (1, 3, 4)] {
        assert_eq!(y.y6[k4.edge_id(u, v).unwrap()], want);
    }
    let y = compute_y(&k4, &[0, 1, 3, 2]).unwrap();
    let half_out = k4.edge_id(1, 2).unwrap();
    let one_in = k4.edge_id(1, 3).unwrap();
    assert_eq!(y.y6[half_out], 2);
    assert_eq!(y.y6[one_in], 3);

    let d = make_donut(2).unwrap();
    let h = hamiltonian_with_ones(&d.point, &d.costs).unwrap();
    let y = compute_y(&d.point, &h.order).unwrap();
    let by_hand: i64 = d
        .point
        .edges()
        .map(|(e, _, _, x2)| {
            let in_h = h.edges.contains(&e) as i64;
            d.costs[e] * (2 * x2 as i64 - in_h)
        })
        .sum();
    assert_eq!(y.cost6(&d.costs), by_hand);
    assert_eq!(by_hand, 2 * 28 - 14);
}

#[test]
fn tour_examples() {
    let d = make_donut(2).unwrap();
    let r = run_tour(&d.point, &d.costs).unwrap();
    assert_eq!(r.c_x2, 28);
    assert!(7 * r.min_cost() <= 140);
    assert!(r.final_cost <= 20);

    let x = cycle_point(8);
    let costs: Vec<i64> = (1..=8).collect();
    let r = run_tour(&x, &costs).unwrap();
    assert_eq!(2 * r.final_cost, r.c_x2);
}

#[test]
fn donut_sizes() {
    for (k, n, cx) in [(2, 12, 14), (3, 24, 30), (4, 40, 52)] {
        let d = make_donut(k).unwrap();
        assert_eq!(d.point.n(), n);
        assert_eq!(d.point.cost_x2(&d.costs).unwrap(), 2 * cx);
    }
    assert!(make_donut(1).is_err());
}

#[test]
fn random_point_examples() {
    let x = random_square_point(1, 3, 11).unwrap();
    assert_eq!(decompose(&x).unwrap().squares.len(), 1);
    let a = random_square_point(2, 3, 99).unwrap();
    assert_eq!(a, random_square_point(2, 3, 99).unwrap());
    assert!(validate_subtour(&a).holds());
    assert!(classify(&a).unwrap().is_square());
}

#[test]
fn everywhere_examples() {
    let k4 = MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
    let x = everywhere_instance(&k4, &[0, 1, 2, 3]).unwrap();
    assert!(validate_subtour(&x).holds());
    let costs = node_weighted_costs(&x, &[1; 4]).unwrap();
    assert_eq!(x.cost_x2(&costs).unwrap(), 16);
    let d = metric_closure(&x.weighted_support(&costs).unwrap()).unwrap();
    assert_eq!(held_karp(&d).unwrap(), 8);

    let prism = MultiGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
    let x = everywhere_instance(&prism, &[0, 1, 8, 4, 3, 6]).unwrap();
    assert!(validate_subtour(&x).holds());
    assert!(everywhere_instance(&prism, &[0, 1, 2, 3, 4, 5]).is_err());

    // 3/7 + (4/7)(3/2)(1/2) and (4/7)(3/2)(1), over 28
    assert_eq!(3 * 4 + 4 * 3, 6 * 4);
    assert_eq!(4 * 3 * 2, 6 * 4);
}

#[test]
fn exact_oracle_values() {
    let k4 = DistanceMatrix::from_fn(4, |i, j| if i == j { 0 } else { 2 });
    assert_eq!(held_karp(&k4).unwrap(), 8);
    let d = make_donut(2).unwrap();
    let m = metric_closure(&d.point.weighted_support(&d.costs).unwrap()).unwrap();
    assert_eq!(held_karp(&m).unwrap(), 14);
    assert!(held_karp(&DistanceMatrix::zeros(25)).is_err());
}
