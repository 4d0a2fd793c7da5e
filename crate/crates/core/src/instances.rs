//! Instance generators and the line-oriented text format.

use rand::{seq::SliceRandom, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deltamatroid::SquareGraph;
use crate::error::{Error, Result};
use crate::graph::{cycle_order, global_min_cut, Dart, EdgeId, MultiGraph, NodeId, UnionFind, WeightedGraph};
use crate::halfpoint::{classify, validate_subtour, HalfIntegerPoint};
use crate::kotzig::BitransitionSystem;

pub const MAX_GENERATION_ATTEMPTS: usize = 10_000;

/// Position of a donut node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DonutNode {
    /// Corner of square `square`: 0 inner towards the previous square, 1 outer
    /// towards the previous, 2 inner towards the next, 3 outer towards the next.
    Corner { square: usize, corner: u8 },
    /// Internal node `position` (1-based) of the inner or outer 1-path leaving
    /// square `square` towards square `square + 1`.
    Path { square: usize, outer: bool, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DonutInstance {
    pub k: usize,
    pub point: HalfIntegerPoint,
    pub costs: Vec<i64>,
    pub layout: Vec<DonutNode>,
}

/// The `k`-donut: `k` squares in a cycle, consecutive squares joined by an
/// inner and an outer 1-path of length `k`. Each square has one inner and one
/// outer half-edge of cost `k`; every other support edge costs 1.
pub fn make_donut(k: usize) -> Result<DonutInstance> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("donut needs k ≥ 2, got {k}")));
    }
    let n = 2 * k * k + 2 * k;
    let mut layout = Vec::with_capacity(n);
    for square in 0..k {
        for corner in 0..4 {
            layout.push(DonutNode::Corner { square, corner });
        }
    }
    let corner = |i: usize, c: usize| 4 * (i % k) + c;
    let mut edges: Vec<(NodeId, NodeId, u8, i64)> = Vec::new();
    for i in 0..k {
        let ip = corner(i, 0);
        let op = corner(i, 1);
        let inx = corner(i, 2);
        let on = corner(i, 3);
        edges.push((ip, inx, 1, k as i64));
        edges.push((op, on, 1, k as i64));
        edges.push((ip, op, 1, 1));
        edges.push((inx, on, 1, 1));
    }
    for i in 0..k {
        for (outer, from, to) in [
            (false, corner(i, 2), corner(i + 1, 0)),
            (true, corner(i, 3), corner(i + 1, 1)),
        ] {
            let mut prev = from;
            for position in 1..k {
                let v = layout.len();
                layout.push(DonutNode::Path {
                    square: i,
                    outer,
                    position,
                });
                edges.push((prev, v, 2, 1));
                prev = v;
            }
            edges.push((prev, to, 2, 1));
        }
    }
    debug_assert_eq!(layout.len(), n);
    let (point, costs) = point_with_costs(n, &edges)?;
    let cx2 = point.cost_x2(&costs)?;
    let expected = 2 * (3 * k * k + k) as i64;
    if cx2 != expected {
        return Err(Error::InvariantViolation(format!(
            "donut c·x = {cx2}/2, expected {expected}/2"
        )));
    }
    Ok(DonutInstance {
        k,
        point,
        costs,
        layout,
    })
}

fn point_with_costs(n: usize, edges: &[(NodeId, NodeId, u8, i64)]) -> Result<(HalfIntegerPoint, Vec<i64>)> {
    let point = HalfIntegerPoint::from_edges(n, edges.iter().map(|&(u, v, x2, _)| (u, v, x2)))?;
    let mut costs = vec![0; point.edge_count()];
    for &(u, v, _, c) in edges {
        costs[point.edge_id(u, v).expect("inserted")] = c;
    }
    Ok((point, costs))
}

/// Uniform random pairing of `4n` darts into `2n` edges, retried until the
/// multigraph is connected.
fn random_four_regular(n: usize, rng: &mut ChaCha8Rng) -> Result<MultiGraph> {
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let mut slots: Vec<NodeId> = (0..4 * n).map(|s| s / 4).collect();
        slots.shuffle(rng);
        let mut g = MultiGraph::new(n);
        for pair in slots.chunks(2) {
            g.add_edge(pair[0], pair[1]);
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(MAX_GENERATION_ATTEMPTS))
}

/// Random connected 4-regular multigraph on `n ≥ 1` nodes with a uniformly
/// random forbidden pairing at each node.
pub fn random_bitransition_system(n: usize, seed: u64) -> Result<BitransitionSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one node".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_four_regular(n, &mut rng)?;
    let forbidden = (0..n)
        .map(|v| {
            let d = g.darts_at(v);
            match rng.random_range(0..3) {
                0 => [[d[0], d[1]], [d[2], d[3]]],
                1 => [[d[0], d[2]], [d[1], d[3]]],
                _ => [[d[0], d[3]], [d[1], d[2]]],
            }
        })
        .collect();
    BitransitionSystem::new(g, forbidden)
}

/// Corners of node `v` in random order: the darts of `v` get corners
/// `4v + perm[j]`.
fn random_corners(g: &MultiGraph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut dart_corner = vec![0; 2 * g.edge_count()];
    for v in 0..g.node_count() {
        let mut perm = [0, 1, 2, 3];
        perm.shuffle(rng);
        for (d, &j) in g.darts_at(v).iter().zip(&perm) {
            dart_corner[2 * d.edge + d.end as usize] = 4 * v + j;
        }
    }
    dart_corner
}

/// Random square graph with `num_squares` squares: every node of a random
/// 4-regular multigraph becomes a square with its darts at random corners.
/// Loops become chords of their square.
pub fn random_square_graph(num_squares: usize, seed: u64) -> Result<SquareGraph> {
    if num_squares == 0 {
        return Err(Error::InvalidArgument("need at least one square".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let g = random_four_regular(num_squares, &mut rng)?;
        let dart_corner = random_corners(&g, &mut rng);
        let mut sg = MultiGraph::new(4 * num_squares);
        let squares: Vec<[EdgeId; 4]> = (0..num_squares)
            .map(|v| std::array::from_fn(|j| sg.add_edge(4 * v + j, 4 * v + (j + 1) % 4)))
            .collect();
        for e in 0..g.edge_count() {
            sg.add_edge(dart_corner[2 * e], dart_corner[2 * e + 1]);
        }
        if let Ok(sg) = SquareGraph::new(sg, squares) {
            return Ok(sg);
        }
    }
    Err(Error::GenerationFailed(MAX_GENERATION_ATTEMPTS))
}

/// Random square point with `num_squares` squares whose 1-paths have random
/// lengths in `[1, max_path_len]`, with nodes randomly relabelled.
pub fn random_square_point(num_squares: usize, max_path_len: usize, seed: u64) -> Result<HalfIntegerPoint> {
    if num_squares == 0 {
        return Err(Error::InvalidArgument("need at least one square".into()));
    }
    if max_path_len == 0 {
        return Err(Error::InvalidArgument("maximum path length must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let g = random_four_regular(num_squares, &mut rng)?;
        let dart_corner = random_corners(&g, &mut rng);
        let mut edges: Vec<(NodeId, NodeId, u8)> = Vec::new();
        for v in 0..num_squares {
            for j in 0..4 {
                edges.push((4 * v + j, 4 * v + (j + 1) % 4, 1));
            }
        }
        let mut n = 4 * num_squares;
        for e in 0..g.edge_count() {
            let len = rng.random_range(1..=max_path_len);
            let mut prev = dart_corner[2 * e];
            for _ in 1..len {
                edges.push((prev, n, 2));
                prev = n;
                n += 1;
            }
            edges.push((prev, dart_corner[2 * e + 1], 2));
        }
        let mut relabel: Vec<NodeId> = (0..n).collect();
        relabel.shuffle(&mut rng);
        let Ok(x) = HalfIntegerPoint::from_edges(n, edges.iter().map(|&(u, v, x2)| (relabel[u], relabel[v], x2)))
        else {
            continue;
        };
        if validate_subtour(&x).holds() && classify(&x).is_ok_and(|c| c.is_square()) {
            return Ok(x);
        }
    }
    Err(Error::GenerationFailed(MAX_GENERATION_ATTEMPTS))
}

/// Seed offset separating the cost stream from the structure stream.
const COST_SEED_OFFSET: u64 = 0x9e37_79b9_7f4a_7c15;

/// [`random_square_point`] with costs from [`random_costs`] on a seed derived
/// from `seed`.
pub fn random_square_instance(
    num_squares: usize,
    max_path_len: usize,
    max_cost: i64,
    seed: u64,
) -> Result<(HalfIntegerPoint, Vec<i64>)> {
    if max_cost < 0 {
        return Err(Error::InvalidArgument(format!("maximum cost {max_cost} is negative")));
    }
    let x = random_square_point(num_squares, max_path_len, seed)?;
    let costs = random_costs(&x, max_cost, seed ^ COST_SEED_OFFSET);
    Ok((x, costs))
}

/// Uniform random integer costs in `[0, max_cost]`, one per support edge.
pub fn random_costs(x: &HalfIntegerPoint, max_cost: i64, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..x.edge_count()).map(|_| rng.random_range(0..=max_cost)).collect()
}

/// The point with value 1 on `E ∖ H` and 1/2 on `H` for a simple cubic
/// 3-edge-connected graph `g` with Hamiltonian cycle `h`.
pub fn everywhere_instance(g: &MultiGraph, h: &[EdgeId]) -> Result<HalfIntegerPoint> {
    let n = g.node_count();
    if let Some(v) = (0..n).find(|&v| g.degree(v) != 3) {
        return Err(Error::InvalidArgument(format!("graph is not cubic at node {v}")));
    }
    if h.iter().any(|&e| e >= g.edge_count()) || cycle_order(g, h).is_none() {
        return Err(Error::InvalidArgument("H is not a Hamiltonian cycle of the graph".into()));
    }
    let unit = WeightedGraph::new(g.clone(), vec![1; g.edge_count()])?;
    let cut = global_min_cut(&unit)?;
    if cut.value < 3 {
        return Err(Error::InvalidArgument(format!(
            "graph is not 3-edge-connected (cut of {} edges)",
            cut.value
        )));
    }
    let mut in_h = vec![false; g.edge_count()];
    for &e in h {
        in_h[e] = true;
    }
    let x = HalfIntegerPoint::from_edges(n, g.edges().map(|(e, u, v)| (u, v, if in_h[e] { 1 } else { 2 })))?;
    let check = validate_subtour(&x);
    if !check.holds() {
        return Err(Error::InvalidPoint(check.to_string()));
    }
    Ok(x)
}

/// Node-weighted costs `c_uv = f_u + f_v` on the support of `x`.
pub fn node_weighted_costs(x: &HalfIntegerPoint, f: &[i64]) -> Result<Vec<i64>> {
    if f.len() != x.n() {
        return Err(Error::CostLength {
            expected: x.n(),
            got: f.len(),
        });
    }
    if let Some((node, &w)) = f.iter().enumerate().find(|(_, &w)| w < 0) {
        return Err(Error::InvalidArgument(format!("node {node} has negative weight {w}")));
    }
    Ok(x.edges().map(|(_, u, v, _)| f[u] + f[v]).collect())
}

/// A parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Point { point: HalfIntegerPoint, costs: Vec<i64> },
    Bitransition(BitransitionSystem),
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{tok}'")))
}

fn dart(line: usize, tok: &str) -> Result<Dart> {
    let (e, end) = tok
        .split_once('.')
        .ok_or_else(|| Error::parse(line, format!("invalid dart '{tok}', expected <edge>.<end>")))?;
    let end: u8 = number(line, end, "dart end")?;
    if end > 1 {
        return Err(Error::parse(line, format!("dart end {end} is not 0 or 1")));
    }
    Ok(Dart::new(number(line, e, "edge id")?, end))
}

/// Parses a `POINT` or `BTS` instance.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = tokens(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(0, "empty input"))?;
    if header.len() != 2 {
        return Err(Error::parse(line, "expected 'POINT <n>' or 'BTS <n>'"));
    }
    let n: usize = number(line, header[1], "node count")?;
    let mut ended = false;
    let result = match header[0] {
        "POINT" => {
            let mut edges: Vec<(NodeId, NodeId, u8, i64)> = Vec::new();
            let mut point = HalfIntegerPoint::new(n);
            for (line, toks) in lines.by_ref() {
                match (toks[0], toks.len()) {
                    ("END", 1) => {
                        ended = true;
                        break;
                    }
                    ("E", 5) => {
                        let u = number(line, toks[1], "node")?;
                        let v = number(line, toks[2], "node")?;
                        let x2 = number(line, toks[3], "x2")?;
                        let c: i64 = number(line, toks[4], "cost")?;
                        if c < 0 {
                            return Err(Error::parse(line, format!("negative cost {c}")));
                        }
                        point
                            .insert(u, v, x2)
                            .map_err(|e| Error::parse(line, e.to_string()))?;
                        edges.push((u, v, x2, c));
                    }
                    _ => return Err(Error::parse(line, "expected 'E <u> <v> <x2> <cost>' or 'END'")),
                }
            }
            let mut costs = vec![0; point.edge_count()];
            for (u, v, _, c) in edges {
                costs[point.edge_id(u, v).expect("inserted")] = c;
            }
            Instance::Point { point, costs }
        }
        "BTS" => {
            let mut g = MultiGraph::new(n);
            let mut forbidden: Vec<Option<[[Dart; 2]; 2]>> = vec![None; n];
            for (line, toks) in lines.by_ref() {
                match (toks[0], toks.len()) {
                    ("END", 1) => {
                        ended = true;
                        break;
                    }
                    ("E", 4) => {
                        let id: usize = number(line, toks[1], "edge id")?;
                        if id != g.edge_count() {
                            return Err(Error::parse(
                                line,
                                format!("edge id {id} out of sequence, expected {}", g.edge_count()),
                            ));
                        }
                        let u: usize = number(line, toks[2], "node")?;
                        let v: usize = number(line, toks[3], "node")?;
                        if u >= n || v >= n {
                            return Err(Error::parse(line, format!("node out of range 0..{n}")));
                        }
                        g.add_edge(u, v);
                    }
                    ("F", 6) => {
                        let v: usize = number(line, toks[1], "node")?;
                        if v >= n {
                            return Err(Error::parse(line, format!("node {v} out of range 0..{n}")));
                        }
                        if forbidden[v].is_some() {
                            return Err(Error::parse(line, format!("second forbidden pairing for node {v}")));
                        }
                        let d: Vec<Dart> = toks[2..].iter().map(|t| dart(line, t)).collect::<Result<_>>()?;
                        forbidden[v] = Some([[d[0], d[1]], [d[2], d[3]]]);
                    }
                    _ => return Err(Error::parse(line, "expected 'E <id> <u> <v>', 'F <v> <d1> <d2> <d3> <d4>' or 'END'")),
                }
            }
            let forbidden = forbidden
                .into_iter()
                .enumerate()
                .map(|(v, f)| f.ok_or_else(|| Error::InvalidBitransitionSystem(format!("node {v} has no forbidden pairing"))))
                .collect::<Result<Vec<_>>>()?;
            Instance::Bitransition(BitransitionSystem::new(g, forbidden)?)
        }
        other => return Err(Error::parse(line, format!("unknown section '{other}'"))),
    };
    if !ended {
        return Err(Error::parse(0, "missing END"));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "content after END"));
    }
    Ok(result)
}

/// Writes a point in support order.
pub fn serialize_point(x: &HalfIntegerPoint, costs: &[i64]) -> Result<String> {
    x.check_costs(costs)?;
    let mut out = format!("POINT {}\n", x.n());
    for (e, u, v, x2) in x.edges() {
        out.push_str(&format!("E {u} {v} {x2} {}\n", costs[e]));
    }
    out.push_str("END\n");
    Ok(out)
}

pub fn serialize_bts(sys: &BitransitionSystem) -> String {
    let g = sys.graph();
    let mut out = format!("BTS {}\n", g.node_count());
    for (e, u, v) in g.edges() {
        out.push_str(&format!("E {e} {u} {v}\n"));
    }
    for v in 0..g.node_count() {
        let [[a, b], [c, d]] = sys.forbidden(v);
        out.push_str(&format!("F {v} {a} {b} {c} {d}\n"));
    }
    out.push_str("END\n");
    out
}

pub fn serialize_instance(instance: &Instance) -> Result<String> {
    match instance {
        Instance::Point { point, costs } => serialize_point(point, costs),
        Instance::Bitransition(sys) => Ok(serialize_bts(sys)),
    }
}

/// Whether the support of `x` stays connected after contracting each square
/// to a single node.
pub fn squares_connected(x: &HalfIntegerPoint) -> Result<bool> {
    let dec = crate::halfpoint::decompose(x)?;
    let mut uf = UnionFind::new(x.n());
    for sq in &dec.squares {
        for w in sq.nodes.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for (_, u, v, x2) in x.edges() {
        if x2 == 2 {
            uf.union(u, v);
        }
    }
    let root = uf.find(0);
    Ok((0..x.n()).all(|v| uf.find(v) == root))
}
