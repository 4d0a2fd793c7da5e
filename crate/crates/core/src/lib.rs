//! Half-integer points of the TSP subtour-elimination polytope.
//!
//! The crate validates and classifies half-integer points, computes
//! minimum-cost Hamiltonian cycles through the matching of a square graph
//! with a delta-matroid greedy, finds Eulerian trails avoiding forbidden
//! bitransitions, builds minimum-cost rainbow 1-trees by weighted matroid
//! intersection, solves minimum T-joins exactly, and runs the tour pipeline
//! whose output costs at most 10/7 of `c·x` on square points.
//!
//! All arithmetic is exact: point values are stored doubled (`x2`), the
//! auxiliary `y` vector is stored in sixths, and costs are `i64`.

pub mod cli;
pub mod deltamatroid;
pub mod error;
pub mod graph;
pub mod halfpoint;
pub mod instances;
pub mod kotzig;
pub mod oracles;
pub mod tjoin;
pub mod tour;
pub mod treesel;

pub use error::{Error, Result};
pub use graph::{Dart, DistanceMatrix, EdgeId, MultiGraph, NodeId, WeightedGraph};
pub use halfpoint::{HalfIntegerPoint, PointClass, SubtourCheck};
