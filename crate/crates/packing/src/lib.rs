//! Anchored rectangle packings of finite point sets in the unit square.
//!
//! Given points `p_1, …, p_n` in `[0, 1]²` with the origin among them, an
//! anchored rectangle packing chooses one axis-aligned rectangle per point,
//! with the point as its lower-left corner, such that all rectangles lie in
//! the unit square and have pairwise disjoint interiors. The goal is to
//! cover as much area as possible.
//!
//! The crate provides, all in exact rational arithmetic:
//!
//! * [`tiling`]: a staircase tiling of the whole square with one tile per
//!   point, and the packing obtained by keeping each tile's largest anchored
//!   rectangle.
//! * [`greedy`]: largest-anchored-rectangle queries against obstacle sets
//!   and the greedy packing that places rectangles one point at a time.
//! * [`solver`]: an exact branch-and-bound optimum for small instances.
//! * [`generators`]: structured and random instances, including hyperbola
//!   staircase polygons and an adversarial sequence that drives greedy
//!   strategies to low coverage.
//! * [`bounds`]: floating-point evaluation of the coverage lower bound
//!   certified by the tiling analysis.
//! * [`diagnostics`]: per-tile quantities (aspect ratio, tip cuts, empty
//!   triangles) used to audit the coverage analysis on concrete instances.
//! * [`enclosure`]: certified rational interval enclosures of `e^z` for
//!   exact comparisons against transcendental thresholds.

pub mod bounds;
pub mod diagnostics;
pub mod enclosure;
pub mod error;
pub mod generators;
pub mod geom;
pub mod greedy;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod tiling;

pub use bounds::{
    beta_tile_fraction_bound, exp_integral_e1, integrated_lower_bound, optimize_bounds,
    simple_lower_bound, BoundOptimum, OptimizedBounds,
};
pub use diagnostics::{
    tile_diagnostics, verify_empty_triangles, Quadrilateral, TileDiagnostics, TileShape, Triangle,
};
pub use enclosure::{compare_with_exp, exp_enclosure};
pub use error::{Error, Result};
pub use generators::{
    adversarial_sequence, adversarial_sequence_with, densify, diagonal, hyperbola_staircase,
    permutation_grid, uniform_random, AdversaryLimits, AdversarySequence,
};
pub use geom::{
    find_interior_overlap, sweep_order, verify_packing, AnchoredPacking, Order, Point, PointSet,
    Rect, StaircasePolygon,
};
pub use greedy::{greedy_packing, is_pareto_optimal, max_anchored_empty_rect, pareto_violations};
pub use report::{Check, VerificationReport};
pub use scalar::Scalar;
pub use solver::{
    best_permutation, optimal_packing, optimal_packing_with, OptimalResult, SolverConfig,
};
pub use tiling::{compute_tiling, tile_packing, verify_tiling, Tiling};
