//! Exact tools for covering integer point sets with parallel hyperplanes and
//! for building integer sensing matrices from their difference sets.
//!
//! * [`linalg`]: fraction-free rank and determinant, canonical kernel vectors.
//! * [`pointset`]: the sets `S_n`, covering numbers with certificates.
//! * [`graphs`]: bipartite graphs, girth, greedy high-girth generation.
//! * [`sensing`]: difference matrices, exhaustive sparse-sensing checks,
//!   exact sparse recovery.
//! * [`planks`]: projections, exact widths in dimensions 1 to 3, gap and
//!   plank bounds.
//!
//! All correctness-bearing arithmetic is on arbitrary-precision integers and
//! rationals.

pub mod budget;
pub mod error;
pub mod graphs;
pub mod json;
pub mod linalg;
pub mod planks;
pub mod pointset;
pub mod sensing;

pub use budget::{binomial, Budget, DEFAULT_SUBSET_BUDGET};
pub use error::{Error, Result};
pub use graphs::{
    complete_bipartite, edge_bound, girth, greedy_girth_graph, support_check_bruteforce,
    BipartiteGraph, EdgeOrder, Girth,
};
pub use linalg::{
    columns_independent, determinant, kernel_vector, rank, solve_on_columns, IntMatrix,
    KernelVector, Solve,
};
pub use planks::{
    check_gap_bound, hull_contains, max_gap, min_projection_direction, plank_witness, project,
    width_exact, width_upper_bound, width_with_direction, Direction, Gap, GapBoundReport,
    PlankWitness, ProjectionProfile, WidthUpperBound, WidthValue,
};
pub use pointset::{
    build_sn, coverable_by, covering_number, covering_upper_bound, grid_bound_check, CoverClass,
    CoveringCertificate, GridBoundReport, PointSet,
};
pub use sensing::{
    assemble_matrix, build_corollary_matrix, difference_set, point_column_matrix, recover,
    theorem_matrix1_converse, theorem_matrix1_forward, verify_sensing, ConverseReport,
    CorollaryBuild, DifferenceSet, ForwardReport, GraphMethod, Partition, SensingReport,
};
