//! Node sets and the geometric predicates the bounds consume.

mod hyperplane;
mod pointset;
mod sets;

pub use hyperplane::{
    local_hyperplane_decomposition, point_hyperplane_distance, Hyperplane,
    LocalHyperplaneDecomposition, RESIDUAL_TOL, SEARCH_BUDGET,
};
pub use pointset::{lp_distance, wrap, PointSet, Space};
pub use sets::{
    detect_clumps, generic_exponents, local_sparsity, local_sparsity_of, min_separation,
    neighborhood, separated_partition, separated_partition_of, ClumpStructure,
};
