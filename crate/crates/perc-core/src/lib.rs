//! Exact and Monte Carlo analysis of k-independent site percolation on
//! rooted trees: Shearer-measure computations, line-process laws, the
//! tree-fission models built from them, and the moment-method machinery
//! that certifies percolation or nonpercolation at desk scale.

pub mod error;
pub mod fission;
pub mod graph;
pub mod lab;
pub mod line;
pub mod rng;
pub mod shearer;
pub mod tree;

pub use error::{PercError, Result};
pub use fission::{Dependence, ModelKind, ModelSpec, PercolationModel, PercolationSample};
pub use graph::{k_fuzz, FiniteGraph};
pub use lab::{
    bounds_table, cluster_diameter_stats, critical_values, figure_data,
    first_moment_bound, kernel_bound_audit, minimality_audit, reach_curve,
    second_moment_bound, simulate_reach, BoundsReport, CriticalValuePair,
    DiameterMode, DiameterStats, KernelReport, MinimalityReport, QuasiMode,
    ReachEstimate, Regime,
};
pub use line::{BitString, Constraint, LawSpec, LineLaw};
pub use shearer::{
    b_sequence, critical_function, curve_fk, curve_gk, curve_hk, minoration_fk,
    p_shearer_graph, p_shearer_kfuzz, p_shearer_line, shearer_conditional,
    shearer_event_prob, xi, CriticalSeries, XiValue,
};
pub use tree::{
    build_tree, cutset_sum, lambda_flow, Cutset, FlowAssignment, ImplicitTree,
    RootedTree, TreeSpec, TreeView,
};
