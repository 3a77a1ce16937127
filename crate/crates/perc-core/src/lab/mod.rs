//! The percolation laboratory: Monte Carlo engines, moment bounds,
//! critical-value formulas and machine-checkable audits.

pub mod audits;
pub mod bounds;
pub mod critical;
pub mod diameter;
pub mod reach;

pub use audits::{
    kernel_bound_audit, minimality_audit, KernelPairCheck, KernelReport,
    MinimalityReport, QuasiMode, AUDIT_TOL,
};
pub use bounds::{
    bounds_table, first_moment_bound, second_moment_bound, second_moment_bound_uniform,
    BoundsReport, FirstMomentBound, KernelCertificate, MomentRow,
};
pub use critical::{critical_values, default_br_grid, figure_data, CriticalValuePair, Regime};
pub use diameter::{cluster_diameter_stats, DiameterMode, DiameterStats};
pub use reach::{reach_curve, simulate_reach, ReachEstimate, WILSON_Z};
