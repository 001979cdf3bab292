//! The three manuscript studies built on the metric and Fréchet layers:
//! consensus reconstruction, group-variance comparison with a randomization
//! test, and medoid clustering of witnesses.

mod cluster;
mod randtest;
mod reconstruct;
mod variance;

pub use cluster::{
    cluster_witnesses, pam, pam_build, pam_swap, witness_matrix, Assignment, ClusterOptions,
    Clustering, PamResult,
};
pub use randtest::{
    randomization_test, replicate_table, RandTestConfig, RandTestReport, Replicate,
};
pub use reconstruct::{reconstruct_line, ReconstructionReport, SlotReport, CONSENSUS_CAP};
pub use variance::{
    group_variance, variance_ratios, GroupVariance, GroupVarianceReport, VarianceMode,
};

/// Separator placed between selected lines when a witness is treated as one
/// string. Never occurs inside a line.
pub const LINE_SEPARATOR: char = '\n';
