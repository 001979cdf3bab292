use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edit costs ({insert}, {delete}, {substitute}) do not define a metric: {reason}")]
    InvalidCosts {
        insert: u32,
        delete: u32,
        substitute: u32,
        reason: &'static str,
    },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("objective overflowed: distance {distance} raised to power {power}")]
    Overflow { distance: u64, power: u32 },

    #[error("failed to read corpus {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("corpus is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed {record}: field `{field}` {problem}")]
    Malformed {
        record: String,
        field: &'static str,
        problem: String,
    },

    #[error("duplicate witness id `{0}`")]
    DuplicateWitness(String),

    #[error("witness `{id}` has invalid version label `{label}` (expected A, B or C)")]
    InvalidVersion { id: String, label: String },

    #[error("exclusion list names unknown witness `{0}`")]
    UnknownExclusion(String),

    #[error("witness `{id}` has {found} lines; line selection needs at least 6")]
    TooFewLines { id: String, found: usize },

    #[error("witness `{0}` is excluded")]
    Excluded(String),

    #[error("witness `{0}` has no version label")]
    Unlabeled(String),

    #[error("witness `{id}` has no line {line}")]
    NoSuchLine { id: String, line: usize },

    #[error("alignment needs at least 2 lines, got {0}")]
    TooFewVariants(usize),

    #[error("no included witnesses with version {0}")]
    EmptyGroup(char),

    #[error("variance of version B is zero; ratios are undefined")]
    DegenerateDenominator,

    #[error("replicate count must be at least 1")]
    NoReplicates,

    #[error("k = {k} is out of range for {n} witnesses")]
    BadK { k: usize, n: usize },

    #[error("clustering needs at least 2 included witnesses, got {0}")]
    TooFewWitnesses(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
