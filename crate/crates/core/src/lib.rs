//! Statistics for string-valued data under edit distance.
//!
//! * [`metric`]: Levenshtein distance over Unicode scalar values and
//!   pairwise distance matrices.
//! * [`frechet`]: Fréchet means, medians and variances over attested
//!   candidates, with exact rational objectives.
//! * [`corpus`]: witness files, normalization, tokenization, word alignment.
//! * [`analysis`]: consensus reconstruction, group variances with a
//!   randomization test, and k-medoids clustering.
//! * [`report`]: JSON and plain-text rendering of results.

pub mod analysis;
pub mod corpus;
mod error;
pub mod exact;
pub mod frechet;
pub mod metric;
pub mod report;

pub use error::{Error, Result};
pub use exact::Rational;
