//! Variance-ratio randomization test.
//!
//! Version labels are permuted over the included witnesses (group sizes
//! fixed) and `Var(A)/Var(B)`, `Var(C)/Var(B)` recomputed for each
//! permutation. A replicate exceeds the observed pair when both ratios are
//! strictly larger. Replicate `r` shuffles with a ChaCha stream derived from
//! `(seed, r)`, so the report does not depend on thread scheduling.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Version};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};

use super::variance::{ratios, Grouping};
use super::{GroupVarianceReport, VarianceMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandTestConfig {
    pub replicates: usize,
    pub seed: u64,
    pub mode: VarianceMode,
}

impl RandTestConfig {
    pub fn new(replicates: usize, seed: u64) -> Self {
        RandTestConfig {
            replicates,
            seed,
            mode: VarianceMode::default(),
        }
    }
}

/// Ratios for one permutation. Both are `None` when the permuted B group
/// has zero variance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replicate {
    #[serde(with = "exact::serde_exact::option")]
    pub r_a: Option<Rational>,
    #[serde(with = "exact::serde_exact::option")]
    pub r_c: Option<Rational>,
}

impl Replicate {
    pub fn is_degenerate(&self) -> bool {
        self.r_a.is_none()
    }

    /// Strictly larger in both coordinates; degenerate replicates never
    /// exceed.
    pub fn exceeds(&self, observed_a: &Rational, observed_c: &Rational) -> bool {
        match (&self.r_a, &self.r_c) {
            (Some(a), Some(c)) => a > observed_a && c > observed_c,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandTestReport {
    pub seed: u64,
    pub replicate_count: usize,
    pub observed: GroupVarianceReport,
    #[serde(with = "exact::serde_exact")]
    pub observed_a: Rational,
    #[serde(with = "exact::serde_exact")]
    pub observed_c: Rational,
    pub exceedance_count: usize,
    pub degenerate_count: usize,
    #[serde(with = "exact::serde_exact")]
    pub p_value: Rational,
    pub replicates: Vec<Replicate>,
}

fn shuffled(labels: &[Version], seed: u64, replicate: usize) -> Vec<Version> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    let mut out = labels.to_vec();
    out.shuffle(&mut rng);
    out
}

fn replicate(grouping: &Grouping, labels: &[Version]) -> Result<Replicate> {
    let get = |v: Version| -> Result<Rational> {
        grouping
            .variance(labels, v)?
            .ok_or(Error::EmptyGroup(v.as_char()))
    };
    let (a, b, c) = (get(Version::A)?, get(Version::B)?, get(Version::C)?);
    Ok(match ratios(&a, &b, &c) {
        Some((r_a, r_c)) => Replicate {
            r_a: Some(r_a),
            r_c: Some(r_c),
        },
        None => Replicate {
            r_a: None,
            r_c: None,
        },
    })
}

pub fn randomization_test(corpus: &Corpus, config: RandTestConfig) -> Result<RandTestReport> {
    if config.replicates == 0 {
        return Err(Error::NoReplicates);
    }
    let grouping = Grouping::new(corpus, config.mode)?;
    let observed = grouping.report(&grouping.labels, config.mode)?;
    let (observed_a, observed_c) = super::variance_ratios(&observed)?;

    let replicates = (0..config.replicates)
        .into_par_iter()
        .map(|r| replicate(&grouping, &shuffled(&grouping.labels, config.seed, r)))
        .collect::<Result<Vec<_>>>()?;

    let exceedance_count = replicates
        .iter()
        .filter(|r| r.exceeds(&observed_a, &observed_c))
        .count();
    let degenerate_count = replicates.iter().filter(|r| r.is_degenerate()).count();
    Ok(RandTestReport {
        seed: config.seed,
        replicate_count: config.replicates,
        observed,
        p_value: exact::ratio(exceedance_count as u128, config.replicates as u128),
        observed_a,
        observed_c,
        exceedance_count,
        degenerate_count,
        replicates,
    })
}

/// Tab-separated replicate table for plotting: index, decimal ratios, exact
/// ratios. Degenerate replicates show `NA`.
pub fn replicate_table(report: &RandTestReport) -> String {
    let mut out = String::from("replicate\tr_a\tr_c\tr_a_exact\tr_c_exact\n");
    let cell = |v: &Option<Rational>| match v {
        Some(v) => (exact::decimal(v, 6), exact::fraction(v)),
        None => ("NA".to_owned(), "NA".to_owned()),
    };
    for (i, r) in report.replicates.iter().enumerate() {
        let (a, a_exact) = cell(&r.r_a);
        let (c, c_exact) = cell(&r.r_c);
        writeln!(out, "{i}\t{a}\t{c}\t{a_exact}\t{c_exact}").unwrap();
    }
    out
}
