//! Fréchet means, medians and variances over a finite candidate pool.
//!
//! For data `x_1..x_n` and a candidate `c` the objective is
//! `f(c) = (1/n) Σ d(x_i, c)^p`. Power 2 gives the Fréchet mean and its
//! minimum value is the Fréchet variance; power 1 gives the median analogue.
//! Minimization is a full scan over the candidates, and every candidate that
//! attains the minimum is reported.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::metric::{self, DistanceMatrix, EditCosts};

/// Power and normalization of the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoweredObjective {
    power: u32,
    normalized: bool,
}

impl PoweredObjective {
    pub fn new(power: u32, normalized: bool) -> Result<Self> {
        if power == 0 {
            return Err(Error::ZeroPower);
        }
        Ok(PoweredObjective { power, normalized })
    }

    /// Squared distances, divided by n.
    pub fn mean() -> Self {
        PoweredObjective {
            power: 2,
            normalized: true,
        }
    }

    /// Unsquared distances, divided by n.
    pub fn median() -> Self {
        PoweredObjective {
            power: 1,
            normalized: true,
        }
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }
}

/// Minimizing candidates with the exact minimum value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrechetResult {
    /// Sorted by code point, never empty.
    pub minimizers: Vec<String>,
    #[serde(with = "exact::serde_exact")]
    pub objective: Rational,
    pub power: u32,
    pub sample_size: usize,
}

impl FrechetResult {
    pub fn is_unique(&self) -> bool {
        self.minimizers.len() == 1
    }
}

pub(crate) fn powered(distance: u64, power: u32) -> Result<u128> {
    u128::from(distance)
        .checked_pow(power)
        .ok_or(Error::Overflow { distance, power })
}

fn add(total: u128, term: u128, distance: u64, power: u32) -> Result<u128> {
    total
        .checked_add(term)
        .ok_or(Error::Overflow { distance, power })
}

/// Distinct values of `data` in code-point order.
pub fn support<S: AsRef<str>>(data: &[S]) -> Vec<String> {
    multiplicities(data)
        .into_keys()
        .map(str::to_owned)
        .collect()
}

fn multiplicities<S: AsRef<str>>(data: &[S]) -> BTreeMap<&str, u128> {
    let mut counts = BTreeMap::new();
    for x in data {
        *counts.entry(x.as_ref()).or_insert(0u128) += 1;
    }
    counts
}

// Σ_i d(x_i, c)^p over distinct data values weighted by multiplicity.
fn powered_sum(
    candidate: &[char],
    distinct: &[(Vec<char>, u128)],
    power: u32,
    costs: EditCosts,
) -> Result<u128> {
    let mut total = 0u128;
    for (x, count) in distinct {
        let d = metric::distance_chars(x, candidate, costs);
        let term = powered(d, power)?
            .checked_mul(*count)
            .ok_or(Error::Overflow { distance: d, power })?;
        total = add(total, term, d, power)?;
    }
    Ok(total)
}

fn finish(sum: u128, n: usize, objective: PoweredObjective) -> Rational {
    if objective.normalized {
        exact::ratio(sum, n as u128)
    } else {
        exact::integer(sum)
    }
}

/// Evaluates the objective at a single candidate.
pub fn objective_at<S: AsRef<str>>(
    candidate: &str,
    data: &[S],
    objective: PoweredObjective,
    costs: EditCosts,
) -> Result<Rational> {
    if data.is_empty() {
        return Err(Error::Empty("data"));
    }
    let distinct: Vec<(Vec<char>, u128)> = multiplicities(data)
        .into_iter()
        .map(|(x, c)| (x.chars().collect(), c))
        .collect();
    let c: Vec<char> = candidate.chars().collect();
    let sum = powered_sum(&c, &distinct, objective.power, costs)?;
    Ok(finish(sum, data.len(), objective))
}

/// Scans every candidate and returns all that minimize the normalized
/// objective of the given power.
pub fn frechet_minimizers<S: AsRef<str>, T: AsRef<str>>(
    data: &[S],
    candidates: &[T],
    power: u32,
    costs: EditCosts,
) -> Result<FrechetResult> {
    if data.is_empty() {
        return Err(Error::Empty("data"));
    }
    if candidates.is_empty() {
        return Err(Error::Empty("candidate set"));
    }
    let objective = PoweredObjective::new(power, true)?;
    let distinct: Vec<(Vec<char>, u128)> = multiplicities(data)
        .into_iter()
        .map(|(x, c)| (x.chars().collect(), c))
        .collect();
    let pool = support(candidates);
    let sums = pool
        .par_iter()
        .map(|c| {
            let c: Vec<char> = c.chars().collect();
            powered_sum(&c, &distinct, power, costs)
        })
        .collect::<Result<Vec<u128>>>()?;
    let best = *sums.iter().min().expect("candidate pool is non-empty");
    let minimizers = pool
        .into_iter()
        .zip(&sums)
        .filter(|(_, s)| **s == best)
        .map(|(c, _)| c)
        .collect();
    Ok(FrechetResult {
        minimizers,
        objective: finish(best, data.len(), objective),
        power,
        sample_size: data.len(),
    })
}

/// Fréchet mean with the attested support of `data` as the candidate pool.
pub fn frechet_mean<S: AsRef<str>>(data: &[S], costs: EditCosts) -> Result<FrechetResult> {
    frechet_minimizers(data, data, 2, costs)
}

/// Minimum of the normalized squared objective over the support of `data`.
pub fn frechet_variance<S: AsRef<str>>(data: &[S], costs: EditCosts) -> Result<Rational> {
    Ok(frechet_mean(data, costs)?.objective)
}

/// Unnormalized minimum `min_c Σ_i d(x_i, c)^p` where both the data and the
/// candidates are the rows of `matrix` listed in `members`.
///
/// Equivalent to scanning the support of the selected strings, but reuses
/// precomputed distances; the randomization test calls this thousands of
/// times per run.
pub fn matrix_minimum(matrix: &DistanceMatrix, members: &[usize], power: u32) -> Result<u128> {
    if members.is_empty() {
        return Err(Error::Empty("data"));
    }
    if power == 0 {
        return Err(Error::ZeroPower);
    }
    let mut best = u128::MAX;
    for &c in members {
        let row = matrix.row(c);
        let mut total = 0u128;
        for &i in members {
            let d = row[i];
            total = add(total, powered(d, power)?, d, power)?;
        }
        best = best.min(total);
    }
    Ok(best)
}
