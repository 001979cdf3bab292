//! k-medoids (PAM) over witness edit distances.
//!
//! BUILD picks the point of least total distance, then repeatedly the point
//! giving the largest reduction of the objective. SWAP evaluates every
//! (medoid, non-medoid) exchange and applies the best one while it strictly
//! lowers the objective. The objective is the sum of unsquared distances to
//! the nearest medoid.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{select_lines, Corpus};
use crate::error::{Error, Result};
use crate::metric::{distance_matrix, DistanceMatrix, EditCosts};

use super::LINE_SEPARATOR;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterOptions {
    pub k: usize,
    pub seed: u64,
    /// Extra runs from random initial medoids, on top of the BUILD start.
    pub restarts: usize,
}

impl ClusterOptions {
    pub fn new(k: usize) -> Self {
        ClusterOptions {
            k,
            seed: 0,
            restarts: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PamResult {
    /// Point index of each cluster's medoid.
    pub medoids: Vec<usize>,
    /// Cluster index of every point.
    pub assignment: Vec<usize>,
    pub objective: u64,
    /// Objective after BUILD and after each applied swap.
    pub trace: Vec<u64>,
}

// Nearest medoid per point, ties to the lowest cluster index. A medoid
// always stays in its own cluster, even next to a duplicate medoid.
fn assign(matrix: &DistanceMatrix, medoids: &[usize]) -> (Vec<usize>, u64) {
    let mut total = 0;
    let assignment = (0..matrix.len())
        .map(|i| {
            if let Some(own) = medoids.iter().position(|&m| m == i) {
                return own;
            }
            let (cluster, d) = medoids
                .iter()
                .enumerate()
                .map(|(c, &m)| (c, matrix.get(i, m)))
                .min_by_key(|&(c, d)| (d, c))
                .expect("at least one medoid");
            total += d;
            cluster
        })
        .collect();
    (assignment, total)
}

fn cost(matrix: &DistanceMatrix, medoids: &[usize]) -> u64 {
    (0..matrix.len())
        .map(|i| medoids.iter().map(|&m| matrix.get(i, m)).min().unwrap_or(0))
        .sum()
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::BadK { k, n });
    }
    Ok(())
}

/// Greedy BUILD initialization.
pub fn pam_build(matrix: &DistanceMatrix, k: usize) -> Result<Vec<usize>> {
    let n = matrix.len();
    check_k(n, k)?;
    let first = (0..n)
        .min_by_key(|&c| (matrix.row(c).iter().sum::<u64>(), c))
        .expect("non-empty matrix");
    let mut medoids = vec![first];
    let mut nearest: Vec<u64> = matrix.row(first).to_vec();
    while medoids.len() < k {
        let best = (0..n)
            .filter(|c| !medoids.contains(c))
            .max_by_key(|&c| {
                let gain: u64 = (0..n)
                    .map(|j| nearest[j].saturating_sub(matrix.get(j, c)))
                    .sum();
                // largest gain, then lowest index
                (gain, std::cmp::Reverse(c))
            })
            .expect("k <= n leaves a candidate");
        for (j, d) in nearest.iter_mut().enumerate() {
            *d = (*d).min(matrix.get(j, best));
        }
        medoids.push(best);
    }
    Ok(medoids)
}

/// Best-improvement SWAP from the given medoids.
pub fn pam_swap(matrix: &DistanceMatrix, mut medoids: Vec<usize>) -> Result<PamResult> {
    let n = matrix.len();
    check_k(n, medoids.len())?;
    let mut current = cost(matrix, &medoids);
    let mut trace = vec![current];
    loop {
        let mut best: Option<(u64, usize, usize)> = None;
        for slot in 0..medoids.len() {
            for h in 0..n {
                if medoids.contains(&h) {
                    continue;
                }
                let old = medoids[slot];
                medoids[slot] = h;
                let c = cost(matrix, &medoids);
                medoids[slot] = old;
                if c < current && best.is_none_or(|(b, _, _)| c < b) {
                    best = Some((c, slot, h));
                }
            }
        }
        match best {
            Some((c, slot, h)) => {
                medoids[slot] = h;
                current = c;
                trace.push(c);
            }
            None => break,
        }
    }
    let (assignment, objective) = assign(matrix, &medoids);
    debug_assert_eq!(objective, current);
    Ok(PamResult {
        medoids,
        assignment,
        objective,
        trace,
    })
}

/// BUILD followed by SWAP, plus `restarts` runs from seeded random
/// medoids. The lowest objective wins; ties keep the earlier run.
pub fn pam(matrix: &DistanceMatrix, options: ClusterOptions) -> Result<PamResult> {
    let mut best = pam_swap(matrix, pam_build(matrix, options.k)?)?;
    for r in 0..options.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        rng.set_stream(r as u64);
        let start = rand::seq::index::sample(&mut rng, matrix.len(), options.k).into_vec();
        let run = pam_swap(matrix, start)?;
        if run.objective < best.objective {
            best = run;
        }
    }
    Ok(best)
}

/// Distance matrix over included witnesses, each represented by its
/// selected lines (normalized) joined with [`LINE_SEPARATOR`].
pub fn witness_matrix(corpus: &Corpus) -> Result<(Vec<String>, DistanceMatrix)> {
    let mut ids = Vec::new();
    let mut texts = Vec::new();
    for w in corpus.included() {
        let lines: Vec<String> = select_lines(w)?
            .iter()
            .map(|l| corpus.normalization.apply(l))
            .collect();
        ids.push(w.id.clone());
        texts.push(lines.join(&LINE_SEPARATOR.to_string()));
    }
    if ids.is_empty() {
        return Err(Error::Empty("included witness set"));
    }
    Ok((ids, distance_matrix(&texts, EditCosts::UNIT)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub id: String,
    pub cluster: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clustering {
    pub k: usize,
    /// One entry per included witness, in corpus order.
    pub assignments: Vec<Assignment>,
    /// Witness id of each cluster's medoid.
    pub medoids: Vec<String>,
    pub objective: u64,
    pub trace: Vec<u64>,
}

impl Clustering {
    pub fn cluster_of(&self, id: &str) -> Option<usize> {
        self.assignments
            .iter()
            .find(|a| a.id == id)
            .map(|a| a.cluster)
    }

    /// Witness ids per cluster.
    pub fn members(&self) -> Vec<Vec<&str>> {
        let mut out = vec![Vec::new(); self.k];
        for a in &self.assignments {
            out[a.cluster].push(a.id.as_str());
        }
        out
    }
}

pub fn cluster_witnesses(corpus: &Corpus, options: ClusterOptions) -> Result<Clustering> {
    let included = corpus.included().count();
    if included < 2 {
        return Err(Error::TooFewWitnesses(included));
    }
    check_k(included, options.k)?;
    let (ids, matrix) = witness_matrix(corpus)?;
    let result = pam(&matrix, options)?;
    Ok(Clustering {
        k: options.k,
        assignments: ids
            .iter()
            .zip(&result.assignment)
            .map(|(id, &cluster)| Assignment {
                id: id.clone(),
                cluster,
            })
            .collect(),
        medoids: result.medoids.iter().map(|&m| ids[m].clone()).collect(),
        objective: result.objective,
        trace: result.trace,
    })
}
