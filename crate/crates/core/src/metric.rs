//! Levenshtein distance over Unicode scalar values and pairwise distance matrices.
//!
//! The edit unit is a `char`, so letters such as `ȝ` and `þ` count as one
//! symbol each regardless of their UTF-8 width. Comparison is case-sensitive;
//! folding belongs to [`crate::corpus::Normalization`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer costs of the three edit operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EditCosts {
    insert: u32,
    delete: u32,
    substitute: u32,
}

impl EditCosts {
    /// Classical Levenshtein costs.
    pub const UNIT: EditCosts = EditCosts {
        insert: 1,
        delete: 1,
        substitute: 1,
    };

    /// Builds a cost triple, rejecting combinations that break symmetry or
    /// the triangle inequality.
    pub fn new(insert: u32, delete: u32, substitute: u32) -> Result<Self> {
        let reject = |reason| Error::InvalidCosts {
            insert,
            delete,
            substitute,
            reason,
        };
        if insert != delete {
            return Err(reject("insert and delete costs must be equal"));
        }
        if u64::from(substitute) > u64::from(insert) + u64::from(delete) {
            return Err(reject(
                "substitution must not cost more than insert + delete",
            ));
        }
        Ok(EditCosts {
            insert,
            delete,
            substitute,
        })
    }

    pub fn insert(&self) -> u32 {
        self.insert
    }

    pub fn delete(&self) -> u32 {
        self.delete
    }

    pub fn substitute(&self) -> u32 {
        self.substitute
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::UNIT
    }
}

impl Default for EditCosts {
    fn default() -> Self {
        Self::UNIT
    }
}

/// Minimal total edit cost turning `a` into `b`.
pub fn distance(a: &str, b: &str, costs: EditCosts) -> u64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    distance_chars(&a, &b, costs)
}

/// Same as [`distance`] over pre-split symbol sequences.
pub fn distance_chars(a: &[char], b: &[char], costs: EditCosts) -> u64 {
    let ins = u64::from(costs.insert);
    let del = u64::from(costs.delete);
    let sub = u64::from(costs.substitute);

    // Under unit costs a shared prefix or suffix never contributes.
    let (a, b) = if costs.is_unit() {
        let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        let (a, b) = (&a[prefix..], &b[prefix..]);
        let suffix = a
            .iter()
            .rev()
            .zip(b.iter().rev())
            .take_while(|(x, y)| x == y)
            .count();
        (&a[..a.len() - suffix], &b[..b.len() - suffix])
    } else {
        (a, b)
    };

    if a.is_empty() {
        return ins * b.len() as u64;
    }
    if b.is_empty() {
        return del * a.len() as u64;
    }

    let mut prev: Vec<u64> = (0..=b.len() as u64).map(|j| j * ins).collect();
    let mut cur = vec![0u64; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = (i as u64 + 1) * del;
        for (j, cb) in b.iter().enumerate() {
            let diag = prev[j] + if ca == cb { 0 } else { sub };
            let up = prev[j + 1] + del;
            let left = cur[j] + ins;
            cur[j + 1] = diag.min(up).min(left);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Symmetric matrix of pairwise distances, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    items: Vec<String>,
    values: Vec<u64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.values[i * self.items.len() + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        let n = self.items.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.values.chunks(self.items.len().max(1))
    }
}

/// Computes every pairwise distance among `items`.
///
/// Cells are filled in parallel; each cell is a pure function of its two
/// strings, so the result does not depend on scheduling.
pub fn distance_matrix<S: AsRef<str>>(items: &[S], costs: EditCosts) -> Result<DistanceMatrix> {
    if items.is_empty() {
        return Err(Error::Empty("item sequence"));
    }
    let n = items.len();
    let chars: Vec<Vec<char>> = items.iter().map(|s| s.as_ref().chars().collect()).collect();
    let upper: Vec<(usize, usize, u64)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let chars = &chars;
            (i + 1..n).map(move |j| (i, j, distance_chars(&chars[i], &chars[j], costs)))
        })
        .collect();
    let mut values = vec![0u64; n * n];
    for (i, j, d) in upper {
        values[i * n + j] = d;
        values[j * n + i] = d;
    }
    Ok(DistanceMatrix {
        items: items.iter().map(|s| s.as_ref().to_owned()).collect(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lev(a: &str, b: &str) -> u64 {
        distance(a, b, EditCosts::UNIT)
    }

    // Recursive definition, only usable on tiny inputs.
    fn naive(a: &[char], b: &[char]) -> u64 {
        match (a.split_first(), b.split_first()) {
            (None, _) => b.len() as u64,
            (_, None) => a.len() as u64,
            (Some((x, ra)), Some((y, rb))) => {
                if x == y {
                    naive(ra, rb)
                } else {
                    1 + naive(ra, b).min(naive(a, rb)).min(naive(ra, rb))
                }
            }
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(lev("old", "halde"), 3);
        assert_eq!(lev("brewers", "brueres"), 3);
        assert_eq!(lev("brewers", "breweres"), 1);
        assert_eq!(lev("", "abc"), 3);
        assert_eq!(lev("abc", ""), 3);
        assert_eq!(lev("", ""), 0);
        assert_eq!(lev("kitten", "sitting"), 3);
    }

    #[test]
    fn oracle_spot_checks() {
        for (a, b) in [("brewers", "breweres"), ("old", "halde"), ("ab", "ba")] {
            let a: Vec<char> = a.chars().collect();
            let b: Vec<char> = b.chars().collect();
            assert_eq!(distance_chars(&a, &b, EditCosts::UNIT), naive(&a, &b));
        }
    }

    #[test]
    fn middle_english_letters_are_single_symbols() {
        assert_eq!(lev("þat", "that"), 2);
        assert_eq!(lev("ȝe", "ye"), 1);
        assert_eq!(lev("beoþ", "beoth"), 2);
        assert_eq!(lev("ȝ", "þ"), 1);
    }

    #[test]
    fn case_sensitive() {
        assert_eq!(lev("Cokes", "cokes"), 1);
    }

    #[test]
    fn weighted_costs() {
        let c = EditCosts::new(2, 2, 3).unwrap();
        assert_eq!(distance("a", "b", c), 3);
        assert_eq!(distance("", "ab", c), 4);
        let c = EditCosts::new(1, 1, 2).unwrap();
        // substitution never beats delete + insert here
        assert_eq!(distance("ab", "ba", c), 2);
        assert_eq!(distance("abc", "xbc", c), 2);
    }

    #[test]
    fn rejects_non_metric_costs() {
        assert!(EditCosts::new(1, 2, 1).is_err());
        assert!(EditCosts::new(1, 1, 3).is_err());
        assert!(EditCosts::new(1, 1, 2).is_ok());
    }

    #[test]
    fn matrix_examples() {
        let m = distance_matrix(&["a"], EditCosts::UNIT).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(0, 0), 0);

        let m = distance_matrix(&["ab", "ba"], EditCosts::UNIT).unwrap();
        assert_eq!(m.row(0), &[0, 2]);
        assert_eq!(m.row(1), &[2, 0]);

        let empty: [&str; 0] = [];
        assert!(matches!(
            distance_matrix(&empty, EditCosts::UNIT),
            Err(Error::Empty(_))
        ));
    }

    #[test]
    fn matrix_independent_of_thread_count() {
        let items: Vec<String> = (0..30).map(|i| format!("w{}x{}", i * 7 % 11, i)).collect();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| distance_matrix(&items, EditCosts::UNIT).unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| distance_matrix(&items, EditCosts::UNIT).unwrap());
        assert_eq!(one, many);
    }

    fn word() -> impl Strategy<Value = String> {
        proptest::collection::vec(prop::sample::select(vec!['a', 'b', 'ȝ', 'þ', 'e']), 0..12)
            .prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn length_bounds(a in word(), b in word()) {
            let (la, lb) = (a.chars().count() as u64, b.chars().count() as u64);
            let d = lev(&a, &b);
            prop_assert!(la.abs_diff(lb) <= d);
            prop_assert!(d <= la.max(lb));
        }

        #[test]
        fn matrix_is_a_metric(items in proptest::collection::vec(word(), 1..8)) {
            let m = distance_matrix(&items, EditCosts::UNIT).unwrap();
            let n = m.len();
            for i in 0..n {
                prop_assert_eq!(m.get(i, i), 0);
                for j in 0..n {
                    prop_assert_eq!(m.get(i, j), m.get(j, i));
                    prop_assert_eq!(m.get(i, j), lev(&items[i], &items[j]));
                    for k in 0..n {
                        prop_assert!(m.get(i, j) <= m.get(i, k) + m.get(k, j));
                    }
                }
            }
        }

        #[test]
        fn affix_stripping_matches_naive(a in word(), b in word()) {
            let a: Vec<char> = a.chars().take(7).collect();
            let b: Vec<char> = b.chars().take(7).collect();
            prop_assert_eq!(distance_chars(&a, &b, EditCosts::UNIT), naive(&a, &b));
        }
    }
}
