use serde::{Deserialize, Serialize};

use crate::corpus::{select_lines, Corpus, Version};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::frechet::matrix_minimum;
use crate::metric::{distance_matrix, DistanceMatrix, EditCosts};

use super::LINE_SEPARATOR;

/// How the six selected lines of a witness enter the group variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarianceMode {
    /// Sum of the six per-position Fréchet variances.
    #[default]
    PerLineSum,
    /// One Fréchet variance over the six lines joined by a newline.
    Concatenated,
}

impl VarianceMode {
    pub fn name(&self) -> &'static str {
        match self {
            VarianceMode::PerLineSum => "per-line-sum",
            VarianceMode::Concatenated => "concatenated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupVariance {
    pub version: Version,
    pub size: usize,
    #[serde(with = "exact::serde_exact")]
    pub variance: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupVarianceReport {
    pub mode: VarianceMode,
    /// One entry per version present, in A, B, C order.
    pub groups: Vec<GroupVariance>,
}

impl GroupVarianceReport {
    /// Builds a report from known variances, e.g. published values.
    pub fn from_values(
        mode: VarianceMode,
        values: impl IntoIterator<Item = (Version, Rational)>,
    ) -> Self {
        let mut groups: Vec<GroupVariance> = values
            .into_iter()
            .map(|(version, variance)| GroupVariance {
                version,
                size: 0,
                variance,
            })
            .collect();
        groups.sort_by_key(|g| g.version);
        GroupVarianceReport { mode, groups }
    }

    pub fn variance(&self, version: Version) -> Option<&Rational> {
        self.groups
            .iter()
            .find(|g| g.version == version)
            .map(|g| &g.variance)
    }
}

/// Included witnesses with precomputed distance matrices, one per selected
/// line position (or a single one in concatenated mode).
pub(crate) struct Grouping {
    pub labels: Vec<Version>,
    matrices: Vec<DistanceMatrix>,
}

impl Grouping {
    pub fn new(corpus: &Corpus, mode: VarianceMode) -> Result<Self> {
        let norm = &corpus.normalization;
        let mut labels = Vec::new();
        let mut selected: Vec<Vec<String>> = Vec::new();
        for w in corpus.included() {
            let version = w.version.ok_or_else(|| Error::Unlabeled(w.id.clone()))?;
            let lines: Vec<String> = select_lines(w)?.iter().map(|l| norm.apply(l)).collect();
            labels.push(version);
            selected.push(lines);
        }
        if labels.is_empty() {
            return Err(Error::Empty("included witness set"));
        }
        let columns: Vec<Vec<String>> = match mode {
            VarianceMode::PerLineSum => (0..6)
                .map(|p| selected.iter().map(|s| s[p].clone()).collect())
                .collect(),
            VarianceMode::Concatenated => vec![selected
                .iter()
                .map(|s| s.join(&LINE_SEPARATOR.to_string()))
                .collect()],
        };
        let matrices = columns
            .iter()
            .map(|c| distance_matrix(c, EditCosts::UNIT))
            .collect::<Result<Vec<_>>>()?;
        Ok(Grouping { labels, matrices })
    }

    /// Variance of the witnesses carrying `version` under `labels`, or
    /// `None` when no witness carries it.
    pub fn variance(&self, labels: &[Version], version: Version) -> Result<Option<Rational>> {
        let members: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == version)
            .map(|(i, _)| i)
            .collect();
        if members.is_empty() {
            return Ok(None);
        }
        let mut total = 0u128;
        for m in &self.matrices {
            total += matrix_minimum(m, &members, 2)?;
        }
        Ok(Some(exact::ratio(total, members.len() as u128)))
    }

    pub fn report(&self, labels: &[Version], mode: VarianceMode) -> Result<GroupVarianceReport> {
        let mut groups = Vec::new();
        for version in Version::ALL {
            if let Some(variance) = self.variance(labels, version)? {
                groups.push(GroupVariance {
                    version,
                    size: labels.iter().filter(|v| **v == version).count(),
                    variance,
                });
            }
        }
        Ok(GroupVarianceReport { mode, groups })
    }
}

/// Fréchet variance of each version group over the selected lines of its
/// included witnesses.
pub fn group_variance(corpus: &Corpus, mode: VarianceMode) -> Result<GroupVarianceReport> {
    let grouping = Grouping::new(corpus, mode)?;
    grouping.report(&grouping.labels, mode)
}

/// `(Var(A)/Var(B), Var(C)/Var(B))`.
pub fn variance_ratios(report: &GroupVarianceReport) -> Result<(Rational, Rational)> {
    let get = |v: Version| report.variance(v).ok_or(Error::EmptyGroup(v.as_char()));
    let (a, b, c) = (get(Version::A)?, get(Version::B)?, get(Version::C)?);
    ratios(a, b, c).ok_or(Error::DegenerateDenominator)
}

pub(crate) fn ratios(a: &Rational, b: &Rational, c: &Rational) -> Option<(Rational, Rational)> {
    use num_traits::Zero;
    if b.is_zero() {
        return None;
    }
    Some((a / b, c / b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Normalization, Witness};
    use crate::frechet::frechet_variance;

    // Eleven-line witness whose selected lines are `six`.
    fn witness(id: &str, v: Version, six: [&str; 6]) -> Witness {
        let mut lines: Vec<String> = (0..11).map(|i| format!("filler {i}")).collect();
        for (slot, text) in [2, 3, 7, 8, 9, 10].into_iter().zip(six) {
            lines[slot] = text.to_owned();
        }
        Witness::new(id, Some(v), lines)
    }

    fn corpus(ws: Vec<Witness>) -> Corpus {
        Corpus::new(ws, Normalization::default()).unwrap()
    }

    #[test]
    fn identical_witnesses_have_zero_variance() {
        let six = ["a", "b", "c", "d", "e", "f"];
        let c = corpus(vec![
            witness("1", Version::B, six),
            witness("2", Version::B, six),
        ]);
        let r = group_variance(&c, VarianceMode::PerLineSum).unwrap();
        assert_eq!(r.variance(Version::B), Some(&exact::integer(0)));
        assert_eq!(r.variance(Version::A), None);
    }

    #[test]
    fn two_one_line_witnesses() {
        // only one position differs: "aa" vs "ab"
        let c = corpus(vec![
            witness("1", Version::A, ["aa", "x", "x", "x", "x", "x"]),
            witness("2", Version::A, ["ab", "x", "x", "x", "x", "x"]),
        ]);
        for mode in [VarianceMode::PerLineSum, VarianceMode::Concatenated] {
            let r = group_variance(&c, mode).unwrap();
            assert_eq!(r.variance(Version::A), Some(&exact::ratio(1, 2)));
        }
    }

    #[test]
    fn per_line_sum_matches_direct_variances() {
        let c = corpus(vec![
            witness(
                "1",
                Version::C,
                ["Brewers", "and", "bakers", "bochers", "and", "cokes"],
            ),
            witness(
                "2",
                Version::C,
                ["breweres", "&", "bakers", "bouchers", "and", "kokes"],
            ),
            witness(
                "3",
                Version::C,
                ["brueres", "and", "baxters", "bochers", "&", "cokes"],
            ),
        ]);
        let r = group_variance(&c, VarianceMode::PerLineSum).unwrap();
        let mut expected = exact::integer(0);
        for p in 0..6 {
            let col: Vec<String> = c
                .witnesses()
                .iter()
                .map(|w| select_lines(w).unwrap()[p].to_lowercase())
                .collect();
            expected += frechet_variance(&col, EditCosts::UNIT).unwrap();
        }
        assert_eq!(r.variance(Version::C), Some(&expected));

        let r = group_variance(&c, VarianceMode::Concatenated).unwrap();
        let joined: Vec<String> = c
            .witnesses()
            .iter()
            .map(|w| select_lines(w).unwrap().join("\n").to_lowercase())
            .collect();
        assert_eq!(
            r.variance(Version::C),
            Some(&frechet_variance(&joined, EditCosts::UNIT).unwrap())
        );
    }

    #[test]
    fn unlabeled_and_short_witnesses_are_rejected() {
        let c = corpus(vec![Witness::new(
            "U",
            None,
            (0..6).map(|i| i.to_string()).collect(),
        )]);
        assert!(matches!(
            group_variance(&c, VarianceMode::PerLineSum),
            Err(Error::Unlabeled(id)) if id == "U"
        ));
        let c = corpus(vec![Witness::new("S", Some(Version::A), vec!["x".into()])]);
        assert!(matches!(
            group_variance(&c, VarianceMode::PerLineSum),
            Err(Error::TooFewLines { id, .. }) if id == "S"
        ));
    }

    #[test]
    fn ratio_examples() {
        let v = |a, b, c| {
            GroupVarianceReport::from_values(
                VarianceMode::PerLineSum,
                [(Version::A, a), (Version::B, b), (Version::C, c)],
            )
        };
        let (ra, rc) =
            variance_ratios(&v(exact::integer(3), exact::integer(3), exact::integer(3))).unwrap();
        assert_eq!((ra, rc), (exact::integer(1), exact::integer(1)));
        let (ra, rc) = variance_ratios(&v(
            exact::ratio(10, 3),
            exact::ratio(5, 3),
            exact::ratio(5, 3),
        ))
        .unwrap();
        assert_eq!((ra, rc), (exact::integer(2), exact::integer(1)));
        assert!(matches!(
            variance_ratios(&v(exact::integer(1), exact::integer(0), exact::integer(1))),
            Err(Error::DegenerateDenominator)
        ));
        let missing = GroupVarianceReport::from_values(
            VarianceMode::PerLineSum,
            [
                (Version::A, exact::integer(1)),
                (Version::B, exact::integer(1)),
            ],
        );
        assert!(matches!(
            variance_ratios(&missing),
            Err(Error::EmptyGroup('C'))
        ));
    }
}
