//! Witness excerpts: loading, normalization, tokenization and word alignment.
//!
//! A corpus file is JSON:
//!
//! ```json
//! {
//!   "witnesses": [
//!     { "id": "I", "version": "A", "lines": ["...", "..."] }
//!   ],
//!   "excluded": [ { "id": "IX", "reason": "missing the last line" } ]
//! }
//! ```
//!
//! Entries of `excluded` may also be bare id strings.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::metric::{self, EditCosts};

/// Version label of a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Version {
    A,
    B,
    C,
}

impl Version {
    pub const ALL: [Version; 3] = [Version::A, Version::B, Version::C];

    pub fn parse(label: &str) -> Option<Version> {
        match label {
            "A" => Some(Version::A),
            "B" => Some(Version::B),
            "C" => Some(Version::C),
            _ => None,
        }
    }

    pub fn as_char(&self) -> char {
        match self {
            Version::A => 'A',
            Version::B => 'B',
            Version::C => 'C',
        }
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub reason: Option<String>,
}

/// One manuscript excerpt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub id: String,
    pub version: Option<Version>,
    pub lines: Vec<String>,
    pub excluded: Option<Exclusion>,
}

impl Witness {
    pub fn new(id: impl Into<String>, version: Option<Version>, lines: Vec<String>) -> Self {
        Witness {
            id: id.into(),
            version,
            lines,
            excluded: None,
        }
    }

    pub fn is_excluded(&self) -> bool {
        self.excluded.is_some()
    }
}

/// Comparison-form normalization. Original text is never modified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub fold_case: bool,
    pub map_ampersand_to_and: bool,
    pub strip_punctuation: bool,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization {
            fold_case: true,
            map_ampersand_to_and: false,
            strip_punctuation: false,
        }
    }
}

impl Normalization {
    /// No change at all.
    pub const NONE: Normalization = Normalization {
        fold_case: false,
        map_ampersand_to_and: false,
        strip_punctuation: false,
    };

    /// Comparison form of `text`: case folding, then `&` to `and`, then
    /// removal of every character that is neither alphanumeric nor
    /// whitespace.
    pub fn apply(&self, text: &str) -> String {
        let mut out = if self.fold_case {
            text.to_lowercase()
        } else {
            text.to_owned()
        };
        if self.map_ampersand_to_and {
            out = out.replace('&', "and");
        }
        if self.strip_punctuation {
            out.retain(|c| c.is_alphanumeric() || c.is_whitespace());
        }
        out
    }
}

/// An ordered set of witnesses with the normalization used for comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    witnesses: Vec<Witness>,
    pub normalization: Normalization,
}

impl Corpus {
    pub fn new(witnesses: Vec<Witness>, normalization: Normalization) -> Result<Self> {
        let mut seen = HashSet::new();
        for w in &witnesses {
            if !seen.insert(w.id.as_str()) {
                return Err(Error::DuplicateWitness(w.id.clone()));
            }
        }
        Ok(Corpus {
            witnesses,
            normalization,
        })
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn included(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.is_excluded())
    }

    pub fn get(&self, id: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.id == id)
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    /// Parses a corpus document.
    pub fn from_json_str(text: &str) -> Result<Corpus> {
        let root: Value = serde_json::from_str(text)?;
        let root = root.as_object().ok_or_else(|| Error::Malformed {
            record: "corpus".into(),
            field: "witnesses",
            problem: "top level must be an object".into(),
        })?;
        let records = root
            .get("witnesses")
            .ok_or_else(|| malformed("corpus".into(), "witnesses", "is missing"))?
            .as_array()
            .ok_or_else(|| malformed("corpus".into(), "witnesses", "must be an array"))?;

        let mut witnesses = Vec::with_capacity(records.len());
        let mut seen = HashSet::new();
        for (index, record) in records.iter().enumerate() {
            let witness = parse_witness(index, record)?;
            if !seen.insert(witness.id.clone()) {
                return Err(Error::DuplicateWitness(witness.id));
            }
            witnesses.push(witness);
        }

        if let Some(excluded) = root.get("excluded") {
            let entries = excluded
                .as_array()
                .ok_or_else(|| malformed("corpus".into(), "excluded", "must be an array"))?;
            for (index, entry) in entries.iter().enumerate() {
                let record = format!("exclusion record {index}");
                let (id, reason) = match entry {
                    Value::String(id) => (id.clone(), None),
                    Value::Object(map) => {
                        let id = map
                            .get("id")
                            .ok_or_else(|| malformed(record.clone(), "id", "is missing"))?
                            .as_str()
                            .ok_or_else(|| malformed(record.clone(), "id", "must be a string"))?
                            .to_owned();
                        let reason = match map.get("reason") {
                            None | Some(Value::Null) => None,
                            Some(Value::String(r)) => Some(r.clone()),
                            Some(_) => return Err(malformed(record, "reason", "must be a string")),
                        };
                        (id, reason)
                    }
                    _ => return Err(malformed(record, "id", "must be a string or an object")),
                };
                let witness = witnesses
                    .iter_mut()
                    .find(|w| w.id == id)
                    .ok_or_else(|| Error::UnknownExclusion(id.clone()))?;
                witness.excluded = Some(Exclusion { reason });
            }
        }

        for w in &witnesses {
            if w.lines.is_empty() && !w.is_excluded() {
                return Err(malformed(
                    format!("witness `{}`", w.id),
                    "lines",
                    "must not be empty",
                ));
            }
        }
        Corpus::new(witnesses, Normalization::default())
    }
}

fn malformed(record: String, field: &'static str, problem: &str) -> Error {
    Error::Malformed {
        record,
        field,
        problem: problem.to_owned(),
    }
}

fn parse_witness(index: usize, record: &Value) -> Result<Witness> {
    let name = format!("witness record {index}");
    let map = record
        .as_object()
        .ok_or_else(|| malformed(name.clone(), "id", "record must be an object"))?;
    let id = map
        .get("id")
        .ok_or_else(|| malformed(name.clone(), "id", "is missing"))?
        .as_str()
        .ok_or_else(|| malformed(name.clone(), "id", "must be a string"))?
        .to_owned();
    let version = match map.get("version") {
        None | Some(Value::Null) => None,
        Some(Value::String(label)) => {
            Some(Version::parse(label).ok_or_else(|| Error::InvalidVersion {
                id: id.clone(),
                label: label.clone(),
            })?)
        }
        Some(other) => {
            return Err(Error::InvalidVersion {
                id,
                label: other.to_string(),
            })
        }
    };
    let name = format!("witness record {index} (`{id}`)");
    let lines = map
        .get("lines")
        .ok_or_else(|| malformed(name.clone(), "lines", "is missing"))?
        .as_array()
        .ok_or_else(|| malformed(name.clone(), "lines", "must be an array of strings"))?
        .iter()
        .enumerate()
        .map(|(i, line)| {
            line.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Malformed {
                    record: name.clone(),
                    field: "lines",
                    problem: format!("entry {i} is not a string"),
                })
        })
        .collect::<Result<Vec<String>>>()?;
    Ok(Witness {
        id,
        version,
        lines,
        excluded: None,
    })
}

/// Reads a corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    Corpus::from_json_str(&text)
}

/// A word with its comparison form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub original: String,
    pub normalized: String,
}

/// Splits on runs of whitespace. Tokens whose comparison form is empty
/// (possible only when stripping punctuation) are dropped.
pub fn tokenize(line: &str, normalization: &Normalization) -> Vec<Token> {
    line.split_whitespace()
        .map(|w| Token {
            original: w.to_owned(),
            normalized: normalization.apply(w),
        })
        .filter(|t| !t.normalized.is_empty())
        .collect()
}

/// Lines at positions 3 and 4 (1-based) followed by the last four lines.
pub fn select_lines(witness: &Witness) -> Result<Vec<&str>> {
    if witness.is_excluded() {
        return Err(Error::Excluded(witness.id.clone()));
    }
    let n = witness.lines.len();
    if n < 6 {
        return Err(Error::TooFewLines {
            id: witness.id.clone(),
            found: n,
        });
    }
    Ok([2, 3, n - 4, n - 3, n - 2, n - 1]
        .iter()
        .map(|&i| witness.lines[i].as_str())
        .collect())
}

/// Mapping from template word slots to token indices of each line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenAlignment {
    pub template_length: usize,
    /// Index of the line whose token count defined the template.
    pub reference: usize,
    /// `slots[line][slot]` is the index of the token of `line` placed in
    /// `slot`, if any.
    pub slots: Vec<Vec<Option<usize>>>,
}

impl TokenAlignment {
    /// Tokens of `line` that were not placed in any slot.
    pub fn unaligned(&self, line: usize, token_count: usize) -> Vec<usize> {
        let used: HashSet<usize> = self.slots[line].iter().flatten().copied().collect();
        (0..token_count).filter(|i| !used.contains(i)).collect()
    }

    /// Tokens filling `slot`, in line order.
    pub fn column<'a>(&self, lines: &'a [Vec<Token>], slot: usize) -> Vec<&'a Token> {
        self.slots
            .iter()
            .zip(lines)
            .filter_map(|(row, tokens)| row[slot].map(|i| &tokens[i]))
            .collect()
    }
}

// Most frequent token count; ties go to the count seen first.
fn modal_count(lines: &[Vec<Token>]) -> usize {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    let mut first_seen: Vec<usize> = Vec::new();
    for l in lines {
        let c = counts.entry(l.len()).or_insert(0);
        if *c == 0 {
            first_seen.push(l.len());
        }
        *c += 1;
    }
    let mut best = first_seen[0];
    for &len in &first_seen[1..] {
        if counts[&len] > counts[&best] {
            best = len;
        }
    }
    best
}

// Global alignment of `line` against `reference`. Substituting u for v costs
// their edit distance; leaving a token or a slot unmatched costs its length.
fn align_to_reference(line: &[Token], reference: &[Token]) -> Vec<Option<usize>> {
    let (n, m) = (line.len(), reference.len());
    let len = |t: &Token| t.normalized.chars().count() as u64;
    let sub: Vec<Vec<u64>> = line
        .iter()
        .map(|u| {
            reference
                .iter()
                .map(|v| metric::distance(&u.normalized, &v.normalized, EditCosts::UNIT))
                .collect()
        })
        .collect();

    let mut cost = vec![vec![0u64; m + 1]; n + 1];
    for i in 1..=n {
        cost[i][0] = cost[i - 1][0] + len(&line[i - 1]);
    }
    for j in 1..=m {
        cost[0][j] = cost[0][j - 1] + len(&reference[j - 1]);
    }
    for i in 1..=n {
        for j in 1..=m {
            cost[i][j] = (cost[i - 1][j - 1] + sub[i - 1][j - 1])
                .min(cost[i - 1][j] + len(&line[i - 1]))
                .min(cost[i][j - 1] + len(&reference[j - 1]));
        }
    }

    // Traceback preference: match, then skip a line token, then skip a slot.
    let mut slots = vec![None; m];
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && cost[i][j] == cost[i - 1][j - 1] + sub[i - 1][j - 1] {
            slots[j - 1] = Some(i - 1);
            i -= 1;
            j -= 1;
        } else if i > 0 && cost[i][j] == cost[i - 1][j] + len(&line[i - 1]) {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    slots
}

/// Aligns tokenized lines into word slots.
///
/// The template length is the modal token count. Lines with that count are
/// aligned positionally; every other line is aligned against the first
/// modal-count line by minimum-cost token alignment.
pub fn align_tokens(lines: &[Vec<Token>]) -> Result<TokenAlignment> {
    if lines.len() < 2 {
        return Err(Error::TooFewVariants(lines.len()));
    }
    let template_length = modal_count(lines);
    let reference = lines
        .iter()
        .position(|l| l.len() == template_length)
        .expect("modal count is attained");
    let slots = lines
        .iter()
        .map(|l| {
            if l.len() == template_length {
                (0..template_length).map(Some).collect()
            } else {
                align_to_reference(l, &lines[reference])
            }
        })
        .collect();
    Ok(TokenAlignment {
        template_length,
        reference,
        slots,
    })
}

/// Reporting form for a normalized value: the most frequent original form
/// among `pairs` whose comparison form equals `normalized`, ties broken by
/// first occurrence. Falls back to `normalized` itself.
pub fn display_form<'a, I>(normalized: &str, pairs: I) -> String
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (position, (original, norm)) in pairs.into_iter().enumerate() {
        if norm == normalized {
            counts.entry(original).or_insert((0, position)).0 += 1;
        }
    }
    counts
        .into_iter()
        .max_by(|(_, (ca, pa)), (_, (cb, pb))| ca.cmp(cb).then(pb.cmp(pa)))
        .map(|(original, _)| original.to_owned())
        .unwrap_or_else(|| normalized.to_owned())
}
