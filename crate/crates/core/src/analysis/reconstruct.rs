use serde::{Deserialize, Serialize};

use crate::corpus::{align_tokens, display_form, tokenize, Normalization, Token};
use crate::error::Result;
use crate::frechet::{frechet_minimizers, FrechetResult};
use crate::metric::EditCosts;

/// Maximum number of assembled consensus lines.
pub const CONSENSUS_CAP: usize = 64;

/// Fréchet result for one word slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotReport {
    pub slot: usize,
    /// Minimizers over comparison forms.
    pub result: FrechetResult,
    /// Original-case form reported for each minimizer.
    pub display: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub power: u32,
    pub template_length: usize,
    pub slots: Vec<SlotReport>,
    /// Cartesian product of the per-slot minimizers, at most
    /// [`CONSENSUS_CAP`] lines, first slot varying slowest.
    pub consensus: Vec<String>,
    /// Size of the full product before capping.
    pub consensus_total: u128,
    pub capped: bool,
    pub whole_line: FrechetResult,
    pub whole_line_display: Vec<String>,
}

/// Word-level and whole-line Fréchet reconstruction of one poetic line.
pub fn reconstruct_line<S: AsRef<str>>(
    variants: &[S],
    normalization: &Normalization,
    power: u32,
) -> Result<ReconstructionReport> {
    let costs = EditCosts::UNIT;
    let tokens: Vec<Vec<Token>> = variants
        .iter()
        .map(|v| tokenize(v.as_ref(), normalization))
        .collect();
    let alignment = align_tokens(&tokens)?;

    let mut slots = Vec::with_capacity(alignment.template_length);
    for slot in 0..alignment.template_length {
        let column = alignment.column(&tokens, slot);
        let forms: Vec<&str> = column.iter().map(|t| t.normalized.as_str()).collect();
        let result = frechet_minimizers(&forms, &forms, power, costs)?;
        let display = result
            .minimizers
            .iter()
            .map(|m| {
                display_form(
                    m,
                    column
                        .iter()
                        .map(|t| (t.original.as_str(), t.normalized.as_str())),
                )
            })
            .collect();
        slots.push(SlotReport {
            slot,
            result,
            display,
        });
    }

    let consensus_total = slots
        .iter()
        .map(|s| s.display.len() as u128)
        .fold(1u128, |acc, n| acc.saturating_mul(n));
    let consensus = assemble(&slots, CONSENSUS_CAP);

    let normalized: Vec<String> = variants
        .iter()
        .map(|v| normalization.apply(v.as_ref()))
        .collect();
    let whole_line = frechet_minimizers(&normalized, &normalized, power, costs)?;
    let whole_line_display = whole_line
        .minimizers
        .iter()
        .map(|m| {
            display_form(
                m,
                variants
                    .iter()
                    .zip(&normalized)
                    .map(|(o, n)| (o.as_ref(), n.as_str())),
            )
        })
        .collect();

    Ok(ReconstructionReport {
        power,
        template_length: alignment.template_length,
        capped: consensus_total > consensus.len() as u128,
        slots,
        consensus,
        consensus_total,
        whole_line,
        whole_line_display,
    })
}

fn assemble(slots: &[SlotReport], cap: usize) -> Vec<String> {
    let mut lines = Vec::new();
    let mut index = vec![0usize; slots.len()];
    loop {
        if lines.len() == cap {
            break;
        }
        let words: Vec<&str> = slots
            .iter()
            .zip(&index)
            .map(|(s, &i)| s.display[i].as_str())
            .collect();
        lines.push(words.join(" "));

        // odometer, last slot fastest
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return lines;
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < slots[pos].display.len() {
                break;
            }
            index[pos] = 0;
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact;

    #[test]
    fn identical_variants() {
        let v = ["ȝe þat beoþ mene", "ȝe þat beoþ mene"];
        let r = reconstruct_line(&v, &Normalization::default(), 2).unwrap();
        assert_eq!(r.consensus, ["ȝe þat beoþ mene"]);
        assert!(r
            .slots
            .iter()
            .all(|s| s.result.objective == exact::integer(0)));
        assert_eq!(r.whole_line.objective, exact::integer(0));
        assert_eq!(r.whole_line_display, ["ȝe þat beoþ mene"]);
    }

    #[test]
    fn ties_multiply_consensus_lines() {
        // each slot is a two-way tie
        let v = ["a c", "b d"];
        let r = reconstruct_line(&v, &Normalization::default(), 2).unwrap();
        assert_eq!(r.consensus, ["a c", "a d", "b c", "b d"]);
        assert_eq!(r.consensus_total, 4);
        assert!(!r.capped);
    }

    #[test]
    fn consensus_is_capped() {
        // seven slots, each a two-way tie: 128 combinations
        let v = ["a a a a a a a", "b b b b b b b"];
        let r = reconstruct_line(&v, &Normalization::default(), 2).unwrap();
        assert_eq!(r.consensus_total, 128);
        assert_eq!(r.consensus.len(), CONSENSUS_CAP);
        assert!(r.capped);
        assert_eq!(r.consensus[0], "a a a a a a a");
        assert_eq!(r.consensus[1], "a a a a a a b");
    }

    #[test]
    fn display_keeps_original_case() {
        let v = ["Cokes", "Cokes", "cokes", "kokes"];
        let r = reconstruct_line(&v, &Normalization::default(), 2).unwrap();
        assert_eq!(r.slots[0].result.minimizers, ["cokes"]);
        assert_eq!(r.consensus, ["Cokes"]);
    }

    #[test]
    fn needs_two_variants() {
        assert!(reconstruct_line(&["one"], &Normalization::default(), 2).is_err());
    }
}
