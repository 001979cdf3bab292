//! JSON and aligned plain-text rendering of results.
//!
//! Every rational appears with its exact fraction and a 6-decimal rendering.

use serde::Serialize;

use crate::analysis::{Clustering, GroupVarianceReport, RandTestReport, ReconstructionReport};
use crate::exact::{self, Rational};
use crate::frechet::FrechetResult;
use crate::metric::DistanceMatrix;

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

/// Two-column key/value block with the keys padded to a common width.
#[derive(Debug, Default)]
pub struct Block {
    rows: Vec<(String, String)>,
}

impl Block {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn row(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            let pad = width - k.chars().count();
            out.push_str(k);
            out.push_str(&" ".repeat(pad + 2));
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

/// `n/d (x.xxxxxx)`
pub fn rational(value: &Rational) -> String {
    format!("{} ({})", exact::fraction(value), exact::decimal(value, 6))
}

pub fn frechet_plain(result: &FrechetResult, display: &[String]) -> String {
    let mut b = Block::new();
    b.row("power", result.power)
        .row("n", result.sample_size)
        .row("objective", rational(&result.objective));
    for m in display {
        b.row("minimizer", m);
    }
    b.render()
}

pub fn reconstruction_plain(report: &ReconstructionReport) -> String {
    let mut b = Block::new();
    b.row("power", report.power)
        .row("slots", report.template_length);
    for s in &report.slots {
        b.row(
            format!("slot {}", s.slot + 1),
            format!(
                "{}  f = {}",
                s.display.join(" | "),
                rational(&s.result.objective)
            ),
        );
    }
    for line in &report.consensus {
        b.row("consensus", line);
    }
    if report.capped {
        b.row(
            "capped",
            format!(
                "{} of {} lines shown",
                report.consensus.len(),
                report.consensus_total
            ),
        );
    }
    for line in &report.whole_line_display {
        b.row("whole-line mean", line);
    }
    b.row("whole-line f", rational(&report.whole_line.objective));
    b.render()
}

pub fn group_variance_plain(
    report: &GroupVarianceReport,
    ratios: Option<&(Rational, Rational)>,
) -> String {
    let mut b = Block::new();
    b.row("mode", report.mode.name());
    for g in &report.groups {
        b.row(
            format!("Var({})", g.version),
            format!("{}  n = {}", rational(&g.variance), g.size),
        );
    }
    if let Some((a, c)) = ratios {
        b.row("Var(A)/Var(B)", rational(a))
            .row("Var(C)/Var(B)", rational(c));
    }
    b.render()
}

pub fn randtest_plain(report: &RandTestReport) -> String {
    let mut out = group_variance_plain(
        &report.observed,
        Some(&(report.observed_a.clone(), report.observed_c.clone())),
    );
    let mut b = Block::new();
    b.row("seed", report.seed)
        .row("replicates", report.replicate_count)
        .row("exceedances", report.exceedance_count)
        .row("degenerate", report.degenerate_count)
        .row("p-value", rational(&report.p_value));
    out.push_str(&b.render());
    out
}

pub fn clustering_plain(c: &Clustering) -> String {
    let mut b = Block::new();
    b.row("k", c.k)
        .row("objective", c.objective)
        .row("swaps", c.trace.len() - 1);
    for (i, members) in c.members().iter().enumerate() {
        b.row(
            format!("cluster {i}"),
            format!("medoid {}: {}", c.medoids[i], members.join(" ")),
        );
    }
    b.render()
}

/// Tab-separated matrix with a header row of labels.
pub fn matrix_plain(labels: &[String], m: &DistanceMatrix) -> String {
    let mut out = String::new();
    out.push_str(&labels.join("\t"));
    out.push('\n');
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_aligns_values() {
        let mut b = Block::new();
        b.row("k", 4).row("objective", 12);
        assert_eq!(b.render(), "k          4\nobjective  12\n");
    }

    #[test]
    fn frechet_json_round_trips() {
        let r = FrechetResult {
            minimizers: vec!["breweres".into()],
            objective: exact::ratio(16, 14),
            power: 2,
            sample_size: 14,
        };
        let text = to_json(&r);
        assert!(text.contains("\"exact\": \"8/7\""));
        assert!(text.contains("\"decimal\": \"1.142857\""));
        let back: FrechetResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
