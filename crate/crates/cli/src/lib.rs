//! Command-line front end. Each subcommand parses its inputs, calls one
//! library operation and renders the result.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use editstat::analysis::{self, ClusterOptions, RandTestConfig, VarianceMode};
use editstat::corpus::{self, Corpus, Normalization, Version};
use editstat::frechet;
use editstat::metric::{self, EditCosts};
use editstat::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "editstat",
    version,
    about = "Edit-distance statistics for manuscript witnesses"
)]
pub struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Exponent applied to distances (2 = mean, 1 = median)
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    power: u32,

    /// Compare case-insensitively (default)
    #[arg(long = "fold-case", global = true, overrides_with = "no_fold_case")]
    fold_case: bool,

    /// Compare case-sensitively
    #[arg(long = "no-fold-case", global = true)]
    no_fold_case: bool,

    /// Treat "&" as "and" when comparing
    #[arg(long = "map-ampersand", global = true)]
    map_ampersand: bool,

    /// Ignore characters that are neither letters, digits nor whitespace
    #[arg(long = "strip-punctuation", global = true)]
    strip_punctuation: bool,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

impl Common {
    fn normalization(&self) -> Normalization {
        Normalization {
            fold_case: !self.no_fold_case,
            map_ampersand_to_and: self.map_ampersand,
            strip_punctuation: self.strip_punctuation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Machine-readable JSON
    Structured,
    /// Aligned columns
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    PerLineSum,
    Concatenated,
}

impl From<Mode> for VarianceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::PerLineSum => VarianceMode::PerLineSum,
            Mode::Concatenated => VarianceMode::Concatenated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    A,
    B,
    C,
}

impl From<Group> for Version {
    fn from(g: Group) -> Self {
        match g {
            Group::A => Version::A,
            Group::B => Version::B,
            Group::C => Version::C,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Edit distance between two strings
    Dist { a: String, b: String },
    /// Pairwise distance matrix over corpus witnesses or stdin lines
    Matrix {
        /// Corpus JSON file; reads one item per line from stdin when omitted
        corpus: Option<PathBuf>,
        /// Use only the six selected lines of each witness
        #[arg(long)]
        selected: bool,
    },
    /// Fréchet mean (or median with --power 1) of strings given inline or on stdin
    Mean {
        /// Strings to average; read one per line from stdin when omitted
        items: Vec<String>,
        /// Extra attested candidate; repeatable
        #[arg(long = "candidate")]
        candidates: Vec<String>,
    },
    /// Word-level and whole-line reconstruction of one line across witnesses
    Reconstruct {
        /// Corpus JSON file
        corpus: PathBuf,
        /// 1-based line number within each witness
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        line: u64,
        /// Restrict to one version group
        #[arg(long)]
        group: Option<Group>,
    },
    /// Fréchet variance of each version group
    Variance {
        /// Corpus JSON file
        corpus: PathBuf,
        /// How a witness's selected lines are combined
        #[arg(long = "variance-mode", value_enum, default_value_t = Mode::PerLineSum)]
        variance_mode: Mode,
    },
    /// Variance-ratio randomization test
    Randtest {
        /// Corpus JSON file
        corpus: PathBuf,
        /// Number of random relabelings
        #[arg(long = "R", default_value_t = 5000)]
        replicates: usize,
        /// Seed for the relabeling generator
        #[arg(long)]
        seed: u64,
        /// How a witness's selected lines are combined
        #[arg(long = "variance-mode", value_enum, default_value_t = Mode::PerLineSum)]
        variance_mode: Mode,
        /// Write the replicate ratio table (TSV) to this file
        #[arg(long = "replicates-out")]
        replicates_out: Option<PathBuf>,
    },
    /// k-medoids clustering of witnesses
    Cluster {
        /// Corpus JSON file
        corpus: PathBuf,
        /// Number of clusters
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Seed for the random restarts
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Additional runs from random initial medoids
        #[arg(long, default_value_t = 0)]
        restarts: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Data(String),
}

impl From<editstat::Error> for Failure {
    fn from(e: editstat::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Parses `args` (including the program name), runs the subcommand and
/// writes the report to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return status;
        }
    };
    match execute(&cli, stdin) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_DATA
            }
        },
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}

fn load(path: &Path, common: &Common) -> Result<Corpus, Failure> {
    Ok(corpus::load_corpus(path)?.with_normalization(common.normalization()))
}

fn read_items(stdin: &mut dyn BufRead) -> Result<Vec<String>, Failure> {
    let mut items = Vec::new();
    for line in stdin.lines() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if !line.trim().is_empty() {
            items.push(line.to_owned());
        }
    }
    Ok(items)
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead) -> Outcome {
    let common = &cli.common;
    let norm = common.normalization();
    let structured = common.format == Format::Structured;
    match &cli.command {
        Command::Dist { a, b } => {
            let d = metric::distance(&norm.apply(a), &norm.apply(b), EditCosts::UNIT);
            Ok(if structured {
                report::to_json(&json!({ "a": a, "b": b, "distance": d }))
            } else {
                format!("{d}\n")
            })
        }
        Command::Matrix { corpus, selected } => {
            let (labels, matrix) = match corpus {
                Some(path) => {
                    let c = load(path, common)?;
                    if *selected {
                        analysis::witness_matrix(&c)?
                    } else {
                        let (ids, texts): (Vec<String>, Vec<String>) = c
                            .included()
                            .map(|w| (w.id.clone(), norm.apply(&w.lines.join("\n"))))
                            .unzip();
                        (ids, metric::distance_matrix(&texts, EditCosts::UNIT)?)
                    }
                }
                None => {
                    let items = read_items(stdin)?;
                    let texts: Vec<String> = items.iter().map(|s| norm.apply(s)).collect();
                    (items, metric::distance_matrix(&texts, EditCosts::UNIT)?)
                }
            };
            Ok(if structured {
                let values: Vec<&[u64]> = matrix.rows().collect();
                report::to_json(&json!({ "labels": labels, "values": values }))
            } else {
                report::matrix_plain(&labels, &matrix)
            })
        }
        Command::Mean { items, candidates } => {
            let items = if items.is_empty() {
                read_items(stdin)?
            } else {
                items.clone()
            };
            let data: Vec<String> = items.iter().map(|s| norm.apply(s)).collect();
            let mut pool = data.clone();
            pool.extend(candidates.iter().map(|c| norm.apply(c)));
            let result = frechet::frechet_minimizers(&data, &pool, common.power, EditCosts::UNIT)?;
            let originals = items.iter().chain(candidates);
            let normalized: Vec<String> = originals.clone().map(|s| norm.apply(s)).collect();
            let display: Vec<String> = result
                .minimizers
                .iter()
                .map(|m| {
                    corpus::display_form(
                        m,
                        originals
                            .clone()
                            .map(String::as_str)
                            .zip(normalized.iter().map(String::as_str)),
                    )
                })
                .collect();
            Ok(if structured {
                report::to_json(&json!({ "result": result, "display": display }))
            } else {
                report::frechet_plain(&result, &display)
            })
        }
        Command::Reconstruct {
            corpus,
            line,
            group,
        } => {
            let c = load(corpus, common)?;
            let index = (*line - 1) as usize;
            let mut variants = Vec::new();
            for w in c.included() {
                if group.is_some_and(|g| w.version != Some(g.into())) {
                    continue;
                }
                let text = w
                    .lines
                    .get(index)
                    .ok_or_else(|| editstat::Error::NoSuchLine {
                        id: w.id.clone(),
                        line: *line as usize,
                    })?;
                variants.push(text.clone());
            }
            let r = analysis::reconstruct_line(&variants, &norm, common.power)?;
            Ok(if structured {
                report::to_json(&r)
            } else {
                report::reconstruction_plain(&r)
            })
        }
        Command::Variance {
            corpus,
            variance_mode,
        } => {
            let c = load(corpus, common)?;
            let r = analysis::group_variance(&c, (*variance_mode).into())?;
            let ratios = analysis::variance_ratios(&r).ok();
            Ok(if structured {
                let ratios = ratios.as_ref().map(|(a, c)| {
                    json!({
                        "r_a": { "exact": a.to_string(), "decimal": editstat::exact::decimal(a, 6) },
                        "r_c": { "exact": c.to_string(), "decimal": editstat::exact::decimal(c, 6) },
                    })
                });
                report::to_json(&json!({ "variances": r, "ratios": ratios }))
            } else {
                report::group_variance_plain(&r, ratios.as_ref())
            })
        }
        Command::Randtest {
            corpus,
            replicates,
            seed,
            variance_mode,
            replicates_out,
        } => {
            let c = load(corpus, common)?;
            let config = RandTestConfig {
                replicates: *replicates,
                seed: *seed,
                mode: (*variance_mode).into(),
            };
            let r = analysis::randomization_test(&c, config)?;
            if let Some(path) = replicates_out {
                fs::write(path, analysis::replicate_table(&r))
                    .map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(if structured {
                report::to_json(&r)
            } else {
                report::randtest_plain(&r)
            })
        }
        Command::Cluster {
            corpus,
            k,
            seed,
            restarts,
        } => {
            let c = load(corpus, common)?;
            let r = analysis::cluster_witnesses(
                &c,
                ClusterOptions {
                    k: *k,
                    seed: *seed,
                    restarts: *restarts,
                },
            )?;
            Ok(if structured {
                report::to_json(&r)
            } else {
                report::clustering_plain(&r)
            })
        }
    }
}
