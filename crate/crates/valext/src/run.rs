//! Run configuration, single runs and the corpus regression runner.

use std::fmt::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use valext_core::basefield::{PAdicRationals, RationalFunctions, ValuedField};
use valext_core::extend::{enumerate_extensions, ExtensionReport, Options};
use valext_core::Error;

use crate::parse::{parse_poly, ParseError};
use crate::render::{render_dot, render_json, render_table};

pub const EXIT_SUCCESS: i32 = 0;
/// Bad input: unparsable polynomial, non-prime `p`, non-squarefree `f`, corpus failures.
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_NON_TERMINATION: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    #[default]
    Q,
    Fpt,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Dot,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Q => "q",
            Base::Fpt => "fpt",
        }
    }
}

fn yes() -> bool {
    true
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub base: Base,
    pub p: u64,
    pub poly: String,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub max_augmentations: Option<usize>,
    #[serde(default = "yes")]
    pub check_invariants: bool,
    #[serde(default)]
    pub parallel: bool,
}

impl RunConfig {
    pub fn new(base: Base, p: u64, poly: impl Into<String>) -> Self {
        RunConfig {
            base,
            p,
            poly: poly.into(),
            format: Format::Table,
            seed: 0,
            max_augmentations: None,
            check_invariants: true,
            parallel: false,
        }
    }

    pub fn options(&self) -> Options {
        Options {
            seed: self.seed,
            max_augmentations: self.max_augmentations,
            check_invariants: self.check_invariants,
            parallel: self.parallel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("cannot parse polynomial: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Core(Error::InvariantViolation { .. }) => EXIT_INVARIANT,
            RunError::Core(Error::NonTermination { .. }) => EXIT_NON_TERMINATION,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// `(e, f, d)` of one extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Efd {
    pub e: u64,
    pub f: u64,
    #[serde(default = "one")]
    pub d: u64,
}

/// Parses the polynomial of `config` and enumerates its extensions over `field`.
pub fn enumerate<K: ValuedField>(field: &K, config: &RunConfig) -> Result<ExtensionReport<K>, RunError> {
    let f = parse_poly(&config.poly, field)?;
    Ok(enumerate_extensions(field, &f, &config.options())?)
}

fn render<K: ValuedField>(field: &K, config: &RunConfig) -> Result<String, RunError> {
    let report = enumerate(field, config)?;
    Ok(match config.format {
        Format::Table => render_table(field, &report),
        Format::Json => render_json(field, &report),
        Format::Dot => render_dot(field, &report),
    })
}

fn efd_multiset<K: ValuedField>(field: &K, config: &RunConfig) -> Result<Vec<Efd>, RunError> {
    let mut v: Vec<Efd> = enumerate(field, config)?.leaves.iter().map(|l| Efd { e: l.e, f: l.f, d: l.d }).collect();
    v.sort();
    Ok(v)
}

/// The rendered output of `config`, or the error that stopped it.
pub fn render_config(config: &RunConfig) -> Result<String, RunError> {
    match config.base {
        Base::Q => render(&PAdicRationals::new(config.p)?, config),
        Base::Fpt => render(&RationalFunctions::new(config.p)?, config),
    }
}

/// The sorted leaf multiset of `config`.
pub fn leaf_multiset(config: &RunConfig) -> Result<Vec<Efd>, RunError> {
    match config.base {
        Base::Q => efd_multiset(&PAdicRationals::new(config.p)?, config),
        Base::Fpt => efd_multiset(&RationalFunctions::new(config.p)?, config),
    }
}

pub fn run(config: &RunConfig) -> RunOutput {
    match render_config(config) {
        Ok(stdout) => RunOutput { code: EXIT_SUCCESS, stdout, stderr: String::new() },
        Err(e) => RunOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCase {
    #[serde(flatten)]
    pub config: RunConfig,
    pub expect: Vec<Efd>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusSummary {
    pub passed: usize,
    pub failed: usize,
    /// One line per case, in input order.
    pub lines: Vec<String>,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            EXIT_SUCCESS
        } else {
            EXIT_INPUT
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        let _ = writeln!(out, "{}/{} pass", self.passed, self.passed + self.failed);
        out
    }
}

fn show(v: &[Efd]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("({},{},{})", x.e, x.f, x.d)).collect();
    format!("{{{}}}", items.join(", "))
}

/// Runs every record of a line-delimited JSON corpus. Blank lines are skipped.
pub fn run_corpus_text(text: &str) -> Result<CorpusSummary, CorpusError> {
    let mut cases = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let case: CorpusCase =
            serde_json::from_str(line).map_err(|e| CorpusError::Malformed { line: i + 1, message: e.to_string() })?;
        cases.push((i + 1, case));
    }
    let results: Vec<(bool, String)> = cases
        .par_iter()
        .map(|(line, case)| {
            let c = &case.config;
            let head = format!("line {line}: {} p={} {}", c.base.name(), c.p, c.poly);
            let mut expect = case.expect.clone();
            expect.sort();
            match leaf_multiset(c) {
                Ok(got) if got == expect => (true, format!("pass {head}")),
                Ok(got) => (false, format!("FAIL {head}: expected {} got {}", show(&expect), show(&got))),
                Err(e) => (false, format!("FAIL {head}: {e}")),
            }
        })
        .collect();
    let mut summary = CorpusSummary::default();
    for (ok, line) in results {
        if ok {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        summary.lines.push(line);
    }
    Ok(summary)
}

pub fn run_corpus(path: &Path) -> Result<CorpusSummary, CorpusError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CorpusError::Io { path: path.display().to_string(), source })?;
    run_corpus_text(&text)
}
