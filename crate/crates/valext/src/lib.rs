//! File formats, rendering and the command-line driver for `valext-core`.

pub mod parse;
pub mod render;
pub mod run;

pub use parse::{parse_poly, ParseError};
pub use render::{render_dot, render_json, render_table, report_json, ReportJson};
pub use run::{
    leaf_multiset, run, run_corpus, run_corpus_text, Base, CorpusCase, CorpusSummary, Efd, Format, RunConfig,
    RunError, RunOutput,
};
