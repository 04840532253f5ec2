//! Batch front end: corpora, end-to-end kernelization runs, oracle-checked
//! soundness and CSV reports.

mod corpus;
mod report;

pub use corpus::{gen_corpus, grid_with_pendants, is_planar, random_planar, Corpus, CorpusParams, Family};
pub use report::{
    run_experiment, verify_kernel_soundness, ExperimentOptions, ExperimentReport, ExperimentRow, KChoice, KRange,
    SoundnessReport, SoundnessRow, CSV_HEADER,
};
pub use crate::graph::io::{parse_boundaried, parse_graph, write_boundaried, write_graph};
