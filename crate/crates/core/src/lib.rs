//! Sanitization of sequences: hide every occurrence of a set of sensitive
//! length-k patterns while keeping the order and frequency of the others.
//!
//! The minimal-length pipeline runs [`tfs`], then [`pfs`], then [`mcsr`]
//! to obtain a string over the original alphabet. The minimal-edit-distance
//! variant is [`etfs`]. [`eval`] holds the greedy baseline, utility metrics
//! and property verifiers; [`oracles`] holds brute-force references for small
//! instances.

pub mod alphabet;
pub mod error;
pub mod etfs;
pub mod eval;
mod grams;
pub mod instance;
pub mod kmer;
pub mod mcsr;
pub mod oracles;
pub mod pfs;
pub mod pipeline;
pub mod tfs;

pub use alphabet::{tokenize, Alphabet, Sym, TokenMode, SEP, SEP_TOKEN};
pub use error::{Error, Result};
pub use instance::{contains_sensitive, PatternSet, SanitizationInstance, SensitiveSpec};
pub use kmer::{kmer_counts, KmerIndex};
pub use pipeline::{run_pipeline, CostSpec, Pipeline, PipelineOptions, PipelineOutput};
pub use tfs::{tfs_compact, tfs_sanitize, CompactTfs, SanitizedString, Segment};
