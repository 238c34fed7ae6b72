//! A query-likelihood retrieval engine.
//!
//! The crate covers the whole path from raw trectext collections to ranked
//! results:
//!
//! - [`ingest`] parses trectext and runs the token pipeline
//!   (lowercasing, stopping, optional Porter2 stemming).
//! - [`index`] builds and reads an immutable on-disk index with a lexicon,
//!   forward index, and positional postings.
//! - [`query`] parses a small structured query language (`#combine`,
//!   `#weight`, `#N`, `#uwN`) into a [`QueryNode`] tree.
//! - [`retrieval`] scores documents under Dirichlet or Jelinek-Mercer
//!   smoothed query likelihood.
//!
//! Scoring is generic over the floating point type through [`Real`]; the
//! aliases below fix it to `f64`, which is what the CLI uses.

pub mod error;
pub mod index;
pub mod ingest;
pub mod query;
pub mod retrieval;
pub mod scalar;

pub use error::{Error, Result, SyntaxError};
pub use index::{build_index, open_index, CorpusStatistics, DocId, Index, Lexicon, PostingList, TermId};
pub use ingest::{parse_trectext, tokenize, RawDocument, Stemmer, TokenPipelineConfig};
pub use query::{parse, print_normal_form, QueryNode};
pub use retrieval::{
    execute, leaf_log_prob, make_snippet, parse_rules, score_document, window_tf, QueryEnvironment,
    QueryRequest, QueryResult, SmoothingRule,
};
pub use scalar::Real;

/// Default score type.
pub type Score = f64;
/// Smoothing rule over [`Score`].
pub type Rule = SmoothingRule<Score>;
/// Query request over [`Score`].
pub type Request = QueryRequest<Score>;
/// Ranked result over [`Score`].
pub type Hit = QueryResult<Score>;

/// Single precision variants, mostly useful for memory-bound reranking.
pub type Rule32 = SmoothingRule<f32>;
pub type Request32 = QueryRequest<f32>;
pub type Hit32 = QueryResult<f32>;
