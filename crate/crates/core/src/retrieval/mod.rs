//! Query-likelihood ranking.
//!
//! A document's score is the log probability of the query leaves under the
//! document's smoothed language model. `#combine` averages its children,
//! `#weight` takes a weighted mean with weights normalized to sum to one,
//! and windows act as leaves whose frequency is their match count.

mod rules;
mod score;
mod smoothing;
mod snippet;
mod window;

use std::collections::BTreeSet;

use rayon::prelude::*;

pub use rules::{parse_rules, SmoothingRule, DEFAULT_MU};
pub use score::{score_document, PreparedQuery};
pub use smoothing::{collection_probability, leaf_log_prob};
pub use snippet::{make_snippet, SNIPPET_WIDTH};
pub use window::{ordered_matches, unordered_matches, window_tf, Window, WindowKind};

use crate::error::{Error, Result};
use crate::index::{DocId, Index};
use crate::query::{parse, QueryNode};
use crate::scalar::Real;

pub const DEFAULT_RESULTS_REQUESTED: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct QueryRequest<F = f64> {
    pub root: QueryNode,
    pub rules: SmoothingRule<F>,
    /// When set, exactly these documents are scored, matching or not.
    pub document_set: Option<BTreeSet<DocId>>,
    pub results_requested: usize,
    pub include_snippets: bool,
}

impl<F: Real> QueryRequest<F> {
    pub fn new(root: QueryNode) -> Self {
        Self {
            root,
            rules: SmoothingRule::default(),
            document_set: None,
            results_requested: DEFAULT_RESULTS_REQUESTED,
            include_snippets: false,
        }
    }

    pub fn rules(mut self, rules: SmoothingRule<F>) -> Self {
        self.rules = rules;
        self
    }

    pub fn document_set<I: IntoIterator<Item = DocId>>(mut self, docs: I) -> Self {
        self.document_set = Some(docs.into_iter().collect());
        self
    }

    pub fn results_requested(mut self, k: usize) -> Self {
        self.results_requested = k;
        self
    }

    pub fn include_snippets(mut self, yes: bool) -> Self {
        self.include_snippets = yes;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult<F = f64> {
    pub doc: DocId,
    pub score: F,
    pub snippet: Option<String>,
}

/// Ranks documents for `request`: score descending, then internal id ascending.
pub fn execute<F: Real>(request: &QueryRequest<F>, index: &Index) -> Result<Vec<QueryResult<F>>> {
    if let Some(set) = &request.document_set {
        if let Some(&id) = set.iter().find(|&&id| !index.contains_document(id)) {
            return Err(Error::InvalidDocumentSet {
                id,
                base: index.document_base(),
                max: index.maximum_document(),
            });
        }
    }
    let prepared = PreparedQuery::new(&request.root, index)?;
    let candidates: Vec<DocId> = match &request.document_set {
        Some(set) => set.iter().copied().collect(),
        None => prepared.matching_documents()?,
    };

    let mut scored: Vec<(DocId, F)> = candidates
        .par_iter()
        .map(|&doc| prepared.score(doc, &request.rules).map(|s| (doc, s)))
        .collect::<Result<_>>()?;
    scored.sort_unstable_by(|a, b| b.1.partial_cmp(&a.1).expect("scores are finite").then(a.0.cmp(&b.0)));
    scored.truncate(request.results_requested);

    scored
        .into_iter()
        .map(|(doc, score)| {
            let snippet = if request.include_snippets {
                let tokens = index.terms(doc)?;
                let matches: Vec<u32> = tokens
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| prepared.term_ids().binary_search(t).is_ok())
                    .map(|(p, _)| p as u32)
                    .collect();
                Some(make_snippet(&tokens, &matches, index.lexicon(), SNIPPET_WIDTH))
            } else {
                None
            };
            Ok(QueryResult { doc, score, snippet })
        })
        .collect()
}

/// An index paired with a smoothing rule, mirroring a scripting-style API.
#[derive(Debug)]
pub struct QueryEnvironment<'i, F = f64> {
    index: &'i Index,
    rules: SmoothingRule<F>,
}

impl<'i, F: Real> QueryEnvironment<'i, F> {
    /// Builds an environment from rule strings. The engine has a single
    /// field, so at most one rule is accepted; none means the default.
    pub fn new<S: AsRef<str>>(index: &'i Index, rules: &[S]) -> Result<Self> {
        let rules = match rules {
            [] => SmoothingRule::default(),
            [one] => parse_rules(one.as_ref())?,
            _ => return Err(Error::Rule(format!("expected one rule, got {}", rules.len()))),
        };
        Ok(Self { index, rules })
    }

    pub fn rules(&self) -> &SmoothingRule<F> {
        &self.rules
    }

    /// Parses `text` with the index's pipeline and runs it.
    pub fn query(
        &self,
        text: &str,
        document_set: Option<&[DocId]>,
        results_requested: usize,
        include_snippets: bool,
    ) -> Result<Vec<QueryResult<F>>> {
        let root = parse(text, self.index.pipeline())?;
        let mut request = QueryRequest::new(root)
            .rules(self.rules)
            .results_requested(results_requested)
            .include_snippets(include_snippets);
        if let Some(docs) = document_set {
            request = request.document_set(docs.iter().copied());
        }
        execute(&request, self.index)
    }
}

impl Index {
    /// Runs `text` with the default rule (Dirichlet, mu = 2500) and returns
    /// `(doc, score)` pairs.
    pub fn query(&self, text: &str) -> Result<Vec<(DocId, f64)>> {
        let env = QueryEnvironment::<f64>::new::<&str>(self, &[])?;
        Ok(env
            .query(text, None, DEFAULT_RESULTS_REQUESTED, false)?
            .into_iter()
            .map(|r| (r.doc, r.score))
            .collect())
    }
}
