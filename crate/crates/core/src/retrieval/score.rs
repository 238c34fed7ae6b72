use std::collections::BTreeSet;

use super::rules::SmoothingRule;
use super::smoothing::leaf_log_prob;
use super::window::{ordered_matches, term_multiplicities, unordered_matches, Window, WindowKind};
use crate::error::Result;
use crate::index::{DocId, Index, PostingList, TermId};
use crate::query::QueryNode;
use crate::scalar::Real;

/// Collection-level statistics of one leaf, gathered once per query.
#[derive(Debug, Clone)]
struct LeafStats {
    cf: u64,
    /// `(doc, tf)` for every document with `tf > 0`, sorted by doc.
    tf: Vec<(DocId, u64)>,
}

impl LeafStats {
    fn tf(&self, doc: DocId) -> u64 {
        self.tf.binary_search_by_key(&doc, |&(d, _)| d).map_or(0, |i| self.tf[i].1)
    }
}

#[derive(Debug, Clone)]
enum Plan<F> {
    Leaf(usize),
    Combine(Vec<Plan<F>>),
    /// Weights already divided by their sum.
    Weight(Vec<(F, Plan<F>)>),
}

/// A query tree bound to an index: leaves resolved to term statistics and
/// weights normalized. Scoring a document is then a pure lookup.
#[derive(Debug)]
pub struct PreparedQuery<'i, F> {
    index: &'i Index,
    plan: Plan<F>,
    leaves: Vec<LeafStats>,
    terms: Vec<TermId>,
}

fn term_leaf(index: &Index, token: &str) -> Result<LeafStats> {
    let Some(id) = index.lexicon().get(token) else {
        return Ok(LeafStats { cf: 0, tf: Vec::new() });
    };
    let list = index.postings(id)?;
    let tf = list.entries.iter().map(|e| (e.doc, e.positions.len() as u64)).collect();
    Ok(LeafStats { cf: index.lexicon().cf(id), tf })
}

fn window_leaf(index: &Index, window: Window<'_>) -> Result<LeafStats> {
    let ids: Option<Vec<TermId>> = window.terms.iter().map(|t| index.lexicon().get(t)).collect();
    let mut tf = Vec::new();
    if let Some(ids) = ids {
        let groups = term_multiplicities(&ids);
        let lists = groups.iter().map(|&(id, _)| index.postings(id)).collect::<Result<Vec<PostingList>>>()?;
        let shortest = lists.iter().min_by_key(|l| l.entries.len()).expect("windows have terms");
        for entry in &shortest.entries {
            let doc = entry.doc;
            let count = match window.kind {
                WindowKind::Ordered => {
                    let per_term: Vec<&[u32]> = ids
                        .iter()
                        .map(|id| lists[groups.iter().position(|g| g.0 == *id).unwrap()].positions(doc))
                        .collect();
                    ordered_matches(&per_term, window.width)
                }
                WindowKind::Unordered => {
                    let per_group: Vec<(&[u32], usize)> =
                        lists.iter().zip(&groups).map(|(l, &(_, m))| (l.positions(doc), m)).collect();
                    unordered_matches(&per_group, window.width)
                }
            };
            if count > 0 {
                tf.push((doc, count));
            }
        }
    }
    let cf = tf.iter().map(|&(_, n)| n).sum::<u64>().max(1);
    Ok(LeafStats { cf, tf })
}

impl<'i, F: Real> PreparedQuery<'i, F> {
    pub fn new(root: &QueryNode, index: &'i Index) -> Result<Self> {
        let mut leaves = Vec::new();
        let plan = Self::compile(root, index, &mut leaves)?;
        let mut terms: Vec<TermId> =
            root.terms().into_iter().filter_map(|t| index.lexicon().get(t)).collect();
        terms.sort_unstable();
        terms.dedup();
        Ok(Self { index, plan, leaves, terms })
    }

    fn compile(node: &QueryNode, index: &Index, leaves: &mut Vec<LeafStats>) -> Result<Plan<F>> {
        Ok(match node {
            QueryNode::Term(token) => {
                leaves.push(term_leaf(index, token)?);
                Plan::Leaf(leaves.len() - 1)
            }
            QueryNode::OrderedWindow { .. } | QueryNode::UnorderedWindow { .. } => {
                leaves.push(window_leaf(index, node.window().unwrap())?);
                Plan::Leaf(leaves.len() - 1)
            }
            QueryNode::Combine(children) => Plan::Combine(
                children.iter().map(|c| Self::compile(c, index, leaves)).collect::<Result<_>>()?,
            ),
            QueryNode::Weight(pairs) => {
                let total = pairs.iter().fold(F::zero(), |acc, (w, _)| acc + F::from_f64_lossy(*w));
                Plan::Weight(
                    pairs
                        .iter()
                        .map(|(w, c)| Ok((F::from_f64_lossy(*w) / total, Self::compile(c, index, leaves)?)))
                        .collect::<Result<_>>()?,
                )
            }
        })
    }

    /// Distinct in-vocabulary term ids mentioned by the query.
    pub fn term_ids(&self) -> &[TermId] {
        &self.terms
    }

    /// Documents containing at least one query term, ascending.
    pub fn matching_documents(&self) -> Result<Vec<DocId>> {
        let mut docs = BTreeSet::new();
        for &term in &self.terms {
            docs.extend(self.index.postings(term)?.entries.iter().map(|e| e.doc));
        }
        Ok(docs.into_iter().collect())
    }

    /// Log-likelihood score of `doc`. The id must be valid for the index.
    pub fn score(&self, doc: DocId, rule: &SmoothingRule<F>) -> Result<F> {
        let len = self.index.document_length(doc)? as u64;
        // an index of empty documents still needs a usable background model
        let total = self.index.corpus_statistics().total_terms.max(1);
        Ok(self.eval(&self.plan, doc, len, total, rule))
    }

    fn eval(&self, plan: &Plan<F>, doc: DocId, len: u64, total: u64, rule: &SmoothingRule<F>) -> F {
        match plan {
            Plan::Leaf(i) => {
                let leaf = &self.leaves[*i];
                leaf_log_prob(leaf.tf(doc), len, leaf.cf, total, rule)
            }
            Plan::Combine(children) => {
                let sum = children.iter().fold(F::zero(), |acc, c| acc + self.eval(c, doc, len, total, rule));
                sum / F::from_count(children.len() as u64)
            }
            Plan::Weight(pairs) => pairs
                .iter()
                .fold(F::zero(), |acc, (w, c)| acc + *w * self.eval(c, doc, len, total, rule)),
        }
    }
}

/// Scores a single document. Prefer [`PreparedQuery`] when scoring many.
pub fn score_document<F: Real>(root: &QueryNode, doc: DocId, index: &Index, rule: &SmoothingRule<F>) -> Result<F> {
    PreparedQuery::new(root, index)?.score(doc, rule)
}
