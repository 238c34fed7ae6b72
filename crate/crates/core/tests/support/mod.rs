//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles work directly on token strings and never touch the index,
//! postings, or the library's window/scoring code.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use burrow::{Index, QueryNode, RawDocument, TermId};
use rand::seq::SliceRandom;
use rand::Rng;

pub const TOY3_TRECTEXT: &str = "<DOC>\n<DOCNO> D1 </DOCNO>\n<TEXT>\na b a b\n</TEXT>\n</DOC>\n\
<DOC>\n<DOCNO>D2</DOCNO>\n<TEXT>b</TEXT><TEXT>c</TEXT>\n</DOC>\n\
<DOC>\n<DOCNO>D3</DOCNO>\n<TEXT>c c c</TEXT>\n</DOC>\n";

pub fn toy3_docs() -> Vec<RawDocument> {
    [("D1", "a b a b"), ("D2", "b c"), ("D3", "c c c")]
        .into_iter()
        .map(|(id, body)| RawDocument { external_id: id.into(), body: body.into() })
        .collect()
}

pub fn vocab_word(i: usize) -> String {
    format!("w{i}")
}

/// `n_docs` documents of 0..=max_len tokens drawn from a `vocab`-word
/// vocabulary with a skewed distribution, so some terms are common.
pub fn random_corpus<R: Rng>(rng: &mut R, n_docs: usize, max_len: usize, vocab: usize) -> Vec<RawDocument> {
    (0..n_docs)
        .map(|i| {
            let len = rng.gen_range(0..=max_len);
            let words: Vec<String> = (0..len)
                .map(|_| {
                    let a = rng.gen_range(0..vocab);
                    let b = rng.gen_range(0..vocab);
                    vocab_word(a.min(b))
                })
                .collect();
            RawDocument { external_id: format!("DOC-{i:05}"), body: words.join(" ") }
        })
        .collect()
}

/// Tokens of a synthetic body: the pipeline is the identity on `w<N>` words.
pub fn body_tokens(doc: &RawDocument) -> Vec<String> {
    doc.body.split_whitespace().map(str::to_string).collect()
}

fn random_term<R: Rng>(rng: &mut R, vocab: usize) -> String {
    // occasionally out of vocabulary
    if rng.gen_bool(0.05) {
        "zzz".to_string()
    } else {
        vocab_word(rng.gen_range(0..vocab))
    }
}

fn random_window<R: Rng>(rng: &mut R, vocab: usize) -> QueryNode {
    let n = rng.gen_range(2..=3);
    let terms = (0..n).map(|_| random_term(rng, vocab)).collect();
    let width = rng.gen_range(1..=8);
    if rng.gen_bool(0.5) {
        QueryNode::OrderedWindow { width, terms }
    } else {
        QueryNode::UnorderedWindow { width, terms }
    }
}

/// A random tree from the supported grammar.
pub fn random_query<R: Rng>(rng: &mut R, vocab: usize, depth: u32) -> QueryNode {
    let choice = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..4) };
    match choice {
        0 => QueryNode::Term(random_term(rng, vocab)),
        1 => random_window(rng, vocab),
        2 => {
            let n = rng.gen_range(1..=4);
            QueryNode::Combine((0..n).map(|_| random_query(rng, vocab, depth - 1)).collect())
        }
        _ => QueryNode::Weight(random_weight_pairs(rng, vocab, depth)),
    }
}

fn random_weight_pairs<R: Rng>(rng: &mut R, vocab: usize, depth: u32) -> Vec<(f64, QueryNode)> {
    let n = rng.gen_range(1..=4);
    (0..n)
        .map(|_| (rng.gen_range(0.01..10.0), random_query(rng, vocab, depth.saturating_sub(1))))
        .collect()
}

/// A random `#weight` root.
pub fn random_weight_query<R: Rng>(rng: &mut R, vocab: usize) -> QueryNode {
    QueryNode::Weight(random_weight_pairs(rng, vocab, 2))
}

/// Multiplies every weight in the tree by `c`.
pub fn scale_weights(node: &QueryNode, c: f64) -> QueryNode {
    match node {
        QueryNode::Combine(children) => QueryNode::Combine(children.iter().map(|n| scale_weights(n, c)).collect()),
        QueryNode::Weight(pairs) => {
            QueryNode::Weight(pairs.iter().map(|(w, n)| (w * c, scale_weights(n, c))).collect())
        }
        other => other.clone(),
    }
}

/// Shuffled copy, for order-independence checks.
pub fn shuffled<T: Clone, R: Rng>(rng: &mut R, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

/// Recomputes cf/df/postings from the forward index and compares them with
/// what the lexicon and postings files say.
pub fn assert_consistent(index: &Index) {
    let mut postings: HashMap<TermId, Vec<(u32, Vec<u32>)>> = HashMap::new();
    let mut total = 0;
    for doc in index.doc_ids() {
        let (_, terms) = index.document(doc).unwrap();
        assert_eq!(terms.len() as u32, index.document_length(doc).unwrap());
        total += terms.len() as u64;
        for (pos, t) in terms.iter().enumerate() {
            assert!(!t.is_oov());
            let list = postings.entry(*t).or_default();
            match list.last_mut() {
                Some((d, p)) if *d == doc => p.push(pos as u32),
                _ => list.push((doc, vec![pos as u32])),
            }
        }
    }
    assert_eq!(index.corpus_statistics().total_terms, total);
    let lex = index.lexicon();
    assert_eq!(lex.len(), postings.len());
    let mut cf_sum = 0;
    for (id, token, cf, df) in lex.iter() {
        assert_eq!(lex.id(token), id);
        assert!(cf >= df && df >= 1);
        cf_sum += cf;
        let stored = index.postings(id).unwrap();
        let flat: Vec<_> = stored.entries.iter().map(|e| (e.doc, e.positions.clone())).collect();
        assert_eq!(&flat, &postings[&id], "postings of {token}");
        assert_eq!(df, flat.len() as u64);
        assert_eq!(cf, flat.iter().map(|(_, p)| p.len() as u64).sum::<u64>());
        for (doc, positions) in &flat {
            let len = index.document_length(*doc).unwrap();
            assert!(positions.windows(2).all(|w| w[0] < w[1]));
            assert!(positions.iter().all(|&p| p < len));
        }
    }
    assert_eq!(cf_sum, total);
}

pub mod oracle {
    use super::*;

    /// Ordered window: start positions of the first term from which a chain
    /// with gaps in `1..=width` reaches the last term. Depth-first scan.
    pub fn ordered_window_tf(terms: &[&str], width: usize, doc: &[&str]) -> u64 {
        fn extend(terms: &[&str], i: usize, p: usize, width: usize, doc: &[&str]) -> bool {
            if i + 1 == terms.len() {
                return true;
            }
            let last = (p + width).min(doc.len().saturating_sub(1));
            (p + 1..=last).any(|q| doc[q] == terms[i + 1] && extend(terms, i + 1, q, width, doc))
        }
        (0..doc.len()).filter(|&p| doc[p] == terms[0] && extend(terms, 0, p, width, doc)).count() as u64
    }

    /// Unordered window: positions holding a window term whose next `width`
    /// tokens contain the window's full multiset of terms.
    pub fn unordered_window_tf(terms: &[&str], width: usize, doc: &[&str]) -> u64 {
        let mut need: HashMap<&str, usize> = HashMap::new();
        for t in terms {
            *need.entry(t).or_default() += 1;
        }
        (0..doc.len())
            .filter(|&p| need.contains_key(doc[p]))
            .filter(|&p| {
                let span = &doc[p..(p + width).min(doc.len())];
                need.iter().all(|(t, &n)| span.iter().filter(|s| *s == t).count() >= n)
            })
            .count() as u64
    }

    pub fn window_tf(node: &QueryNode, doc: &[&str]) -> u64 {
        match node {
            QueryNode::OrderedWindow { width, terms } => {
                let t: Vec<&str> = terms.iter().map(String::as_str).collect();
                ordered_window_tf(&t, *width as usize, doc)
            }
            QueryNode::UnorderedWindow { width, terms } => {
                let t: Vec<&str> = terms.iter().map(String::as_str).collect();
                unordered_window_tf(&t, *width as usize, doc)
            }
            _ => panic!("not a window"),
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub enum Smoothing {
        Dirichlet(f64),
        Jm(f64),
    }

    /// Scores every document by direct scans over token strings.
    pub struct BruteForce<'c> {
        docs: Vec<Vec<&'c str>>,
        total: u64,
        cf_cache: RefCell<HashMap<String, u64>>,
    }

    impl<'c> BruteForce<'c> {
        pub fn new(corpus: &'c [Vec<String>]) -> Self {
            let docs: Vec<Vec<&str>> = corpus.iter().map(|d| d.iter().map(String::as_str).collect()).collect();
            let total = docs.iter().map(|d| d.len() as u64).sum::<u64>().max(1);
            Self { docs, total, cf_cache: RefCell::default() }
        }

        fn leaf(&self, tf: u64, len: u64, cf: u64, rule: Smoothing) -> f64 {
            let total = self.total as f64;
            let p_c = if cf == 0 { 1.0 / (2.0 * total) } else { cf as f64 / total };
            match rule {
                Smoothing::Dirichlet(mu) => ((tf as f64 + mu * p_c) / (len as f64 + mu)).ln(),
                Smoothing::Jm(lambda) => {
                    let p_d = if len == 0 { 0.0 } else { tf as f64 / len as f64 };
                    ((1.0 - lambda) * p_d + lambda * p_c).ln()
                }
            }
        }

        fn cf(&self, node: &QueryNode, count: impl Fn(&[&str]) -> u64) -> u64 {
            let key = node.to_string();
            if let Some(&cf) = self.cf_cache.borrow().get(&key) {
                return cf;
            }
            let cf = self.docs.iter().map(|d| count(d)).sum();
            self.cf_cache.borrow_mut().insert(key, cf);
            cf
        }

        fn term_tf(doc: &[&str], term: &str) -> u64 {
            doc.iter().filter(|t| **t == term).count() as u64
        }

        /// Score of document at 0-based position `d` in the corpus.
        pub fn score(&self, node: &QueryNode, d: usize, rule: Smoothing) -> f64 {
            let doc = &self.docs[d];
            let len = doc.len() as u64;
            match node {
                QueryNode::Term(t) => {
                    let cf = self.cf(node, |x| Self::term_tf(x, t));
                    self.leaf(Self::term_tf(doc, t), len, cf, rule)
                }
                QueryNode::OrderedWindow { .. } | QueryNode::UnorderedWindow { .. } => {
                    let cf = self.cf(node, |x| window_tf(node, x)).max(1);
                    self.leaf(window_tf(node, doc), len, cf, rule)
                }
                QueryNode::Combine(children) => {
                    let sum = children.iter().fold(0.0, |acc, c| acc + self.score(c, d, rule));
                    sum / children.len() as f64
                }
                QueryNode::Weight(pairs) => {
                    let total = pairs.iter().fold(0.0, |acc, (w, _)| acc + w);
                    pairs.iter().fold(0.0, |acc, (w, c)| acc + (w / total) * self.score(c, d, rule))
                }
            }
        }

        /// Internal ids (1-based) of documents containing any query term.
        pub fn matching(&self, node: &QueryNode) -> Vec<u32> {
            let terms = node.terms();
            (0..self.docs.len())
                .filter(|&d| self.docs[d].iter().any(|t| terms.contains(t)))
                .map(|d| d as u32 + 1)
                .collect()
        }

        /// Exhaustive ranking of `candidates`: score descending, id ascending.
        pub fn rank(&self, node: &QueryNode, candidates: &[u32], rule: Smoothing, k: usize) -> Vec<(u32, f64)> {
            let mut scored: Vec<(u32, f64)> =
                candidates.iter().map(|&id| (id, self.score(node, id as usize - 1, rule))).collect();
            scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
            scored.truncate(k);
            scored
        }
    }
}
