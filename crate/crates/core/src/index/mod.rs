//! The immutable on-disk index and its read API.

mod build;
pub mod format;
mod lexicon;

use std::collections::HashMap;
use std::path::{Path, PathBuf};

pub use build::build_index;
pub use lexicon::{Lexicon, TermId};

use crate::error::{Error, Result};
use crate::ingest::{Stemmer, TokenPipelineConfig};
use format::{u32_at, Manifest};

/// Internal document id. Ids are contiguous from [`Index::document_base`].
pub type DocId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CorpusStatistics {
    pub document_count: u64,
    /// Sum of all document lengths.
    pub total_terms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posting {
    pub doc: DocId,
    /// Strictly increasing 0-based token offsets.
    pub positions: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostingList {
    pub term: TermId,
    pub entries: Vec<Posting>,
}

impl PostingList {
    /// Positions of the term in `doc`, or an empty slice.
    pub fn positions(&self, doc: DocId) -> &[u32] {
        match self.entries.binary_search_by_key(&doc, |e| e.doc) {
            Ok(i) => &self.entries[i].positions,
            Err(_) => &[],
        }
    }
}

/// Read-only handle over an index directory.
///
/// The index never changes after it is built, so a handle can be shared
/// freely between threads.
#[derive(Debug)]
pub struct Index {
    path: PathBuf,
    config: TokenPipelineConfig,
    stats: CorpusStatistics,
    lexicon: Lexicon,
    external_ids: Vec<String>,
    lengths: Vec<u32>,
    by_external: HashMap<String, DocId>,
    forward: Vec<u8>,
    forward_offsets: Vec<u64>,
    postings: Vec<u8>,
    postings_offsets: Vec<u64>,
}

/// Opens an index directory written by [`build_index`].
pub fn open_index(path: &Path) -> Result<Index> {
    Index::open(path)
}

fn corrupt(file: &str, line: usize, what: &str) -> Error {
    Error::open(file, format!("line {line}: {what}"))
}

impl Index {
    pub fn open(path: &Path) -> Result<Self> {
        if !path.is_dir() {
            return Err(Error::open(
                format::MANIFEST,
                format!("{} is not an index directory", path.display()),
            ));
        }
        let manifest = Manifest::parse(&format::read_text(path, format::MANIFEST)?)?;
        let stemmer: Stemmer =
            manifest.stemmer.parse().map_err(|e: String| Error::open(format::MANIFEST, e))?;
        let stopwords = format::read_text(path, format::STOPWORDS)?;
        let config = TokenPipelineConfig::new(stemmer).with_stopwords(stopwords.lines());
        if config.stopwords().len() as u64 != manifest.stopword_count {
            return Err(Error::open(format::STOPWORDS, "stopword count disagrees with manifest"));
        }

        let lexicon = read_lexicon(path)?;
        let (external_ids, lengths) = read_docs(path)?;
        let document_count = external_ids.len();
        if document_count as u64 != manifest.document_count {
            return Err(Error::open(format::DOCS, "document count disagrees with manifest"));
        }
        let total_terms: u64 = lengths.iter().map(|&l| l as u64).sum();
        if total_terms != manifest.total_terms {
            return Err(Error::open(format::DOCS, "document lengths disagree with total_terms"));
        }
        let mut by_external = HashMap::with_capacity(document_count);
        for (i, ext) in external_ids.iter().enumerate() {
            if by_external.insert(ext.clone(), i as DocId + 1).is_some() {
                return Err(Error::open(format::DOCS, format!("duplicate external id `{ext}`")));
            }
        }

        let forward = format::read_file(path, format::FORWARD_BIN)?;
        let forward_offsets = format::decode_offsets(
            &format::read_file(path, format::FORWARD_IDX)?,
            format::FORWARD_IDX,
            document_count,
        )?;
        for (i, &off) in forward_offsets.iter().enumerate() {
            let count = usize::try_from(off).ok().and_then(|o| u32_at(&forward, o));
            if count != Some(lengths[i]) || off + 4 + 4 * lengths[i] as u64 > forward.len() as u64 {
                return Err(Error::open(format::FORWARD_BIN, format!("bad record for document {}", i + 1)));
            }
        }

        let postings = format::read_file(path, format::POSTINGS_BIN)?;
        let postings_offsets = format::decode_offsets(
            &format::read_file(path, format::POSTINGS_IDX)?,
            format::POSTINGS_IDX,
            lexicon.len(),
        )?;
        if postings_offsets.iter().any(|&o| o + 4 > postings.len() as u64) {
            return Err(Error::open(format::POSTINGS_IDX, "offset past end of postings.bin"));
        }

        Ok(Self {
            path: path.to_path_buf(),
            config,
            stats: CorpusStatistics { document_count: document_count as u64, total_terms },
            lexicon,
            external_ids,
            lengths,
            by_external,
            forward,
            forward_offsets,
            postings,
            postings_offsets,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The token pipeline the index was built with; queries must use it too.
    pub fn pipeline(&self) -> &TokenPipelineConfig {
        &self.config
    }

    /// First internal id. Always 1.
    pub fn document_base(&self) -> DocId {
        1
    }

    /// One past the last internal id.
    pub fn maximum_document(&self) -> DocId {
        1 + self.external_ids.len() as DocId
    }

    /// Every internal id, in order.
    pub fn doc_ids(&self) -> std::ops::Range<DocId> {
        self.document_base()..self.maximum_document()
    }

    pub fn document_count(&self) -> u64 {
        self.stats.document_count
    }

    pub fn contains_document(&self, id: DocId) -> bool {
        id >= self.document_base() && id < self.maximum_document()
    }

    fn slot(&self, id: DocId) -> Result<usize> {
        if self.contains_document(id) {
            Ok((id - 1) as usize)
        } else {
            Err(Error::DocumentOutOfRange {
                id: id as u64,
                base: self.document_base(),
                max: self.maximum_document(),
            })
        }
    }

    /// External id and term ids of a stored document.
    pub fn document(&self, id: DocId) -> Result<(&str, Vec<TermId>)> {
        let slot = self.slot(id)?;
        Ok((&self.external_ids[slot], self.terms(id)?))
    }

    /// Term ids of a stored document.
    pub fn terms(&self, id: DocId) -> Result<Vec<TermId>> {
        let slot = self.slot(id)?;
        let start = self.forward_offsets[slot] as usize + 4;
        let len = self.lengths[slot] as usize;
        // bounds were validated at open
        let bytes = &self.forward[start..start + 4 * len];
        Ok(bytes.chunks_exact(4).map(|c| TermId(u32::from_le_bytes(c.try_into().unwrap()))).collect())
    }

    pub fn external_id(&self, id: DocId) -> Result<&str> {
        Ok(&self.external_ids[self.slot(id)?])
    }

    /// Maps external ids to internal ids, in input order. Unknown ids are
    /// left out of the result.
    pub fn document_ids<S: AsRef<str>>(&self, external_ids: &[S]) -> Vec<(String, DocId)> {
        external_ids
            .iter()
            .filter_map(|e| {
                let e = e.as_ref();
                self.by_external.get(e).map(|&id| (e.to_string(), id))
            })
            .collect()
    }

    pub fn internal_id(&self, external_id: &str) -> Option<DocId> {
        self.by_external.get(external_id).copied()
    }

    pub fn document_length(&self, id: DocId) -> Result<u32> {
        Ok(self.lengths[self.slot(id)?])
    }

    pub fn corpus_statistics(&self) -> CorpusStatistics {
        self.stats
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// A full copy of the lexicon.
    pub fn extract_lexicon(&self) -> Lexicon {
        self.lexicon.clone()
    }

    /// Decodes the positional posting list of `term`.
    pub fn postings(&self, term: TermId) -> Result<PostingList> {
        if !self.lexicon.contains(term) {
            return Err(Error::InvalidTermId(term.0));
        }
        let bad = || Error::open(format::POSTINGS_BIN, format!("corrupt list for term {term}"));
        let buf = &self.postings;
        let mut at = self.postings_offsets[term.0 as usize - 1] as usize;
        let mut next = || -> Result<u32> {
            let v = u32_at(buf, at).ok_or_else(bad)?;
            at += 4;
            Ok(v)
        };
        let count = next()?;
        let mut entries = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let doc = next()?;
            let npos = next()?;
            let positions = (0..npos).map(|_| next()).collect::<Result<Vec<_>>>()?;
            entries.push(Posting { doc, positions });
        }
        Ok(PostingList { term, entries })
    }
}

fn read_lexicon(dir: &Path) -> Result<Lexicon> {
    let text = format::read_text(dir, format::LEXICON)?;
    let mut lexicon = Lexicon::default();
    for (n, line) in text.lines().enumerate() {
        let f: Vec<&str> = line.split('\t').collect();
        let bad = |what| corrupt(format::LEXICON, n + 1, what);
        if f.len() != 4 {
            return Err(bad("expected 4 fields"));
        }
        let id: u32 = f[0].parse().map_err(|_| bad("bad term id"))?;
        let cf: u64 = f[2].parse().map_err(|_| bad("bad cf"))?;
        let df: u64 = f[3].parse().map_err(|_| bad("bad df"))?;
        if id as usize != n + 1 {
            return Err(bad("term ids must be contiguous from 1"));
        }
        if df == 0 || cf < df {
            return Err(bad("need cf >= df >= 1"));
        }
        lexicon.push_entry(f[1].to_string(), cf, df).map_err(|m| corrupt(format::LEXICON, n + 1, &m))?;
    }
    Ok(lexicon)
}

fn read_docs(dir: &Path) -> Result<(Vec<String>, Vec<u32>)> {
    let text = format::read_text(dir, format::DOCS)?;
    let mut ids = Vec::new();
    let mut lengths = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let f: Vec<&str> = line.split('\t').collect();
        let bad = |what| corrupt(format::DOCS, n + 1, what);
        if f.len() != 3 {
            return Err(bad("expected 3 fields"));
        }
        let id: u64 = f[0].parse().map_err(|_| bad("bad internal id"))?;
        if id != n as u64 + 1 {
            return Err(bad("internal ids must be contiguous from 1"));
        }
        ids.push(f[1].to_string());
        lengths.push(f[2].parse().map_err(|_| bad("bad length"))?);
    }
    Ok((ids, lengths))
}
