use std::collections::HashSet;
use std::path::Path;

use rayon::prelude::*;

use super::format::{self, FileWriter, Manifest};
use super::{open_index, DocId, Index, Lexicon, TermId};
use crate::error::{Error, Result};
use crate::ingest::{tokenize, RawDocument, TokenPipelineConfig};

fn prepare_output(path: &Path) -> Result<()> {
    if path.exists() {
        let mut entries = std::fs::read_dir(path).map_err(|e| Error::io(path, e))?;
        if entries.next().is_some() {
            return Err(Error::OutputNotEmpty(path.to_path_buf()));
        }
        Ok(())
    } else {
        std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))
    }
}

/// Tokenizes `documents`, writes a complete index to `output`, and opens it.
///
/// `output` must be absent or an empty directory. Internal ids are assigned
/// from 1 in input order and term ids from 1 in first-occurrence order.
pub fn build_index<I>(documents: I, config: &TokenPipelineConfig, output: &Path) -> Result<Index>
where
    I: IntoIterator<Item = RawDocument>,
{
    let documents: Vec<RawDocument> = documents.into_iter().collect();
    let mut seen = HashSet::with_capacity(documents.len());
    for doc in &documents {
        if !seen.insert(doc.external_id.as_str()) {
            return Err(Error::DuplicateDocno(doc.external_id.clone()));
        }
    }
    drop(seen);
    if documents.len() >= u32::MAX as usize {
        return Err(Error::Ingest { offset: 0, message: "too many documents".into() });
    }
    prepare_output(output)?;

    let token_streams: Vec<Vec<String>> =
        documents.par_iter().map(|d| tokenize(&d.body, config)).collect();

    let mut lexicon = Lexicon::default();
    let mut forward: Vec<Vec<TermId>> = Vec::with_capacity(documents.len());
    for tokens in &token_streams {
        forward.push(tokens.iter().map(|t| lexicon.intern(t)).collect());
    }
    drop(token_streams);

    // postings[term][k] = (doc, positions)
    let mut postings: Vec<Vec<(DocId, Vec<u32>)>> = vec![Vec::new(); lexicon.len() + 1];
    for (i, terms) in forward.iter().enumerate() {
        let doc = i as DocId + 1;
        for (pos, term) in terms.iter().enumerate() {
            let list = &mut postings[term.0 as usize];
            match list.last_mut() {
                Some((d, positions)) if *d == doc => positions.push(pos as u32),
                _ => list.push((doc, vec![pos as u32])),
            }
        }
    }
    for (id, list) in postings.iter().enumerate().skip(1) {
        let cf = list.iter().map(|(_, p)| p.len() as u64).sum();
        lexicon.record(TermId(id as u32), cf, list.len() as u64);
    }
    let total_terms: u64 = forward.iter().map(|t| t.len() as u64).sum();

    write_stopwords(output, config)?;
    write_lexicon(output, &lexicon)?;
    write_docs(output, &documents, &forward)?;
    write_forward(output, &forward)?;
    write_postings(output, &postings)?;
    // manifest last: a directory without one is never mistaken for an index
    let manifest = Manifest {
        document_count: documents.len() as u64,
        total_terms,
        stemmer: config.stemmer.as_str().to_string(),
        stopword_count: config.stopwords().len() as u64,
    };
    let mut w = FileWriter::create(output, format::MANIFEST)?;
    w.bytes(manifest.render().as_bytes())?;
    w.finish()?;

    open_index(output)
}

fn write_stopwords(dir: &Path, config: &TokenPipelineConfig) -> Result<()> {
    let mut w = FileWriter::create(dir, format::STOPWORDS)?;
    for word in config.stopwords() {
        w.line(word)?;
    }
    w.finish()
}

fn write_lexicon(dir: &Path, lexicon: &Lexicon) -> Result<()> {
    let mut w = FileWriter::create(dir, format::LEXICON)?;
    for (id, token, cf, df) in lexicon.iter() {
        w.line(&format!("{id}\t{token}\t{cf}\t{df}"))?;
    }
    w.finish()
}

fn write_docs(dir: &Path, documents: &[RawDocument], forward: &[Vec<TermId>]) -> Result<()> {
    let mut w = FileWriter::create(dir, format::DOCS)?;
    for (i, (doc, terms)) in documents.iter().zip(forward).enumerate() {
        w.line(&format!("{}\t{}\t{}", i + 1, doc.external_id, terms.len()))?;
    }
    w.finish()
}

fn write_forward(dir: &Path, forward: &[Vec<TermId>]) -> Result<()> {
    let mut bin = FileWriter::create(dir, format::FORWARD_BIN)?;
    let mut idx = FileWriter::create(dir, format::FORWARD_IDX)?;
    for terms in forward {
        idx.u64(bin.position())?;
        bin.u32(terms.len() as u32)?;
        for t in terms {
            bin.u32(t.0)?;
        }
    }
    bin.finish()?;
    idx.finish()
}

fn write_postings(dir: &Path, postings: &[Vec<(DocId, Vec<u32>)>]) -> Result<()> {
    let mut bin = FileWriter::create(dir, format::POSTINGS_BIN)?;
    let mut idx = FileWriter::create(dir, format::POSTINGS_IDX)?;
    for list in postings.iter().skip(1) {
        idx.u64(bin.position())?;
        bin.u32(list.len() as u32)?;
        for (doc, positions) in list {
            bin.u32(*doc)?;
            bin.u32(positions.len() as u32)?;
            for p in positions {
                bin.u32(*p)?;
            }
        }
    }
    bin.finish()?;
    idx.finish()
}
