//! On-disk layout. All binary integers are little-endian and fixed width.
//!
//! ```text
//! manifest.txt   key=value lines
//! stopwords.txt  one stopword per line, sorted
//! lexicon.tsv    term_id \t token \t cf \t df
//! docs.tsv       internal_id \t external_id \t length
//! forward.bin    per doc: u32 count, count x u32 term id
//! forward.idx    per doc: u64 offset into forward.bin
//! postings.bin   per term: u32 entries, per entry: u32 doc, u32 npos, npos x u32 position
//! postings.idx   per term: u64 offset into postings.bin
//! ```

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

pub const MANIFEST: &str = "manifest.txt";
pub const STOPWORDS: &str = "stopwords.txt";
pub const LEXICON: &str = "lexicon.tsv";
pub const DOCS: &str = "docs.tsv";
pub const FORWARD_BIN: &str = "forward.bin";
pub const FORWARD_IDX: &str = "forward.idx";
pub const POSTINGS_BIN: &str = "postings.bin";
pub const POSTINGS_IDX: &str = "postings.idx";

pub(crate) struct FileWriter {
    path: std::path::PathBuf,
    inner: BufWriter<File>,
    written: u64,
}

impl FileWriter {
    pub fn create(dir: &Path, name: &str) -> Result<Self> {
        let path = dir.join(name);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        Ok(Self { path, inner: BufWriter::new(file), written: 0 })
    }

    pub fn position(&self) -> u64 {
        self.written
    }

    pub fn bytes(&mut self, buf: &[u8]) -> Result<()> {
        self.written += buf.len() as u64;
        self.inner.write_all(buf).map_err(|e| Error::io(&self.path, e))
    }

    pub fn u32(&mut self, v: u32) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    pub fn u64(&mut self, v: u64) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    pub fn line(&mut self, s: &str) -> Result<()> {
        self.bytes(s.as_bytes())?;
        self.bytes(b"\n")
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush().map_err(|e| Error::io(&self.path, e))
    }
}

pub(crate) fn read_file(dir: &Path, name: &str) -> Result<Vec<u8>> {
    std::fs::read(dir.join(name)).map_err(|e| Error::open(name, e.to_string()))
}

pub(crate) fn read_text(dir: &Path, name: &str) -> Result<String> {
    String::from_utf8(read_file(dir, name)?).map_err(|_| Error::open(name, "not valid UTF-8"))
}

pub(crate) fn u32_at(buf: &[u8], offset: usize) -> Option<u32> {
    let bytes = buf.get(offset..offset.checked_add(4)?)?;
    Some(u32::from_le_bytes(bytes.try_into().ok()?))
}

pub(crate) fn decode_offsets(buf: &[u8], name: &str, expected: usize) -> Result<Vec<u64>> {
    if buf.len() != expected * 8 {
        return Err(Error::open(name, format!("expected {} bytes, found {}", expected * 8, buf.len())));
    }
    Ok(buf.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect())
}

/// Parsed `manifest.txt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Manifest {
    pub document_count: u64,
    pub total_terms: u64,
    pub stemmer: String,
    pub stopword_count: u64,
}

impl Manifest {
    pub fn render(&self) -> String {
        format!(
            "format_version={FORMAT_VERSION}\ndocument_count={}\ntotal_terms={}\nstemmer={}\nlowercase=true\nstopword_count={}\n",
            self.document_count, self.total_terms, self.stemmer, self.stopword_count
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::open(MANIFEST, format!("line {} is not key=value", n + 1)))?;
            fields.insert(key.trim(), value.trim());
        }
        let version = fields
            .get("format_version")
            .ok_or_else(|| Error::open(MANIFEST, "missing format_version"))?;
        if version.parse::<u32>().ok() != Some(FORMAT_VERSION) {
            return Err(Error::UnsupportedVersion { found: version.to_string(), expected: FORMAT_VERSION });
        }
        let get = |key: &str| -> Result<&str> {
            fields.get(key).copied().ok_or_else(|| Error::open(MANIFEST, format!("missing {key}")))
        };
        let count = |key: &str| -> Result<u64> {
            get(key)?.parse().map_err(|_| Error::open(MANIFEST, format!("{key} is not a count")))
        };
        if get("lowercase")? != "true" {
            return Err(Error::open(MANIFEST, "lowercase must be true"));
        }
        Ok(Self {
            document_count: count("document_count")?,
            total_terms: count("total_terms")?,
            stemmer: get("stemmer")?.to_string(),
            stopword_count: count("stopword_count")?,
        })
    }
}
