//! Trectext parsing and token normalization.
//!
//! Tokens are maximal runs of ASCII alphanumerics, lowercased. Everything
//! else, including any non-ASCII character, separates tokens. Stopwords are
//! removed before stemming.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A document as it appears in the collection, before tokenization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub external_id: String,
    pub body: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stemmer {
    #[default]
    None,
    /// Snowball English, a.k.a. Porter2.
    Porter,
}

impl Stemmer {
    pub fn as_str(self) -> &'static str {
        match self {
            Stemmer::None => "none",
            Stemmer::Porter => "porter",
        }
    }
}

impl fmt::Display for Stemmer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stemmer {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "none" => Ok(Stemmer::None),
            "porter" => Ok(Stemmer::Porter),
            other => Err(format!("unknown stemmer `{other}` (expected none or porter)")),
        }
    }
}

/// Normalization settings shared by indexing and query parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenPipelineConfig {
    /// Always true. Kept so the manifest records it explicitly.
    pub lowercase: bool,
    pub stemmer: Stemmer,
    stopwords: BTreeSet<String>,
}

impl Default for TokenPipelineConfig {
    fn default() -> Self {
        Self { lowercase: true, stemmer: Stemmer::None, stopwords: BTreeSet::new() }
    }
}

impl TokenPipelineConfig {
    pub fn new(stemmer: Stemmer) -> Self {
        Self { stemmer, ..Self::default() }
    }

    /// Entries are lowercased on the way in; blank entries are ignored.
    pub fn with_stopwords<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.stopwords = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_ascii_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        self
    }

    pub fn stopwords(&self) -> &BTreeSet<String> {
        &self.stopwords
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.stopwords.contains(token)
    }
}

/// Reads a stopword file: one token per line.
pub fn read_stopword_file(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect())
}

/// Runs the full token pipeline over `body`.
pub fn tokenize(body: &str, config: &TokenPipelineConfig) -> Vec<String> {
    let stemmer = match config.stemmer {
        Stemmer::None => None,
        Stemmer::Porter => Some(rust_stemmers::Stemmer::create(rust_stemmers::Algorithm::English)),
    };
    body.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|run| !run.is_empty())
        .map(str::to_ascii_lowercase)
        .filter(|tok| !config.is_stopword(tok))
        .map(|tok| match &stemmer {
            Some(s) => s.stem(&tok).into_owned(),
            None => tok,
        })
        .collect()
}

fn find(haystack: &[u8], needle: &[u8], from: usize) -> Option<usize> {
    if from > haystack.len() {
        return None;
    }
    haystack[from..].windows(needle.len()).position(|w| w == needle).map(|p| p + from)
}

fn ingest_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Ingest { offset, message: message.into() }
}

/// Replaces inline markup with a space so adjacent words stay separated.
fn strip_tags(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_tag = false;
    for c in text.chars() {
        match (in_tag, c) {
            (false, '<') => in_tag = true,
            (true, '>') => {
                in_tag = false;
                out.push(' ');
            }
            (false, c) => out.push(c),
            (true, _) => {}
        }
    }
    out
}

/// Splits a trectext byte stream into documents, in file order.
///
/// Bytes outside `<DOC>` blocks are ignored. Duplicate DOCNOs are not
/// detected here; that is the index builder's job since it sees every file.
pub fn parse_trectext(bytes: &[u8]) -> Result<Vec<RawDocument>> {
    const DOC_OPEN: &[u8] = b"<DOC>";
    const DOC_CLOSE: &[u8] = b"</DOC>";
    const NO_OPEN: &[u8] = b"<DOCNO>";
    const NO_CLOSE: &[u8] = b"</DOCNO>";
    const TEXT_OPEN: &[u8] = b"<TEXT>";
    const TEXT_CLOSE: &[u8] = b"</TEXT>";

    let mut docs = Vec::new();
    let mut cursor = 0;
    while let Some(start) = find(bytes, DOC_OPEN, cursor) {
        let inner = start + DOC_OPEN.len();
        let end = find(bytes, DOC_CLOSE, inner)
            .ok_or_else(|| ingest_err(start, "<DOC> without matching </DOC>"))?;
        if find(&bytes[..end], DOC_OPEN, inner).is_some() {
            return Err(ingest_err(start, "<DOC> without matching </DOC>"));
        }
        let block = &bytes[..end];

        let no_start = find(block, NO_OPEN, inner)
            .ok_or_else(|| ingest_err(start, "document has no <DOCNO>"))?;
        let no_end = find(block, NO_CLOSE, no_start)
            .ok_or_else(|| ingest_err(no_start, "<DOCNO> without matching </DOCNO>"))?;
        if let Some(again) = find(block, NO_OPEN, no_end) {
            return Err(ingest_err(again, "document has more than one <DOCNO>"));
        }
        let docno = String::from_utf8_lossy(&block[no_start + NO_OPEN.len()..no_end]).trim().to_string();
        if docno.is_empty() || docno.chars().any(char::is_whitespace) {
            return Err(ingest_err(no_start, format!("invalid DOCNO `{docno}`")));
        }

        let mut parts = Vec::new();
        let mut text_cursor = inner;
        while let Some(t_start) = find(block, TEXT_OPEN, text_cursor) {
            let body_start = t_start + TEXT_OPEN.len();
            let t_end = find(block, TEXT_CLOSE, body_start)
                .ok_or_else(|| ingest_err(t_start, "<TEXT> without matching </TEXT>"))?;
            let text = strip_tags(&String::from_utf8_lossy(&block[body_start..t_end]));
            let text = text.trim();
            if !text.is_empty() {
                parts.push(text.to_string());
            }
            text_cursor = t_end + TEXT_CLOSE.len();
        }

        docs.push(RawDocument { external_id: docno, body: parts.join(" ") });
        cursor = end + DOC_CLOSE.len();
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain() -> TokenPipelineConfig {
        TokenPipelineConfig::default()
    }

    #[test]
    fn trims_docno_and_reads_text() {
        let docs = parse_trectext(b"<DOC><DOCNO> D1 </DOCNO><TEXT>a b a b</TEXT></DOC>").unwrap();
        assert_eq!(docs, vec![RawDocument { external_id: "D1".into(), body: "a b a b".into() }]);
    }

    #[test]
    fn joins_text_blocks_with_space() {
        let docs = parse_trectext(b"<DOC><DOCNO>D2</DOCNO><TEXT>b</TEXT><TEXT>c</TEXT></DOC>").unwrap();
        assert_eq!(docs[0].body, "b c");
    }

    #[test]
    fn document_without_text_has_empty_body() {
        let docs = parse_trectext(b"<DOC>\n<DOCNO>X</DOCNO>\n<HEAD>ignored</HEAD>\n</DOC>\n").unwrap();
        assert_eq!(docs[0].body, "");
    }

    #[test]
    fn inner_markup_is_dropped() {
        let docs = parse_trectext(b"<DOC><DOCNO>X</DOCNO><TEXT>\n<P>one</P><P>two</P>\n</TEXT></DOC>").unwrap();
        assert_eq!(tokenize(&docs[0].body, &plain()), vec!["one", "two"]);
        assert!(!docs[0].body.contains('<'));
    }

    #[test]
    fn documents_come_back_in_file_order() {
        let src = b"<DOC><DOCNO>B</DOCNO></DOC>\n<DOC><DOCNO>A</DOCNO></DOC>";
        let ids: Vec<_> = parse_trectext(src).unwrap().into_iter().map(|d| d.external_id).collect();
        assert_eq!(ids, ["B", "A"]);
    }

    #[test]
    fn unclosed_doc_reports_offset() {
        let src = b"<DOC><DOCNO>A</DOCNO></DOC>  <DOC><DOCNO>B</DOCNO>";
        match parse_trectext(src) {
            Err(Error::Ingest { offset, .. }) => assert_eq!(offset, 29),
            other => panic!("expected ingest error, got {other:?}"),
        }
        // a second <DOC> before the close is also an unclosed block
        let src = b"<DOC><DOCNO>A</DOCNO><DOC><DOCNO>B</DOCNO></DOC>";
        assert!(matches!(parse_trectext(src), Err(Error::Ingest { offset: 0, .. })));
    }

    #[test]
    fn missing_docno_is_an_error() {
        let err = parse_trectext(b"  <DOC><TEXT>x</TEXT></DOC>").unwrap_err();
        assert!(matches!(err, Error::Ingest { offset: 2, .. }), "{err}");
    }

    #[test]
    fn docno_with_inner_whitespace_is_rejected() {
        assert!(parse_trectext(b"<DOC><DOCNO>A B</DOCNO></DOC>").is_err());
        assert!(parse_trectext(b"<DOC><DOCNO>  </DOCNO></DOC>").is_err());
    }

    #[test]
    fn tokenizer_splits_on_non_alphanumerics() {
        assert_eq!(tokenize("Obama's Family-Tree!", &plain()), ["obama", "s", "family", "tree"]);
        assert!(tokenize("", &plain()).is_empty());
        assert_eq!(tokenize("caf\u{e9} na\u{ef}ve x2", &plain()), ["caf", "na", "ve", "x2"]);
    }

    #[test]
    fn porter2_stemming() {
        let cfg = TokenPipelineConfig::new(Stemmer::Porter);
        assert_eq!(tokenize("running RUNS", &cfg), ["run", "run"]);
        // reference Porter2 pairs
        let words = "caresses ponies cats dying skies news consignment knightly generously";
        assert_eq!(
            tokenize(words, &cfg),
            ["caress", "poni", "cat", "die", "sky", "news", "consign", "knight", "generous"]
        );
    }

    #[test]
    fn stopping_happens_before_stemming() {
        // "runs" is a stopword here but "run" is not: the stopword must vanish,
        // not be stemmed into a surviving token.
        let cfg = TokenPipelineConfig::new(Stemmer::Porter).with_stopwords(["runs", "The"]);
        assert_eq!(tokenize("The runs running", &cfg), ["run"]);
    }
}
