mod support;

use burrow::{build_index, open_index, parse_trectext, tokenize, TokenPipelineConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{assert_consistent, random_corpus, toy3_docs, TOY3_TRECTEXT};

#[test]
fn toy3_from_trectext() {
    let tmp = tempfile::tempdir().unwrap();
    let docs = parse_trectext(TOY3_TRECTEXT.as_bytes()).unwrap();
    assert_eq!(docs, toy3_docs());
    let index = build_index(docs, &TokenPipelineConfig::default(), tmp.path()).unwrap();
    assert_consistent(&index);
    let reopened = open_index(tmp.path()).unwrap();
    for doc in index.doc_ids() {
        assert_eq!(index.document(doc).unwrap(), reopened.document(doc).unwrap());
    }
    assert_eq!(index.extract_lexicon(), reopened.extract_lexicon());
}

#[test]
fn random_corpora_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, cfg) in [
        (1, TokenPipelineConfig::default()),
        (50, TokenPipelineConfig::default().with_stopwords(["w0", "w3"])),
        (200, TokenPipelineConfig::default()),
    ] {
        let tmp = tempfile::tempdir().unwrap();
        let docs = random_corpus(&mut rng, n, 50, 30);
        let index = build_index(docs.clone(), &cfg, tmp.path()).unwrap();
        drop(index);
        let index = open_index(tmp.path()).unwrap();
        assert_eq!(index.pipeline(), &cfg);
        assert_consistent(&index);
        let lex = index.lexicon();
        let visited: Vec<u32> = (index.document_base()..index.maximum_document()).collect();
        assert_eq!(visited.len() as u64, index.document_count());
        for (doc, raw) in visited.iter().zip(&docs) {
            let (ext, terms) = index.document(*doc).unwrap();
            assert_eq!(ext, raw.external_id);
            let tokens: Vec<&str> = terms.iter().map(|t| &lex[*t]).collect();
            assert_eq!(tokens, tokenize(&raw.body, &cfg));
        }
    }
}

#[test]
fn term_ids_follow_first_occurrence() {
    let tmp = tempfile::tempdir().unwrap();
    let docs = vec![
        burrow::RawDocument { external_id: "x".into(), body: "zeta alpha zeta".into() },
        burrow::RawDocument { external_id: "y".into(), body: "beta alpha".into() },
    ];
    let index = build_index(docs, &TokenPipelineConfig::default(), tmp.path()).unwrap();
    let ids: Vec<_> = index.lexicon().iter().map(|(id, tok, _, _)| (id.0, tok.to_string())).collect();
    assert_eq!(ids, [(1, "zeta".to_string()), (2, "alpha".into()), (3, "beta".into())]);
}

#[test]
fn index_is_shareable_across_threads() {
    let tmp = tempfile::tempdir().unwrap();
    let index = build_index(toy3_docs(), &TokenPipelineConfig::default(), tmp.path()).unwrap();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..4).map(|_| s.spawn(|| index.query("b").unwrap())).collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    });
}
