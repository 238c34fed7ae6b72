use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use burrow::ingest::read_stopword_file;
use burrow::{build_index, open_index, parse, parse_rules, parse_trectext, Request, Stemmer, TokenPipelineConfig};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "burrow", version, about = "Build, inspect, and query burrow indexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index one or more trectext files.
    Build {
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "none")]
        stemmer: Stemmer,
        /// One stopword per line.
        #[arg(long)]
        stopwords: Option<PathBuf>,
    },
    /// Run a structured query and print a TREC run.
    Query {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        query: String,
        #[arg(long, default_value = "method:dirichlet")]
        rules: String,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Print a snippet line after each result.
        #[arg(long)]
        snippets: bool,
        /// Restrict scoring to the external ids listed in this file.
        #[arg(long)]
        docnos: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        topic: String,
        #[arg(long, default_value = "burrow")]
        run_tag: String,
    },
    /// Print index contents.
    #[command(subcommand)]
    Dump(Dump),
}

#[derive(Subcommand, Debug)]
enum Dump {
    /// The lexicon as `term_id \t token \t cf \t df` lines.
    Lexicon {
        #[arg(long)]
        index: PathBuf,
    },
    /// One document: external id, length, tokens.
    Doc {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        docno: String,
    },
}

#[derive(thiserror::Error, Debug)]
enum CliError {
    #[error(transparent)]
    Engine(#[from] burrow::Error),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("unknown docno `{0}`")]
    UnknownDocno(String),
    #[error("write failed: {0}")]
    Output(#[from] io::Error),
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Build { input, output, stemmer, stopwords } => {
            let mut config = TokenPipelineConfig::new(stemmer);
            if let Some(path) = stopwords {
                config = config.with_stopwords(read_stopword_file(&path)?);
            }
            let mut docs = Vec::new();
            for path in &input {
                docs.extend(parse_trectext(&read(path)?)?);
            }
            let index = build_index(docs, &config, &output)?;
            let stats = index.corpus_statistics();
            writeln!(out, "document_count={}", stats.document_count)?;
            writeln!(out, "total_terms={}", stats.total_terms)?;
        }
        Command::Query { index, query, rules, count, snippets, docnos, topic, run_tag } => {
            let index = open_index(&index)?;
            let root = parse(&query, index.pipeline()).map_err(burrow::Error::from)?;
            let mut request = Request::new(root)
                .rules(parse_rules(&rules)?)
                .results_requested(count)
                .include_snippets(snippets);
            if let Some(path) = docnos {
                let text = String::from_utf8_lossy(&read(&path)?).into_owned();
                let wanted: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
                request = request.document_set(index.document_ids(&wanted).into_iter().map(|(_, id)| id));
            }
            for (rank, hit) in burrow::execute(&request, &index)?.iter().enumerate() {
                let docno = index.external_id(hit.doc)?;
                writeln!(out, "{topic} Q0 {docno} {} {:.6} {run_tag}", rank + 1, hit.score)?;
                if let Some(snippet) = &hit.snippet {
                    writeln!(out, "\t{snippet}")?;
                }
            }
        }
        Command::Dump(Dump::Lexicon { index }) => {
            let index = open_index(&index)?;
            for (id, token, cf, df) in index.lexicon().iter() {
                writeln!(out, "{}\t{token}\t{cf}\t{df}", id.0)?;
            }
        }
        Command::Dump(Dump::Doc { index, docno }) => {
            let index = open_index(&index)?;
            let id = index.internal_id(&docno).ok_or(CliError::UnknownDocno(docno))?;
            let (ext, terms) = index.document(id)?;
            let lex = index.lexicon();
            write!(out, "{ext} {}", terms.len())?;
            for t in terms {
                write!(out, " {}", &lex[t])?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("burrow: {e}");
            ExitCode::from(1)
        }
    }
}
