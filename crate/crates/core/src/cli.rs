//! The `pvc` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error or unreadable
//! input.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::annotator;
use crate::classifier::{self, Classified};
use crate::config::{InputFormat, RunConfig};
use crate::corpus_io::{self, TaggedSentence};
use crate::lexicon::{self, Lexicon, LexiconError, LexiconFormat, SuffixInventory};
use crate::matcher::{self, FormIndex, Match};
use crate::miner;

#[derive(Debug, Parser)]
#[command(
    name = "pvc",
    version,
    about = "Korean postpositional verb-based construction toolkit"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// `key = value` config file; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Lexicon file (TSV, or JSON by extension); default built-in.
    #[arg(long, global = true, value_name = "PATH")]
    lexicon: Option<PathBuf>,
    /// Override one config key.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Input format: raw, tagged or conllu.
    #[arg(long, short = 'f', global = true)]
    format: Option<String>,
    /// Only licensed suffix forms match; tense infixes block.
    #[arg(long, global = true)]
    strict: bool,
    /// Accept gerundial 함.
    #[arg(long, global = true)]
    legal_register: bool,
    /// Report stems outside the lexicon too.
    #[arg(long, global = true)]
    open_stems: bool,
    /// Worker threads, 0 for all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the main output here instead of standard output.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check or print a lexicon.
    Lexicon {
        #[command(subcommand)]
        action: LexiconAction,
    },
    /// List every surface form of the lexicon.
    Forms,
    /// Find candidate occurrences (JSON lines).
    Match {
        /// Input file; standard input when absent or `-`
        input: Option<PathBuf>,
    },
    /// Rank stems by pattern frequency (TSV).
    Mine {
        /// Input file; standard input when absent or `-`
        input: Option<PathBuf>,
        /// Number of stems reported (default 300)
        #[arg(long)]
        k: Option<usize>,
    },
    /// Label every match (JSON lines).
    Classify {
        /// Input file; standard input when absent or `-`
        input: Option<PathBuf>,
    },
    /// Write cupt annotations, and optionally the JSON-lines report.
    Annotate {
        /// Input file; standard input when absent or `-`
        input: Option<PathBuf>,
        /// Also write the JSON-lines classification report here
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// MWE category label (default ADP)
        #[arg(long)]
        category: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum LexiconAction {
    Validate,
    Export {
        #[arg(long = "as", id = "export_format", value_enum, default_value = "tsv")]
        format: ExportFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Tsv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Validation(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

/// Run with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match execute(cli, stdin, stdout) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "pvc: {}", f.message());
            f.code()
        }
    }
}

fn config(common: &Common) -> Result<RunConfig, Failure> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            RunConfig::from_text(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    for kv in &common.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        cfg.set(k.trim(), v.trim()).map_err(usage)?;
    }
    if let Some(path) = &common.lexicon {
        cfg.lexicon = Some(path.clone());
    }
    if let Some(f) = &common.format {
        cfg.set("format", f).map_err(usage)?;
    }
    cfg.strict |= common.strict;
    cfg.legal_register |= common.legal_register;
    cfg.open_stems |= common.open_stems;
    if let Some(n) = common.threads {
        cfg.threads = n;
    }
    Ok(cfg)
}

fn lexicon_format(cfg: &RunConfig, path: &Path) -> LexiconFormat {
    cfg.lexicon_format
        .unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
            Some("json") => LexiconFormat::Json,
            _ => LexiconFormat::Tsv,
        })
}

fn open(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn lexicon_error(e: LexiconError) -> Failure {
    match e {
        LexiconError::Io(e) => usage(e),
        other => invalid(other),
    }
}

fn load_lexicon(cfg: &RunConfig) -> Result<Lexicon, Failure> {
    let Some(path) = &cfg.lexicon else {
        return Ok(lexicon::builtin());
    };
    let inventory = SuffixInventory::default().with_extra(cfg.extra_suffixes.iter().cloned());
    lexicon::load_with(open(path)?, lexicon_format(cfg, path), &inventory).map_err(lexicon_error)
}

fn read_input(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    match input.as_deref() {
        Some(p) if p != Path::new("-") => open(p)?.read_to_end(&mut buf),
        _ => stdin.read_to_end(&mut buf),
    }
    .map_err(usage)?;
    Ok(buf)
}

fn read_tagged_input(cfg: &RunConfig, bytes: &[u8]) -> Result<Vec<TaggedSentence>, Failure> {
    match cfg.format {
        InputFormat::Tagged => corpus_io::read_tagged(bytes),
        InputFormat::Conllu => corpus_io::read_conllu(bytes),
        InputFormat::Raw => return Err(usage("this command needs tagged or conllu input")),
    }
    .map_err(usage)
}

/// Run `f` serially, on the global pool (threads = 0) or on a pool of the
/// configured size.
fn with_threads<R: Send>(threads: usize, f: impl FnOnce(bool) -> R + Send) -> Result<R, Failure> {
    match threads {
        1 => Ok(f(false)),
        0 => Ok(f(true)),
        n => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(usage)?;
            Ok(pool.install(|| f(true)))
        }
    }
}

fn classify_corpus(cfg: &RunConfig, lex: &Lexicon, corpus: &[TaggedSentence]) -> Result<Vec<Classified>, Failure> {
    let (mo, co) = (cfg.match_options(), cfg.classify_options());
    with_threads(cfg.threads, |parallel| {
        if parallel {
            classifier::classify_all_parallel(corpus, lex, &mo, &co)
        } else {
            classifier::classify_all(corpus, lex, &mo, &co)
        }
    })?
    .map_err(invalid)
}

fn execute(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), Failure> {
    let cfg = config(&cli.common)?;
    let mut file;
    let out: &mut dyn Write = match &cli.common.output {
        Some(path) => {
            file = BufWriter::new(File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?);
            &mut file
        }
        None => stdout,
    };
    let io_err = |e: io::Error| usage(e);

    match cli.command {
        Command::Lexicon {
            action: LexiconAction::Validate,
        } => {
            let (lex, violations) = match &cfg.lexicon {
                None => {
                    let lex = lexicon::builtin();
                    let v = lexicon::validate(&lex);
                    (lex, v)
                }
                Some(path) => {
                    let lex = lexicon::parse(open(path)?, lexicon_format(&cfg, path)).map_err(lexicon_error)?;
                    let inventory = SuffixInventory::default().with_extra(cfg.extra_suffixes.iter().cloned());
                    let v = lexicon::validate_with(&lex, &inventory);
                    (lex, v)
                }
            };
            writeln!(out, "{} entries, {} violations", lex.len(), violations.len()).map_err(io_err)?;
            for v in &violations {
                writeln!(out, "{v}").map_err(io_err)?;
            }
            if !violations.is_empty() {
                out.flush().map_err(io_err)?;
                return Err(invalid(format!("{} violations", violations.len())));
            }
        }
        Command::Lexicon {
            action: LexiconAction::Export { format },
        } => {
            let lex = load_lexicon(&cfg)?;
            let format = match format {
                ExportFormat::Tsv => LexiconFormat::Tsv,
                ExportFormat::Json => LexiconFormat::Json,
            };
            lex.export(format, &mut *out).map_err(lexicon_error)?;
        }
        Command::Forms => {
            let lex = load_lexicon(&cfg)?;
            writeln!(out, "stem\tlemma\tpostposition\tverb\tsuffix").map_err(io_err)?;
            for f in matcher::expand(&lex) {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    f.stem, f.lemma, f.postposition, f.verb, f.suffix
                )
                .map_err(io_err)?;
            }
        }
        Command::Match { input } => {
            let lex = load_lexicon(&cfg)?;
            let bytes = read_input(&input, stdin)?;
            let opts = cfg.match_options();
            let matches: Vec<Vec<Match>> = if cfg.format == InputFormat::Raw {
                let corpus = corpus_io::read_plain(&bytes[..]).map_err(usage)?;
                let index = FormIndex::new(&lex);
                with_threads(cfg.threads, |parallel| {
                    let one = |s| matcher::match_raw(s, &index, &opts);
                    if parallel {
                        use rayon::prelude::*;
                        corpus.par_iter().map(one).collect()
                    } else {
                        corpus.iter().map(one).collect()
                    }
                })?
            } else {
                let corpus = read_tagged_input(&cfg, &bytes)?;
                with_threads(cfg.threads, |parallel| {
                    let one = |s| matcher::match_tagged(s, &lex, &opts);
                    if parallel {
                        use rayon::prelude::*;
                        corpus.par_iter().map(one).collect()
                    } else {
                        corpus.iter().map(one).collect()
                    }
                })?
            };
            annotator::write_matches(matches.iter().flatten(), &mut *out).map_err(io_err)?;
        }
        Command::Mine { input, k } => {
            let bytes = read_input(&input, stdin)?;
            let corpus = read_tagged_input(&cfg, &bytes)?;
            let k = k.unwrap_or(cfg.k);
            let stats = with_threads(cfg.threads, |parallel| {
                if parallel {
                    miner::mine_parallel(&corpus, &cfg.tags)
                } else {
                    miner::mine_with(&corpus, &cfg.tags)
                }
            })?;
            let report = miner::rank(stats.values(), k).map_err(usage)?;
            out.write_all(miner::report_tsv(&report).as_bytes()).map_err(io_err)?;
        }
        Command::Classify { input } => {
            let lex = load_lexicon(&cfg)?;
            let bytes = read_input(&input, stdin)?;
            let corpus = read_tagged_input(&cfg, &bytes)?;
            let results = classify_corpus(&cfg, &lex, &corpus)?;
            annotator::report_json(&results, &mut *out).map_err(io_err)?;
        }
        Command::Annotate {
            input,
            report,
            category,
        } => {
            let mut cfg = cfg;
            if let Some(c) = category {
                cfg.set("category", &c).map_err(usage)?;
            }
            let lex = load_lexicon(&cfg)?;
            let bytes = read_input(&input, stdin)?;
            let corpus = read_tagged_input(&cfg, &bytes)?;
            let results = classify_corpus(&cfg, &lex, &corpus)?;
            let cupt = annotator::annotate_corpus(&corpus, &results, &cfg.category).map_err(invalid)?;
            corpus_io::write_cupt(&cupt, &mut *out).map_err(invalid)?;
            if let Some(path) = report {
                let mut w = BufWriter::new(File::create(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?);
                annotator::report_json(&results, &mut w).map_err(io_err)?;
                w.flush().map_err(io_err)?;
            }
        }
    }
    out.flush().map_err(io_err)
}
