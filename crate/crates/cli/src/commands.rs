use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::thread;

use qamus::analyzer::{report_ambiguous, Analyzer, LexiconError, LexiconPaths};
use qamus::dictionary::{DiacritizationDictionary, DictionaryError};
use qamus::eval::{evaluate, load_gold, EvalError, EvalOptions};
use qamus::lemmatizer::{LemmatizerError, Statistics};
use qamus::matcher::match_score;
use qamus::tokenizer::{tokenize, TokenKind};
use qamus::translit::{arabic_to_buckwalter_lossy, contains_arabic};
use qamus::{strip_diacritics, Encoding, Lemmatizer, LemmatizerConfig, StreamOptions};

use crate::{Command, EngineArgs};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// Tokens lemmatized before `bench` starts timing.
const WARMUP_TOKENS: usize = 10_000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<DictionaryError> for CliError {
    fn from(e: DictionaryError) -> Self {
        match e {
            DictionaryError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<LexiconError> for CliError {
    fn from(e: LexiconError) -> Self {
        match e {
            LexiconError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<LemmatizerError> for CliError {
    fn from(e: LemmatizerError) -> Self {
        match e {
            LemmatizerError::Dictionary(e) => e.into(),
            LemmatizerError::Lexicon(e) => e.into(),
            LemmatizerError::Stream { .. } => CliError::Io(e.to_string()),
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

fn stdout_error(e: io::Error) -> CliError {
    CliError::Io(format!("stdout: {e}"))
}

fn load_engine(args: &EngineArgs) -> Result<Lemmatizer, CliError> {
    let config = LemmatizerConfig {
        dictionary_path: args.dict.clone(),
        lexicon_paths: LexiconPaths::from_dir(&args.lexicon),
        overrides_path: args.overrides.clone(),
        normalize_hamza: args.normalize_hamza,
        min_count: args.min_count,
    };
    let engine = Lemmatizer::new(&config)?;
    Ok(engine)
}

fn resolve_threads(threads: Option<usize>) -> Result<usize, CliError> {
    match threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".to_string())),
        Some(n) => Ok(n),
        None => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn to_bare_buckwalter(word: &str) -> String {
    let bw = if contains_arabic(word) {
        arabic_to_buckwalter_lossy(word)
    } else {
        word.to_string()
    };
    strip_diacritics(&bw)
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::BuildDict {
            corpus,
            out,
            min_count,
            encoding,
        } => build_dict(&corpus, &out, min_count, encoding),
        Command::Lemmatize {
            engine,
            input,
            format,
            encoding,
            threads,
        } => {
            let lemmatizer = load_engine(&engine)?;
            let options = StreamOptions {
                format,
                encoding,
                threads: resolve_threads(threads)?,
            };
            let stdout = io::stdout();
            let writer = BufWriter::new(stdout.lock());
            match input {
                Some(path) => {
                    let file = File::open(&path).map_err(io_error(&path))?;
                    lemmatizer.lemmatize_stream(BufReader::new(file), writer, &options)?;
                }
                None => {
                    lemmatizer.lemmatize_stream(io::stdin().lock(), writer, &options)?;
                }
            }
            Ok(())
        }
        Command::Evaluate {
            gold,
            engine,
            raw,
            report,
            encoding,
        } => {
            let records = load_gold(&gold)?;
            let lemmatizer = load_engine(&engine)?;
            let result = evaluate(
                &lemmatizer,
                &records,
                EvalOptions {
                    use_corrected: !raw,
                    encoding,
                },
            );
            print!("{}", result.summary());
            if let Some(path) = report {
                let file = File::create(&path).map_err(io_error(&path))?;
                result
                    .write_errors(BufWriter::new(file))
                    .map_err(io_error(&path))?;
            }
            Ok(())
        }
        Command::Bench {
            input,
            engine,
            threads,
            encoding,
        } => bench(&input, &engine, threads, encoding),
        Command::Explain { word, engine } => explain(&word, &engine),
        Command::ReportAmbiguous { lexicon, words } => {
            let analyzer = Analyzer::load(&LexiconPaths::from_dir(&lexicon))?;
            let text = fs::read_to_string(&words).map_err(io_error(&words))?;
            let list: Vec<String> = text
                .lines()
                .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
                .map(|l| to_bare_buckwalter(l.split('\t').next().unwrap_or("").trim()))
                .filter(|w| !w.is_empty())
                .collect();
            let rows = report_ambiguous(&analyzer, list.iter().map(String::as_str));
            let mut out = BufWriter::new(io::stdout().lock());
            for row in rows {
                writeln!(
                    out,
                    "{}\t{}\t{}",
                    row.word,
                    row.diacritized_form,
                    row.lemmas.join(";")
                )
                .map_err(stdout_error)?;
            }
            out.flush().map_err(stdout_error)
        }
    }
}

fn build_dict(
    corpus: &[std::path::PathBuf],
    out: &Path,
    min_count: u64,
    encoding: Encoding,
) -> Result<(), CliError> {
    if min_count == 0 {
        return Err(CliError::Usage(
            "--min-count must be at least 1".to_string(),
        ));
    }
    let dictionary = DiacritizationDictionary::build_from_corpus(corpus, encoding, min_count)?;
    dictionary.save(out)?;
    log::info!(
        "{} tokens, {} distinct bare words -> {}",
        dictionary.total_tokens(),
        dictionary.distinct_bare_words(),
        out.display()
    );
    Ok(())
}

/// Peak resident set size in KiB, where the platform reports it.
fn peak_rss_kb() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find_map(|l| l.strip_prefix("VmHWM:"))
        .and_then(|v| v.trim().trim_end_matches("kB").trim().parse().ok())
}

fn bench(
    input: &Path,
    engine: &EngineArgs,
    threads: Option<usize>,
    encoding: Encoding,
) -> Result<(), CliError> {
    let lemmatizer = load_engine(engine)?;
    let threads = resolve_threads(threads)?;

    // Warm-up on the first WARMUP_TOKENS tokens, untimed.
    let file = File::open(input).map_err(io_error(input))?;
    let mut seen = 0;
    for line in BufReader::new(file).lines() {
        let line = line.map_err(io_error(input))?;
        for token in tokenize(&line, encoding) {
            if token.kind != TokenKind::Whitespace {
                lemmatizer.lemmatize_word(&token);
                seen += 1;
            }
        }
        if seen >= WARMUP_TOKENS {
            break;
        }
    }

    let file = File::open(input).map_err(io_error(input))?;
    let options = StreamOptions {
        encoding,
        threads,
        ..StreamOptions::default()
    };
    let stats: Statistics =
        lemmatizer.lemmatize_stream(BufReader::new(file), io::sink(), &options)?;
    let per_second = stats.words_per_second();
    let mut out = io::stdout().lock();
    let report = format!(
        "lines\t{}\ntokens\t{}\nwords\t{}\nthreads\t{}\nelapsed_seconds\t{:.6}\nwords_per_second\t{:.0}\nwords_per_minute\t{:.0}\npeak_rss_kb\t{}\n",
        stats.lines,
        stats.tokens,
        stats.words,
        threads,
        stats.elapsed.as_secs_f64(),
        per_second,
        per_second * 60.0,
        peak_rss_kb().map_or("-".to_string(), |kb| kb.to_string()),
    );
    out.write_all(report.as_bytes()).map_err(stdout_error)
}

fn explain(word: &str, engine: &EngineArgs) -> Result<(), CliError> {
    let lemmatizer = load_engine(engine)?;
    let bare = to_bare_buckwalter(word);
    if bare.is_empty() {
        return Err(CliError::Usage(
            "explain needs a non-empty word".to_string(),
        ));
    }
    let result = lemmatizer.lemmatize_surface(&bare);
    let dictionary = lemmatizer.dictionary();
    let corpus = dictionary.forms(&bare).and_then(|f| f.first());

    let mut out = BufWriter::new(io::stdout().lock());
    let mut emit = |line: String| writeln!(out, "{line}").map_err(stdout_error);
    emit(format!("word\t{bare}"))?;
    emit(match corpus {
        Some((form, count)) => format!("corpus_form\t{form}\t{count}"),
        None => "corpus_form\t-\t0".to_string(),
    })?;
    emit("#rank\tdiacritized_form\tsegmentation\tpos\tlemma_bare\tlemma_diacritized\tagreements\tconflicts\tscore\tchosen".to_string())?;
    let mut marked = false;
    for (i, analysis) in lemmatizer.analyses(&bare).iter().enumerate() {
        let score = corpus.and_then(|(form, _)| match_score(form, &analysis.diacritized_form));
        let (agreements, conflicts, total) = match score {
            Some(s) => (
                s.agreements.to_string(),
                s.conflicts.to_string(),
                s.score().to_string(),
            ),
            None => ("-".to_string(), "-".to_string(), "-".to_string()),
        };
        let chosen = !marked && result.chosen.as_ref() == Some(analysis);
        marked |= chosen;
        emit(format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            i + 1,
            analysis.diacritized_form,
            analysis.segmentation(),
            analysis.pos,
            analysis.lemma_bare,
            analysis.lemma_diacritized,
            agreements,
            conflicts,
            total,
            if chosen { "*" } else { "" }
        ))?;
    }
    emit(format!("lemma\t{}\t{}", result.lemma_bare, result.source))?;
    out.flush().map_err(stdout_error)
}
