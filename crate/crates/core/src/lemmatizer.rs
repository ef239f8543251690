//! End-to-end lemmatization pipeline.
//!
//! For each word: strip diacritics, enumerate analyses (with the manual
//! lemma-order overrides applied), look up the word's most frequent corpus
//! diacritization, and pick the analysis whose diacritized form agrees with
//! it best. Words without a corpus form take the first analysis; words
//! without analyses are their own lemma.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::analyzer::{
    apply_overrides, Analysis, Analyzer, LemmaOrderOverrides, LexiconError, LexiconPaths,
};
use crate::dictionary::{normalize_token, DiacritizationDictionary, DictionaryError};
use crate::matcher::{match_score, MatchScore};
use crate::orthography::strip_diacritics;
use crate::tokenizer::{tokenize, Token, TokenKind};
use crate::translit::{buckwalter_to_arabic_lossy, Encoding};

/// How a lemma was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaSource {
    DictionaryMatch,
    AnalyzerFirst,
    Passthrough,
}

impl LemmaSource {
    pub fn as_str(self) -> &'static str {
        match self {
            LemmaSource::DictionaryMatch => "dictionary",
            LemmaSource::AnalyzerFirst => "analyzer",
            LemmaSource::Passthrough => "passthrough",
        }
    }
}

impl fmt::Display for LemmaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaResult {
    pub input_surface: String,
    pub kind: TokenKind,
    /// Whether the input was written in Arabic script; output lemmas are
    /// rendered back in the same script.
    pub arabic_script: bool,
    pub bare: String,
    pub lemma_bare: String,
    /// Populated whenever an analysis was chosen. Not evaluated.
    pub lemma_diacritized: Option<String>,
    pub source: LemmaSource,
    pub chosen: Option<Analysis>,
    pub score: Option<MatchScore>,
}

impl LemmaResult {
    fn passthrough(token: &Token<'_>) -> Self {
        LemmaResult {
            input_surface: token.surface.to_string(),
            kind: token.kind,
            arabic_script: false,
            bare: token.surface.to_string(),
            lemma_bare: token.surface.to_string(),
            lemma_diacritized: None,
            source: LemmaSource::Passthrough,
            chosen: None,
            score: None,
        }
    }

    /// `text` rendered in the input's script.
    fn render(&self, text: &str) -> String {
        if self.arabic_script {
            buckwalter_to_arabic_lossy(text)
        } else {
            text.to_string()
        }
    }

    /// Bare lemma in the input's script. Non-word tokens come back verbatim.
    pub fn display_lemma(&self) -> String {
        if self.kind != TokenKind::ArabicWord {
            return self.input_surface.clone();
        }
        self.render(&self.lemma_bare)
    }

    pub fn display_lemma_diacritized(&self) -> Option<String> {
        self.lemma_diacritized.as_deref().map(|l| self.render(l))
    }
}

#[derive(Debug, Error)]
pub enum LemmatizerError {
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("line {line_no}: {source}")]
    Stream {
        line_no: usize,
        #[source]
        source: io::Error,
    },
}

#[derive(Clone, Debug)]
pub struct LemmatizerConfig {
    pub dictionary_path: PathBuf,
    pub lexicon_paths: LexiconPaths,
    pub overrides_path: Option<PathBuf>,
    /// Retry dictionary misses with alef/hamza variants folded to bare alef.
    pub normalize_hamza: bool,
    /// Ignore dictionary forms seen fewer times than this.
    pub min_count: u64,
}

impl LemmatizerConfig {
    pub fn new(dictionary_path: impl Into<PathBuf>, lexicon_dir: impl Into<PathBuf>) -> Self {
        LemmatizerConfig {
            dictionary_path: dictionary_path.into(),
            lexicon_paths: LexiconPaths::from_dir(lexicon_dir.into()),
            overrides_path: None,
            normalize_hamza: false,
            min_count: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    /// Lemmas joined by single spaces, one output line per input line.
    #[default]
    Plain,
    /// `surface<TAB>lemma_bare<TAB>lemma_diacritized<TAB>source` per token,
    /// blank line after each input line.
    Tsv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(OutputFormat::Plain),
            "tsv" => Ok(OutputFormat::Tsv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Statistics {
    pub lines: u64,
    /// Non-whitespace tokens.
    pub tokens: u64,
    /// Arabic word tokens.
    pub words: u64,
    pub elapsed: Duration,
}

impl Statistics {
    pub fn words_per_second(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs > 0.0 {
            self.words as f64 / secs
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StreamOptions {
    pub format: OutputFormat,
    pub encoding: Encoding,
    /// Worker threads; 1 processes lines sequentially.
    pub threads: usize,
}

impl Default for StreamOptions {
    fn default() -> Self {
        StreamOptions {
            format: OutputFormat::Plain,
            encoding: Encoding::Arabic,
            threads: 1,
        }
    }
}

/// Lines buffered per parallel batch; bounds stream memory.
const BATCH_LINES: usize = 2048;

fn fold_hamza(word: &str) -> String {
    word.chars()
        .map(|c| match c {
            '|' | '>' | '<' => 'A',
            c => c,
        })
        .collect()
}

/// Immutable lemmatization engine.
pub struct Lemmatizer {
    dictionary: DiacritizationDictionary,
    analyzer: Analyzer,
    overrides: LemmaOrderOverrides,
    /// Folded key -> best original key; only built with `normalize_hamza`.
    folded_keys: Option<HashMap<String, String>>,
    warnings: Vec<String>,
}

impl Lemmatizer {
    pub fn new(config: &LemmatizerConfig) -> Result<Self, LemmatizerError> {
        let mut dictionary = DiacritizationDictionary::load(&config.dictionary_path)?;
        if config.min_count > 1 {
            dictionary = dictionary.pruned(config.min_count);
        }
        let analyzer = Analyzer::load(&config.lexicon_paths)?;
        let overrides = match &config.overrides_path {
            Some(path) => LemmaOrderOverrides::load(path)?,
            None => LemmaOrderOverrides::default(),
        };
        Ok(Self::from_parts(
            dictionary,
            analyzer,
            overrides,
            config.normalize_hamza,
        ))
    }

    pub fn from_parts(
        dictionary: DiacritizationDictionary,
        analyzer: Analyzer,
        overrides: LemmaOrderOverrides,
        normalize_hamza: bool,
    ) -> Self {
        let warnings = overrides.validate(&analyzer);
        for w in &warnings {
            log::warn!("{w}");
        }
        let folded_keys = normalize_hamza.then(|| {
            let mut best: HashMap<String, (String, u64)> = HashMap::new();
            for key in dictionary.keys() {
                let top = dictionary.forms(key).map_or(0, |f| f[0].1);
                let slot = best
                    .entry(fold_hamza(key))
                    .or_insert_with(|| (key.to_string(), top));
                // keys() is ascending, so strict > keeps the smaller key on ties
                if top > slot.1 {
                    *slot = (key.to_string(), top);
                }
            }
            best.into_iter().map(|(k, (orig, _))| (k, orig)).collect()
        });
        Lemmatizer {
            dictionary,
            analyzer,
            overrides,
            folded_keys,
            warnings,
        }
    }

    pub fn dictionary(&self) -> &DiacritizationDictionary {
        &self.dictionary
    }

    pub fn analyzer(&self) -> &Analyzer {
        &self.analyzer
    }

    pub fn overrides(&self) -> &LemmaOrderOverrides {
        &self.overrides
    }

    /// Load-time warnings (override lemmas no analysis produces).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Analyses of a bare word in final preference order.
    pub fn analyses(&self, bare: &str) -> Vec<Analysis> {
        apply_overrides(bare, self.analyzer.analyze(bare), &self.overrides)
    }

    /// Dictionary key used for `bare`: itself, or with `normalize_hamza`
    /// the best-attested key sharing its folded spelling.
    fn dictionary_key<'a>(&'a self, bare: &'a str) -> Option<&'a str> {
        if self.dictionary.forms(bare).is_some() {
            return Some(bare);
        }
        let folded = self.folded_keys.as_ref()?;
        folded.get(&fold_hamza(bare)).map(String::as_str)
    }

    /// Lemmatizes a single word given in Buckwalter or Arabic script.
    pub fn lemmatize_surface(&self, surface: &str) -> LemmaResult {
        let token = Token {
            surface,
            kind: TokenKind::ArabicWord,
            span: (0, surface.len()),
        };
        self.lemmatize_word(&token)
    }

    pub fn lemmatize_word(&self, token: &Token<'_>) -> LemmaResult {
        if token.kind != TokenKind::ArabicWord {
            return LemmaResult::passthrough(token);
        }
        let bare = strip_diacritics(&normalize_token(token.surface));
        let mut result = LemmaResult {
            input_surface: token.surface.to_string(),
            kind: token.kind,
            arabic_script: token.is_arabic_script(),
            lemma_bare: bare.clone(),
            bare,
            lemma_diacritized: None,
            source: LemmaSource::Passthrough,
            chosen: None,
            score: None,
        };

        let key = self.dictionary_key(&result.bare);
        let mut analyses = self.analyses(&result.bare);
        if analyses.is_empty() {
            if let Some(key) = key.filter(|k| *k != result.bare) {
                analyses = self.analyses(key);
            }
        }
        if analyses.is_empty() {
            return result;
        }

        let corpus_form = key.and_then(|k| self.dictionary.most_frequent(k));
        let mut best: Option<(usize, MatchScore)> = None;
        if let Some(form) = corpus_form {
            for (i, analysis) in analyses.iter().enumerate() {
                if let Some(score) = match_score(form, &analysis.diacritized_form) {
                    if best.is_none_or(|(_, b)| score.score() > b.score()) {
                        best = Some((i, score));
                    }
                }
            }
        }
        let (index, source, score) = match best {
            Some((i, s)) => (i, LemmaSource::DictionaryMatch, Some(s)),
            None => (0, LemmaSource::AnalyzerFirst, None),
        };
        let chosen = analyses.swap_remove(index);
        result.lemma_bare = chosen.lemma_bare.clone();
        result.lemma_diacritized = Some(chosen.lemma_diacritized.clone());
        result.source = source;
        result.score = score;
        result.chosen = Some(chosen);
        result
    }

    /// Lemmatizes every non-whitespace token of `text`, in order.
    pub fn lemmatize_text(&self, text: &str, encoding: Encoding) -> Vec<LemmaResult> {
        tokenize(text, encoding)
            .iter()
            .filter(|t| t.kind != TokenKind::Whitespace)
            .map(|t| self.lemmatize_word(t))
            .collect()
    }

    fn render_line(&self, line: &str, options: &StreamOptions, out: &mut String) -> (u64, u64) {
        let results = self.lemmatize_text(line, options.encoding);
        let words = results
            .iter()
            .filter(|r| r.kind == TokenKind::ArabicWord)
            .count() as u64;
        match options.format {
            OutputFormat::Plain => {
                for (i, r) in results.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    out.push_str(&r.display_lemma());
                }
                out.push('\n');
            }
            OutputFormat::Tsv => {
                for r in &results {
                    out.push_str(&r.input_surface);
                    out.push('\t');
                    out.push_str(&r.display_lemma());
                    out.push('\t');
                    out.push_str(r.display_lemma_diacritized().as_deref().unwrap_or(""));
                    out.push('\t');
                    out.push_str(r.source.as_str());
                    out.push('\n');
                }
                out.push('\n');
            }
        }
        (results.len() as u64, words)
    }

    fn flush_batch<W: Write>(
        &self,
        batch: &mut Vec<String>,
        first_line: usize,
        options: &StreamOptions,
        pool: Option<&rayon::ThreadPool>,
        writer: &mut W,
        stats: &mut Statistics,
    ) -> Result<(), LemmatizerError> {
        let rendered: Vec<(String, u64, u64)> = if let Some(pool) = pool {
            pool.install(|| {
                batch
                    .par_iter()
                    .with_min_len(64)
                    .map(|line| {
                        let mut out = String::new();
                        let (t, w) = self.render_line(line, options, &mut out);
                        (out, t, w)
                    })
                    .collect()
            })
        } else {
            batch
                .iter()
                .map(|line| {
                    let mut out = String::new();
                    let (t, w) = self.render_line(line, options, &mut out);
                    (out, t, w)
                })
                .collect()
        };
        for (offset, (text, tokens, words)) in rendered.into_iter().enumerate() {
            writer
                .write_all(text.as_bytes())
                .map_err(|source| LemmatizerError::Stream {
                    line_no: first_line + offset,
                    source,
                })?;
            stats.tokens += tokens;
            stats.words += words;
            stats.lines += 1;
        }
        batch.clear();
        Ok(())
    }

    /// Streams `reader` line by line into `writer`.
    ///
    /// Memory is bounded by one batch of lines. Output is byte-identical for
    /// every thread count.
    pub fn lemmatize_stream<R: BufRead, W: Write>(
        &self,
        reader: R,
        writer: W,
        options: &StreamOptions,
    ) -> Result<Statistics, LemmatizerError> {
        if options.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(options.threads)
                .build()
                .map_err(|e| LemmatizerError::Stream {
                    line_no: 0,
                    source: io::Error::other(e),
                })?;
            self.stream_inner(reader, writer, options, Some(&pool))
        } else {
            self.stream_inner(reader, writer, options, None)
        }
    }

    fn stream_inner<R: BufRead, W: Write>(
        &self,
        reader: R,
        mut writer: W,
        options: &StreamOptions,
        pool: Option<&rayon::ThreadPool>,
    ) -> Result<Statistics, LemmatizerError> {
        let start = Instant::now();
        let mut stats = Statistics::default();
        let mut batch = Vec::with_capacity(BATCH_LINES);
        let mut first_line = 1;
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| LemmatizerError::Stream {
                line_no: i + 1,
                source,
            })?;
            if batch.is_empty() {
                first_line = i + 1;
            }
            batch.push(line);
            if batch.len() == BATCH_LINES {
                self.flush_batch(
                    &mut batch,
                    first_line,
                    options,
                    pool,
                    &mut writer,
                    &mut stats,
                )?;
            }
        }
        if !batch.is_empty() {
            self.flush_batch(
                &mut batch,
                first_line,
                options,
                pool,
                &mut writer,
                &mut stats,
            )?;
        }
        writer.flush().map_err(|source| LemmatizerError::Stream {
            line_no: stats.lines as usize,
            source,
        })?;
        stats.elapsed = start.elapsed();
        Ok(stats)
    }
}
