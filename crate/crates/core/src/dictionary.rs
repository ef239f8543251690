//! Frequency dictionary of diacritized forms.
//!
//! Maps each bare word seen in a diacritized corpus to the diacritized
//! forms it appeared with, ranked by occurrence count (ties broken by the
//! form, ascending).

use std::collections::HashMap;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::orthography::strip_diacritics;
use crate::tokenizer::{tokenize, TokenKind};
use crate::translit::{arabic_to_buckwalter_lossy, Encoding, TATWEEL};

pub const DICT_HEADER: &str = "#qamus-dict v1";
const TOTAL_TOKENS_PREFIX: &str = "#total_tokens\t";

#[derive(Debug, Error)]
pub enum DictionaryError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("corpus contains no Arabic word tokens")]
    EmptyCorpus,
    #[error("line {line_no}: {reason}")]
    MalformedDictionaryLine { line_no: usize, reason: String },
    #[error("line {line_no}: count must be a positive integer")]
    CountNotPositive { line_no: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiacritizationDictionary {
    entries: HashMap<String, Vec<(String, u64)>>,
    total_tokens: u64,
}

fn rank(forms: &mut [(String, u64)]) {
    forms.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
}

/// Buckwalter form of a word token, with tatweel removed.
pub(crate) fn normalize_token(surface: &str) -> String {
    let mut bw = arabic_to_buckwalter_lossy(surface);
    bw.retain(|c| c != TATWEEL);
    bw
}

/// Mergeable partial counts.
#[derive(Clone, Debug, Default)]
pub struct DictionaryBuilder {
    counts: HashMap<String, HashMap<String, u64>>,
    total_tokens: u64,
}

impl DictionaryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts one diacritized word (Buckwalter).
    pub fn add_word(&mut self, diacritized: &str) {
        let bare = strip_diacritics(diacritized);
        if bare.is_empty() {
            return;
        }
        *self
            .counts
            .entry(bare)
            .or_default()
            .entry(diacritized.to_string())
            .or_insert(0) += 1;
        self.total_tokens += 1;
    }

    /// Tokenizes `text` and counts every Arabic word token.
    pub fn add_text(&mut self, text: &str, encoding: Encoding) {
        for token in tokenize(text, encoding) {
            if token.kind == TokenKind::ArabicWord {
                self.add_word(&normalize_token(token.surface));
            }
        }
    }

    pub fn add_reader<R: BufRead>(&mut self, reader: R, encoding: Encoding) -> io::Result<()> {
        for line in reader.lines() {
            self.add_text(&line?, encoding);
        }
        Ok(())
    }

    /// Pointwise sum of counts.
    pub fn merge(mut self, other: DictionaryBuilder) -> Self {
        for (bare, forms) in other.counts {
            let mine = self.counts.entry(bare).or_default();
            for (form, n) in forms {
                *mine.entry(form).or_insert(0) += n;
            }
        }
        self.total_tokens += other.total_tokens;
        self
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    /// Ranks the counts, dropping forms seen fewer than `min_count` times.
    pub fn finish(self, min_count: u64) -> DiacritizationDictionary {
        let entries = self
            .counts
            .into_iter()
            .filter_map(|(bare, forms)| {
                let mut forms: Vec<(String, u64)> =
                    forms.into_iter().filter(|(_, n)| *n >= min_count).collect();
                if forms.is_empty() {
                    return None;
                }
                rank(&mut forms);
                Some((bare, forms))
            })
            .collect();
        DiacritizationDictionary {
            entries,
            total_tokens: self.total_tokens,
        }
    }
}

impl DiacritizationDictionary {
    /// Counts diacritized word tokens across `paths`, one file per worker.
    pub fn build_from_corpus<P: AsRef<Path> + Sync>(
        paths: &[P],
        encoding: Encoding,
        min_count: u64,
    ) -> Result<Self, DictionaryError> {
        let partials: Vec<DictionaryBuilder> = paths
            .par_iter()
            .map(|path| {
                let path = path.as_ref();
                let io_err = |source| DictionaryError::Io {
                    path: path.to_path_buf(),
                    source,
                };
                let file = fs::File::open(path).map_err(io_err)?;
                let mut builder = DictionaryBuilder::new();
                builder
                    .add_reader(BufReader::new(file), encoding)
                    .map_err(io_err)?;
                Ok(builder)
            })
            .collect::<Result<_, DictionaryError>>()?;
        let merged = partials
            .into_iter()
            .fold(DictionaryBuilder::new(), DictionaryBuilder::merge);
        if merged.total_tokens() == 0 {
            return Err(DictionaryError::EmptyCorpus);
        }
        Ok(merged.finish(min_count.max(1)))
    }

    /// Ranked forms for a bare word.
    pub fn forms(&self, bare: &str) -> Option<&[(String, u64)]> {
        self.entries.get(bare).map(Vec::as_slice)
    }

    pub fn most_frequent(&self, bare: &str) -> Option<&str> {
        self.entries
            .get(bare)
            .and_then(|f| f.first())
            .map(|(form, _)| form.as_str())
    }

    /// Number of word tokens ingested.
    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn distinct_bare_words(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bare keys in ascending order.
    pub fn keys(&self) -> Vec<&str> {
        let mut keys: Vec<&str> = self.entries.keys().map(String::as_str).collect();
        keys.sort_unstable();
        keys
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Vec<(String, u64)>)> {
        self.entries.iter()
    }

    /// Writes the TSV format: header, token total, then
    /// `bare<TAB>form<TAB>count` rows sorted by key, forms in rank order.
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{DICT_HEADER}")?;
        writeln!(out, "{TOTAL_TOKENS_PREFIX}{}", self.total_tokens)?;
        for key in self.keys() {
            for (form, count) in &self.entries[key] {
                writeln!(out, "{key}\t{form}\t{count}")?;
            }
        }
        out.flush()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), DictionaryError> {
        let path = path.as_ref();
        let io_err = |source| DictionaryError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = fs::File::create(path).map_err(io_err)?;
        self.write_to(BufWriter::new(file)).map_err(io_err)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, DictionaryError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| DictionaryError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, DictionaryError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
        match lines.next() {
            Some((_, DICT_HEADER)) => {}
            _ => {
                return Err(DictionaryError::MalformedDictionaryLine {
                    line_no: 1,
                    reason: format!("missing '{DICT_HEADER}' header"),
                })
            }
        }
        let mut entries: HashMap<String, Vec<(String, u64)>> = HashMap::new();
        let mut declared_total = None;
        let mut last_key: Option<String> = None;
        for (line_no, line) in lines {
            let malformed =
                |reason: String| DictionaryError::MalformedDictionaryLine { line_no, reason };
            if let Some(total) = line.strip_prefix(TOTAL_TOKENS_PREFIX) {
                let total = total
                    .parse::<u64>()
                    .map_err(|_| malformed(format!("bad token total '{total}'")))?;
                declared_total = Some(total);
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [bare, form, count] = fields[..] else {
                return Err(malformed(format!(
                    "expected 3 tab-separated fields, found {}",
                    fields.len()
                )));
            };
            let count: i64 = count
                .parse()
                .map_err(|_| malformed(format!("bad count '{count}'")))?;
            if count <= 0 {
                return Err(DictionaryError::CountNotPositive { line_no });
            }
            if strip_diacritics(form) != bare {
                return Err(malformed(format!(
                    "form '{form}' does not strip to '{bare}'"
                )));
            }
            let forms = entries.entry(bare.to_string()).or_default();
            if last_key.as_deref() != Some(bare) && !forms.is_empty() {
                return Err(malformed(format!("rows for '{bare}' are not contiguous")));
            }
            if let Some((prev_form, prev_count)) = forms.last() {
                let count = count as u64;
                if *prev_count < count || (*prev_count == count && prev_form.as_str() >= form) {
                    return Err(malformed(format!(
                        "forms of '{bare}' are not in rank order"
                    )));
                }
            }
            forms.push((form.to_string(), count as u64));
            last_key = Some(bare.to_string());
        }
        let sum: u64 = entries.values().flatten().map(|(_, n)| n).sum();
        Ok(DiacritizationDictionary {
            entries,
            total_tokens: declared_total.unwrap_or(sum),
        })
    }

    /// Drops forms seen fewer than `min_count` times. The ingested token
    /// total is kept.
    pub fn pruned(mut self, min_count: u64) -> Self {
        self.entries.retain(|_, forms| {
            forms.retain(|(_, n)| *n >= min_count);
            !forms.is_empty()
        });
        self
    }

    /// Builds a dictionary directly from ranked-or-not form counts.
    pub fn from_counts<I, S>(counts: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: AsRef<str>,
    {
        let mut builder = DictionaryBuilder::new();
        for (form, n) in counts {
            let form = form.as_ref();
            if n == 0 {
                continue;
            }
            let bare = strip_diacritics(form);
            if bare.is_empty() {
                continue;
            }
            *builder
                .counts
                .entry(bare)
                .or_default()
                .entry(form.to_string())
                .or_insert(0) += n;
            builder.total_tokens += n;
        }
        builder.finish(1)
    }
}
