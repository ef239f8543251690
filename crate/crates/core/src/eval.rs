//! Gold-standard evaluation against undiacritized reference lemmas.
//!
//! Gold files are TSV with a `#qamus-gold v1` header and rows
//! `raw<TAB>corrected<TAB>lemma_diacritized<TAB>accepted_lemmas`, where the
//! last column lists every acceptable bare lemma separated by `;`. Cells
//! may be Arabic script or Buckwalter.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::lemmatizer::{LemmaSource, Lemmatizer};
use crate::orthography::strip_diacritics;
use crate::tokenizer::{tokenize, TokenKind};
use crate::translit::{
    arabic_to_buckwalter_lossy, buckwalter_to_arabic_lossy, contains_arabic, Encoding,
};

pub const GOLD_HEADER: &str = "#qamus-gold v1";

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line_no}: malformed gold line: {reason}")]
    MalformedGoldLine { line_no: usize, reason: String },
    #[error("line {line_no}: empty accepted-lemma set")]
    EmptyLemmaSet { line_no: usize },
    #[error("line {line_no}: diacritized lemma '{lemma}' strips to '{stripped}', which is not an accepted lemma")]
    StripMismatch {
        line_no: usize,
        lemma: String,
        stripped: String,
    },
    #[error("output lengths differ: gold {gold}, a {a}, b {b}")]
    LengthMismatch { gold: usize, a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldRecord {
    pub line_no: usize,
    pub raw: String,
    pub corrected: String,
    /// Buckwalter.
    pub lemma_diacritized: String,
    /// Bare Buckwalter lemmas, in file order.
    pub accepted_lemmas: Vec<String>,
}

impl GoldRecord {
    pub fn accepts(&self, lemma_bare: &str) -> bool {
        self.accepted_lemmas.iter().any(|l| l == lemma_bare)
    }

    pub fn surface(&self, use_corrected: bool) -> &str {
        if use_corrected {
            &self.corrected
        } else {
            &self.raw
        }
    }

    fn is_arabic_script(&self) -> bool {
        contains_arabic(&self.corrected) || contains_arabic(&self.raw)
    }
}

fn to_bw(cell: &str) -> String {
    if contains_arabic(cell) {
        arabic_to_buckwalter_lossy(cell)
    } else {
        cell.to_string()
    }
}

pub fn parse_gold(text: &str) -> Result<Vec<GoldRecord>, EvalError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    match lines.next() {
        Some((_, GOLD_HEADER)) => {}
        _ => {
            return Err(EvalError::MalformedGoldLine {
                line_no: 1,
                reason: format!("missing '{GOLD_HEADER}' header"),
            })
        }
    }
    let mut records = Vec::new();
    for (line_no, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [raw, corrected, lemma, accepted] = fields[..] else {
            return Err(EvalError::MalformedGoldLine {
                line_no,
                reason: format!("expected 4 tab-separated fields, found {}", fields.len()),
            });
        };
        if corrected.is_empty() {
            return Err(EvalError::MalformedGoldLine {
                line_no,
                reason: "empty corrected word".to_string(),
            });
        }
        let accepted_lemmas: Vec<String> = accepted
            .split(';')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| strip_diacritics(&to_bw(l)))
            .collect();
        if accepted_lemmas.is_empty() {
            return Err(EvalError::EmptyLemmaSet { line_no });
        }
        let lemma_diacritized = to_bw(lemma);
        let stripped = strip_diacritics(&lemma_diacritized);
        if !accepted_lemmas.contains(&stripped) {
            return Err(EvalError::StripMismatch {
                line_no,
                lemma: lemma_diacritized,
                stripped,
            });
        }
        records.push(GoldRecord {
            line_no,
            raw: raw.to_string(),
            corrected: corrected.to_string(),
            lemma_diacritized,
            accepted_lemmas,
        });
    }
    Ok(records)
}

pub fn load_gold(path: impl AsRef<Path>) -> Result<Vec<GoldRecord>, EvalError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| EvalError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_gold(&text)
}

/// A system's answer for one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemOutput {
    /// Bare Buckwalter lemma.
    pub lemma_bare: String,
    pub source: Option<LemmaSource>,
}

/// Anything that maps a word surface to a bare lemma.
pub trait LemmaSystem {
    fn lemma_for(&self, surface: &str) -> SystemOutput;
}

impl LemmaSystem for Lemmatizer {
    fn lemma_for(&self, surface: &str) -> SystemOutput {
        let result = self.lemmatize_surface(surface);
        SystemOutput {
            lemma_bare: result.lemma_bare,
            source: Some(result.source),
        }
    }
}

impl<F> LemmaSystem for F
where
    F: Fn(&str) -> String,
{
    fn lemma_for(&self, surface: &str) -> SystemOutput {
        SystemOutput {
            lemma_bare: self(surface),
            source: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoredError {
    pub record: GoldRecord,
    pub system_lemma: String,
    pub source: Option<LemmaSource>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalReport {
    /// Scored (Arabic word) records.
    pub total: usize,
    pub correct: usize,
    pub accuracy: f64,
    /// Misses, in gold file order.
    pub errors: Vec<ScoredError>,
    pub per_source: BTreeMap<LemmaSource, usize>,
    /// Records skipped because their surface is not a single Arabic word,
    /// keyed by the kind of their first token.
    pub skipped: BTreeMap<TokenKind, usize>,
}

impl EvalReport {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "records scored: {}\ncorrect: {}\naccuracy: {:.6}\n",
            self.total, self.correct, self.accuracy
        );
        for (source, n) in &self.per_source {
            s.push_str(&format!("source {source}: {n}\n"));
        }
        for (kind, n) in &self.skipped {
            s.push_str(&format!("skipped {}: {n}\n", kind.as_str()));
        }
        s
    }

    /// Error report rows: `raw<TAB>corrected<TAB>expected<TAB>got<TAB>source`.
    pub fn write_errors<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "#raw\tcorrected\texpected\tgot\tsource")?;
        for e in &self.errors {
            let render = |s: &str| {
                if e.record.is_arabic_script() {
                    buckwalter_to_arabic_lossy(s)
                } else {
                    s.to_string()
                }
            };
            let expected: Vec<String> =
                e.record.accepted_lemmas.iter().map(|l| render(l)).collect();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                e.record.raw,
                e.record.corrected,
                expected.join(";"),
                render(&e.system_lemma),
                e.source.map_or("-", LemmaSource::as_str)
            )?;
        }
        out.flush()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Score the spelling-corrected column (default) instead of the raw one.
    pub use_corrected: bool,
    pub encoding: Encoding,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            use_corrected: true,
            encoding: Encoding::Arabic,
        }
    }
}

/// Kind of a gold surface: `ArabicWord` only when it is a single word token.
fn surface_kind(surface: &str, encoding: Encoding) -> TokenKind {
    let tokens = tokenize(surface.trim(), encoding);
    match tokens.as_slice() {
        [t] => t.kind,
        [first, ..] if first.kind == TokenKind::ArabicWord => TokenKind::Punctuation,
        [first, ..] => first.kind,
        [] => TokenKind::Whitespace,
    }
}

pub fn evaluate<S: LemmaSystem + ?Sized>(
    system: &S,
    gold: &[GoldRecord],
    options: EvalOptions,
) -> EvalReport {
    let mut report = EvalReport::default();
    for record in gold {
        let surface = record.surface(options.use_corrected);
        let kind = surface_kind(surface, options.encoding);
        if kind != TokenKind::ArabicWord {
            *report.skipped.entry(kind).or_insert(0) += 1;
            continue;
        }
        let output = system.lemma_for(surface.trim());
        report.total += 1;
        if let Some(source) = output.source {
            *report.per_source.entry(source).or_insert(0) += 1;
        }
        if record.accepts(&output.lemma_bare) {
            report.correct += 1;
        } else {
            report.errors.push(ScoredError {
                record: record.clone(),
                system_lemma: output.lemma_bare,
                source: output.source,
            });
        }
    }
    report.accuracy = if report.total == 0 {
        0.0
    } else {
        report.correct as f64 / report.total as f64
    };
    report
}

/// One row of a two-system comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRow {
    pub index: usize,
    pub surface: String,
    pub expected: Vec<String>,
    pub a: String,
    pub b: String,
    pub a_correct: bool,
    pub b_correct: bool,
}

impl DiffRow {
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.index,
            self.surface,
            self.expected.join(";"),
            self.a,
            self.b,
            if self.a_correct { "ok" } else { "miss" },
            if self.b_correct { "ok" } else { "miss" }
        )
    }
}

/// Rows where two systems disagree or either misses the gold lemma, for
/// manual review.
pub fn diff_outputs(
    gold: &[GoldRecord],
    a: &[String],
    b: &[String],
) -> Result<Vec<DiffRow>, EvalError> {
    if gold.len() != a.len() || gold.len() != b.len() {
        return Err(EvalError::LengthMismatch {
            gold: gold.len(),
            a: a.len(),
            b: b.len(),
        });
    }
    Ok(gold
        .iter()
        .zip(a.iter().zip(b))
        .enumerate()
        .filter_map(|(index, (record, (a, b)))| {
            let a_correct = record.accepts(a);
            let b_correct = record.accepts(b);
            (a != b || !a_correct || !b_correct).then(|| DiffRow {
                index,
                surface: record.corrected.clone(),
                expected: record.accepted_lemmas.clone(),
                a: a.clone(),
                b: b.clone(),
                a_correct,
                b_correct,
            })
        })
        .collect())
}
