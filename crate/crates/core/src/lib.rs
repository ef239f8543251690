//! Context-free Arabic lemmatization.
//!
//! A word's lemma is taken from the morphological analysis whose diacritized
//! form best agrees with the word's most frequent diacritization in a
//! corpus. The pieces:
//!
//! - [`translit`]: Buckwalter transliteration, the internal encoding.
//! - [`orthography`]: diacritic stripping and skeleton decomposition.
//! - [`tokenizer`]: lossless whitespace/punctuation tokenization.
//! - [`analyzer`]: prefix/stem/suffix analyzer with compatibility tables.
//! - [`dictionary`]: corpus frequency dictionary of diacritized forms.
//! - [`matcher`]: agreement score between two diacritizations.
//! - [`lemmatizer`]: the pipeline, including streaming.
//! - [`eval`]: gold-standard evaluation.

pub mod analyzer;
pub mod dictionary;
pub mod eval;
pub mod lemmatizer;
pub mod matcher;
pub mod orthography;
pub mod tokenizer;
pub mod translit;

pub use analyzer::{
    apply_overrides, report_ambiguous, Analysis, Analyzer, LemmaOrderOverrides, LexiconEntry,
    LexiconPaths,
};
pub use dictionary::DiacritizationDictionary;
pub use lemmatizer::{
    LemmaResult, LemmaSource, Lemmatizer, LemmatizerConfig, OutputFormat, StreamOptions,
};
pub use matcher::{match_score, MatchScore};
pub use orthography::strip_diacritics;
pub use tokenizer::{tokenize, Token, TokenKind};
pub use translit::{arabic_to_buckwalter, buckwalter_to_arabic, Encoding};
