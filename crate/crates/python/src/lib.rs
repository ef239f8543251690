//! Python bindings for the qamus lemmatizer.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use qamus::analyzer::LexiconPaths;
use qamus::dictionary::DictionaryError;
use qamus::eval::{evaluate as eval_records, load_gold, EvalError, EvalOptions};
use qamus::lemmatizer::LemmatizerError;
use qamus::{DiacritizationDictionary, Encoding, LemmatizerConfig};

fn parse_encoding(encoding: &str) -> PyResult<Encoding> {
    encoding
        .parse::<Encoding>()
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

fn dictionary_err(e: DictionaryError) -> PyErr {
    match e {
        DictionaryError::Io { .. } => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn lemmatizer_err(e: LemmatizerError) -> PyErr {
    match e {
        LemmatizerError::Dictionary(e) => dictionary_err(e),
        LemmatizerError::Lexicon(qamus::analyzer::LexiconError::Io { .. })
        | LemmatizerError::Stream { .. } => PyIOError::new_err(e.to_string()),
        LemmatizerError::Lexicon(_) => PyValueError::new_err(e.to_string()),
    }
}

fn eval_err(e: EvalError) -> PyErr {
    match e {
        EvalError::Io { .. } => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyfunction]
fn arabic_to_buckwalter(text: &str) -> PyResult<String> {
    qamus::arabic_to_buckwalter(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn buckwalter_to_arabic(text: &str) -> PyResult<String> {
    qamus::buckwalter_to_arabic(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn strip_diacritics(text: &str) -> String {
    qamus::strip_diacritics(text)
}

/// `(agreements, conflicts, score)` for two Buckwalter forms, or `None` when
/// their skeletons differ.
#[pyfunction]
fn match_score(corpus_form: &str, analysis_form: &str) -> Option<(u32, u32, i64)> {
    qamus::match_score(corpus_form, analysis_form).map(|s| (s.agreements, s.conflicts, s.score()))
}

/// `(surface, kind, start, end)` tuples; offsets are in bytes.
#[pyfunction]
#[pyo3(signature = (text, encoding = "arabic"))]
fn tokenize(text: &str, encoding: &str) -> PyResult<Vec<(String, &'static str, usize, usize)>> {
    let encoding = parse_encoding(encoding)?;
    Ok(qamus::tokenize(text, encoding)
        .into_iter()
        .map(|t| (t.surface.to_string(), t.kind.as_str(), t.span.0, t.span.1))
        .collect())
}

/// Counts a corpus and writes the dictionary to `out`. Returns the number of
/// tokens counted.
#[pyfunction]
#[pyo3(signature = (corpus, out, encoding = "arabic", min_count = 1))]
fn build_dictionary(
    py: Python<'_>,
    corpus: Vec<PathBuf>,
    out: PathBuf,
    encoding: &str,
    min_count: u64,
) -> PyResult<u64> {
    let encoding = parse_encoding(encoding)?;
    py.detach(|| {
        let dict = DiacritizationDictionary::build_from_corpus(&corpus, encoding, min_count)?;
        dict.save(&out)?;
        Ok(dict.total_tokens())
    })
    .map_err(dictionary_err)
}

#[pyclass(frozen, get_all, module = "qamus")]
struct LemmaResult {
    surface: String,
    kind: &'static str,
    lemma: String,
    lemma_buckwalter: String,
    lemma_diacritized: Option<String>,
    source: &'static str,
    score: Option<i64>,
}

#[pymethods]
impl LemmaResult {
    fn __repr__(&self) -> String {
        format!(
            "LemmaResult(surface={:?}, lemma={:?}, source={:?})",
            self.surface, self.lemma, self.source
        )
    }
}

impl From<qamus::LemmaResult> for LemmaResult {
    fn from(r: qamus::LemmaResult) -> Self {
        LemmaResult {
            lemma: r.display_lemma(),
            lemma_diacritized: r.display_lemma_diacritized(),
            kind: r.kind.as_str(),
            source: r.source.as_str(),
            score: r.score.map(|s| s.score()),
            lemma_buckwalter: r.lemma_bare,
            surface: r.input_surface,
        }
    }
}

#[pyclass(frozen, module = "qamus")]
struct Lemmatizer {
    inner: qamus::Lemmatizer,
}

#[pymethods]
impl Lemmatizer {
    #[new]
    #[pyo3(signature = (dictionary, lexicon_dir, overrides = None, normalize_hamza = false, min_count = 1))]
    fn new(
        py: Python<'_>,
        dictionary: PathBuf,
        lexicon_dir: PathBuf,
        overrides: Option<PathBuf>,
        normalize_hamza: bool,
        min_count: u64,
    ) -> PyResult<Self> {
        let config = LemmatizerConfig {
            dictionary_path: dictionary,
            lexicon_paths: LexiconPaths::from_dir(lexicon_dir),
            overrides_path: overrides,
            normalize_hamza,
            min_count,
        };
        let inner = py
            .detach(|| qamus::Lemmatizer::new(&config))
            .map_err(lemmatizer_err)?;
        Ok(Lemmatizer { inner })
    }

    /// Warnings raised while loading, such as override lemmas the analyzer
    /// never produces.
    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings().to_vec()
    }

    /// Lemmatizes one word (Arabic script or Buckwalter).
    fn lemmatize(&self, word: &str) -> LemmaResult {
        self.inner.lemmatize_surface(word).into()
    }

    /// Lemmatizes every non-whitespace token of `text`.
    #[pyo3(signature = (text, encoding = "arabic"))]
    fn lemmatize_text(
        &self,
        py: Python<'_>,
        text: &str,
        encoding: &str,
    ) -> PyResult<Vec<LemmaResult>> {
        let encoding = parse_encoding(encoding)?;
        Ok(py
            .detach(|| self.inner.lemmatize_text(text, encoding))
            .into_iter()
            .map(Into::into)
            .collect())
    }

    /// Scores against a gold file; returns `(scored, correct, accuracy)`.
    #[pyo3(signature = (gold, use_corrected = true, encoding = "arabic"))]
    fn evaluate(
        &self,
        py: Python<'_>,
        gold: PathBuf,
        use_corrected: bool,
        encoding: &str,
    ) -> PyResult<(usize, usize, f64)> {
        let encoding = parse_encoding(encoding)?;
        let records = load_gold(&gold).map_err(eval_err)?;
        let report = py.detach(|| {
            eval_records(
                &self.inner,
                &records,
                EvalOptions {
                    use_corrected,
                    encoding,
                },
            )
        });
        Ok((report.total, report.correct, report.accuracy))
    }
}

#[pymodule]
#[pyo3(name = "qamus")]
fn qamus_python(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(arabic_to_buckwalter, m)?)?;
    m.add_function(wrap_pyfunction!(buckwalter_to_arabic, m)?)?;
    m.add_function(wrap_pyfunction!(strip_diacritics, m)?)?;
    m.add_function(wrap_pyfunction!(match_score, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(build_dictionary, m)?)?;
    m.add_class::<Lemmatizer>()?;
    m.add_class::<LemmaResult>()?;
    Ok(())
}
