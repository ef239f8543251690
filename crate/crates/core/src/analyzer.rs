//! Table-driven out-of-context morphological analyzer.
//!
//! A lexicon has three sections (prefixes, stems, suffixes) and three
//! pairwise category-compatibility tables: prefix/stem (AB), prefix/suffix
//! (AC) and stem/suffix (BC). A reading of a bare word is any split
//! `prefix + stem + suffix` whose three entries exist and whose categories
//! are pairwise compatible.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::orthography::strip_diacritics;
use crate::translit::{arabic_to_buckwalter_lossy, contains_arabic};

/// Compatibility-table row: line number and category pair.
type TableRow = (usize, String, String);

/// Longest prefix, in bare characters, the analyzer will try.
pub const MAX_PREFIX_LEN: usize = 4;
/// Longest suffix, in bare characters, the analyzer will try.
pub const MAX_SUFFIX_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Section {
    Prefix,
    Stem,
    Suffix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexiconEntry {
    pub bare: String,
    pub vocalized: String,
    pub category: String,
    pub pos: String,
    /// Empty for affixes.
    pub lemma_diacritized: String,
    pub gloss: String,
}

/// One morphological reading of a bare word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Analysis {
    pub diacritized_form: String,
    pub prefix: Arc<LexiconEntry>,
    pub stem: Arc<LexiconEntry>,
    pub suffix: Arc<LexiconEntry>,
    pub pos: String,
    pub lemma_diacritized: String,
    pub lemma_bare: String,
}

impl Analysis {
    fn new(
        prefix: &Arc<LexiconEntry>,
        stem: &Arc<LexiconEntry>,
        suffix: &Arc<LexiconEntry>,
    ) -> Self {
        let mut diacritized_form = String::with_capacity(
            prefix.vocalized.len() + stem.vocalized.len() + suffix.vocalized.len(),
        );
        diacritized_form.push_str(&prefix.vocalized);
        diacritized_form.push_str(&stem.vocalized);
        diacritized_form.push_str(&suffix.vocalized);
        Analysis {
            diacritized_form,
            prefix: Arc::clone(prefix),
            stem: Arc::clone(stem),
            suffix: Arc::clone(suffix),
            pos: stem.pos.clone(),
            lemma_diacritized: stem.lemma_diacritized.clone(),
            lemma_bare: strip_diacritics(&stem.lemma_diacritized),
        }
    }

    /// Segmentation as `prefix+stem+suffix` on bare strings, null affixes omitted.
    pub fn segmentation(&self) -> String {
        [&self.prefix.bare, &self.stem.bare, &self.suffix.bare]
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join("+")
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line_no}: malformed line: {reason}", file.display())]
    MalformedLexiconLine {
        file: PathBuf,
        line_no: usize,
        reason: String,
    },
    #[error("{}:{line_no}: unknown category '{category}'", file.display())]
    UnknownCategory {
        file: PathBuf,
        line_no: usize,
        category: String,
    },
    #[error("{}:{line_no}: vocalized form '{vocalized}' does not strip to '{bare}'", file.display())]
    VocalizationMismatch {
        file: PathBuf,
        line_no: usize,
        bare: String,
        vocalized: String,
    },
}

/// Locations of the six lexicon files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconPaths {
    pub prefixes: PathBuf,
    pub stems: PathBuf,
    pub suffixes: PathBuf,
    pub ab: PathBuf,
    pub ac: PathBuf,
    pub bc: PathBuf,
}

impl LexiconPaths {
    /// Conventional layout: `prefixes.tsv`, `stems.tsv`, `suffixes.tsv`,
    /// `ab.tsv`, `ac.tsv`, `bc.tsv` inside `dir`.
    pub fn from_dir(dir: impl AsRef<Path>) -> Self {
        let dir = dir.as_ref();
        LexiconPaths {
            prefixes: dir.join("prefixes.tsv"),
            stems: dir.join("stems.tsv"),
            suffixes: dir.join("suffixes.tsv"),
            ab: dir.join("ab.tsv"),
            ac: dir.join("ac.tsv"),
            bc: dir.join("bc.tsv"),
        }
    }
}

/// Category-pair validity tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompatibilityTables {
    pub ab: HashSet<(String, String)>,
    pub ac: HashSet<(String, String)>,
    pub bc: HashSet<(String, String)>,
}

#[derive(Default)]
struct SectionIndex {
    entries: Vec<Arc<LexiconEntry>>,
    categories: Vec<u32>,
    by_bare: HashMap<String, Vec<u32>>,
}

impl SectionIndex {
    fn push(&mut self, entry: LexiconEntry, category: u32) {
        let idx = self.entries.len() as u32;
        self.by_bare
            .entry(entry.bare.clone())
            .or_default()
            .push(idx);
        self.entries.push(Arc::new(entry));
        self.categories.push(category);
    }

    fn lookup(&self, bare: &str) -> &[u32] {
        self.by_bare.get(bare).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Immutable analyzer built from a lexicon.
pub struct Analyzer {
    prefixes: SectionIndex,
    stems: SectionIndex,
    suffixes: SectionIndex,
    tables: CompatibilityTables,
    ab: HashSet<(u32, u32)>,
    ac: HashSet<(u32, u32)>,
    bc: HashSet<(u32, u32)>,
}

fn read_file(path: &Path) -> Result<String, LexiconError> {
    fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn parse_entries(
    path: &Path,
    section: Section,
) -> Result<Vec<(usize, LexiconEntry)>, LexiconError> {
    let text = read_file(path)?;
    let mut out = Vec::new();
    for (line_no, line) in data_lines(&text) {
        let malformed = |reason: &str| LexiconError::MalformedLexiconLine {
            file: path.to_path_buf(),
            line_no,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 && fields.len() != 6 {
            return Err(malformed(&format!(
                "expected 6 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let entry = LexiconEntry {
            bare: fields[0].to_string(),
            vocalized: fields[1].to_string(),
            category: fields[2].to_string(),
            pos: fields[3].to_string(),
            lemma_diacritized: fields[4].to_string(),
            gloss: fields.get(5).unwrap_or(&"").to_string(),
        };
        if entry.category.is_empty() {
            return Err(malformed("empty category"));
        }
        match section {
            Section::Stem => {
                if entry.bare.is_empty() {
                    return Err(malformed("stem with empty bare form"));
                }
                if entry.lemma_diacritized.is_empty() {
                    return Err(malformed("stem without a lemma"));
                }
            }
            Section::Prefix | Section::Suffix => {
                if !entry.lemma_diacritized.is_empty() {
                    return Err(malformed("affix entries carry no lemma"));
                }
            }
        }
        if strip_diacritics(&entry.vocalized) != entry.bare {
            return Err(LexiconError::VocalizationMismatch {
                file: path.to_path_buf(),
                line_no,
                bare: entry.bare,
                vocalized: entry.vocalized,
            });
        }
        out.push((line_no, entry));
    }
    Ok(out)
}

fn parse_pairs(path: &Path) -> Result<Vec<(usize, String, String)>, LexiconError> {
    let text = read_file(path)?;
    let mut out = Vec::new();
    for (line_no, line) in data_lines(&text) {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 || fields[0].is_empty() || fields[1].is_empty() {
            return Err(LexiconError::MalformedLexiconLine {
                file: path.to_path_buf(),
                line_no,
                reason: "expected two tab-separated categories".to_string(),
            });
        }
        out.push((line_no, fields[0].to_string(), fields[1].to_string()));
    }
    Ok(out)
}

impl Analyzer {
    pub fn load(paths: &LexiconPaths) -> Result<Self, LexiconError> {
        let prefixes = parse_entries(&paths.prefixes, Section::Prefix)?;
        let stems = parse_entries(&paths.stems, Section::Stem)?;
        let suffixes = parse_entries(&paths.suffixes, Section::Suffix)?;
        let ab = parse_pairs(&paths.ab)?;
        let ac = parse_pairs(&paths.ac)?;
        let bc = parse_pairs(&paths.bc)?;
        Self::assemble(
            [prefixes, stems, suffixes].map(|v| v.into_iter().map(|(_, e)| e).collect()),
            [(&paths.ab, ab), (&paths.ac, ac), (&paths.bc, bc)],
        )
    }

    /// Builds an analyzer from in-memory entries and tables.
    pub fn from_parts(
        prefixes: Vec<LexiconEntry>,
        stems: Vec<LexiconEntry>,
        suffixes: Vec<LexiconEntry>,
        tables: CompatibilityTables,
    ) -> Result<Self, LexiconError> {
        for (section, entries) in [
            (Section::Prefix, &prefixes),
            (Section::Stem, &stems),
            (Section::Suffix, &suffixes),
        ] {
            for (i, e) in entries.iter().enumerate() {
                if strip_diacritics(&e.vocalized) != e.bare {
                    return Err(LexiconError::VocalizationMismatch {
                        file: PathBuf::from(format!("<{section:?}>")),
                        line_no: i + 1,
                        bare: e.bare.clone(),
                        vocalized: e.vocalized.clone(),
                    });
                }
            }
        }
        let to_rows = |set: HashSet<(String, String)>| {
            let mut rows: Vec<_> = set.into_iter().map(|(a, b)| (0, a, b)).collect();
            rows.sort();
            rows
        };
        let mem = PathBuf::from("<memory>");
        Self::assemble(
            [prefixes, stems, suffixes],
            [
                (&mem, to_rows(tables.ab)),
                (&mem, to_rows(tables.ac)),
                (&mem, to_rows(tables.bc)),
            ],
        )
    }

    fn assemble(
        sections: [Vec<LexiconEntry>; 3],
        tables: [(&PathBuf, Vec<TableRow>); 3],
    ) -> Result<Self, LexiconError> {
        let mut category_ids: HashMap<String, u32> = HashMap::new();
        let mut section_cats: [HashSet<String>; 3] = Default::default();
        let mut indices: [SectionIndex; 3] = Default::default();
        for (i, entries) in sections.into_iter().enumerate() {
            for entry in entries {
                let next = category_ids.len() as u32;
                let id = *category_ids.entry(entry.category.clone()).or_insert(next);
                section_cats[i].insert(entry.category.clone());
                indices[i].push(entry, id);
            }
        }

        // (table, left section, right section)
        let shape = [(0usize, 1usize), (0, 2), (1, 2)];
        let mut named: [HashSet<(String, String)>; 3] = Default::default();
        let mut ids: [HashSet<(u32, u32)>; 3] = Default::default();
        for (t, (path, rows)) in tables.into_iter().enumerate() {
            let (left, right) = shape[t];
            for (line_no, a, b) in rows {
                for (cat, sec) in [(&a, left), (&b, right)] {
                    if !section_cats[sec].contains(cat) {
                        return Err(LexiconError::UnknownCategory {
                            file: path.clone(),
                            line_no,
                            category: cat.clone(),
                        });
                    }
                }
                ids[t].insert((category_ids[&a], category_ids[&b]));
                named[t].insert((a, b));
            }
        }

        let [prefixes, stems, suffixes] = indices;
        let [ab_named, ac_named, bc_named] = named;
        let [ab, ac, bc] = ids;
        Ok(Analyzer {
            prefixes,
            stems,
            suffixes,
            tables: CompatibilityTables {
                ab: ab_named,
                ac: ac_named,
                bc: bc_named,
            },
            ab,
            ac,
            bc,
        })
    }

    pub fn entries(&self, section: Section) -> &[Arc<LexiconEntry>] {
        match section {
            Section::Prefix => &self.prefixes.entries,
            Section::Stem => &self.stems.entries,
            Section::Suffix => &self.suffixes.entries,
        }
    }

    pub fn tables(&self) -> &CompatibilityTables {
        &self.tables
    }

    /// All readings of a bare word.
    ///
    /// Order: prefix length ascending, then suffix length ascending, then
    /// prefix, stem and suffix entries in lexicon file order.
    pub fn analyze(&self, word: &str) -> Vec<Analysis> {
        let mut bounds: Vec<usize> = word.char_indices().map(|(i, _)| i).collect();
        bounds.push(word.len());
        let n = bounds.len() - 1;
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for p in 0..=MAX_PREFIX_LEN.min(n - 1) {
            let prefix_ids = self.prefixes.lookup(&word[..bounds[p]]);
            if prefix_ids.is_empty() {
                continue;
            }
            for x in 0..=MAX_SUFFIX_LEN.min(n - p - 1) {
                let suffix_ids = self.suffixes.lookup(&word[bounds[n - x]..]);
                if suffix_ids.is_empty() {
                    continue;
                }
                let stem_ids = self.stems.lookup(&word[bounds[p]..bounds[n - x]]);
                for &pi in prefix_ids {
                    let pc = self.prefixes.categories[pi as usize];
                    for &si in stem_ids {
                        let sc = self.stems.categories[si as usize];
                        if !self.ab.contains(&(pc, sc)) {
                            continue;
                        }
                        for &xi in suffix_ids {
                            let xc = self.suffixes.categories[xi as usize];
                            if self.ac.contains(&(pc, xc)) && self.bc.contains(&(sc, xc)) {
                                out.push(Analysis::new(
                                    &self.prefixes.entries[pi as usize],
                                    &self.stems.entries[si as usize],
                                    &self.suffixes.entries[xi as usize],
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Manually curated lemma preference per bare word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaOrderOverrides {
    pub entries: HashMap<String, Vec<String>>,
}

impl LemmaOrderOverrides {
    /// Reads `bare_word<TAB>lemma1;lemma2;...` lines. Arabic-script cells
    /// are transliterated.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = read_file(path)?;
        let mut entries = HashMap::new();
        for (line_no, line) in data_lines(&text) {
            let malformed = |reason: &str| LexiconError::MalformedLexiconLine {
                file: path.to_path_buf(),
                line_no,
                reason: reason.to_string(),
            };
            let (word, lemmas) = line
                .split_once('\t')
                .ok_or_else(|| malformed("expected word<TAB>lemmas"))?;
            let word = to_bw(word.trim());
            let lemmas: Vec<String> = lemmas
                .split(';')
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(|l| strip_diacritics(&to_bw(l)))
                .collect();
            if word.is_empty() || lemmas.is_empty() {
                return Err(malformed("empty word or lemma list"));
            }
            entries.insert(strip_diacritics(&word), lemmas);
        }
        Ok(LemmaOrderOverrides { entries })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Warnings for listed lemmas that no analysis of the word produces.
    pub fn validate(&self, analyzer: &Analyzer) -> Vec<String> {
        let mut words: Vec<&String> = self.entries.keys().collect();
        words.sort();
        let mut warnings = Vec::new();
        for word in words {
            let analyses = analyzer.analyze(word);
            for lemma in &self.entries[word] {
                if !analyses.iter().any(|a| &a.lemma_bare == lemma) {
                    warnings.push(format!(
                        "override for '{word}': lemma '{lemma}' not among its analyses"
                    ));
                }
            }
        }
        warnings
    }
}

fn to_bw(s: &str) -> String {
    if contains_arabic(s) {
        arabic_to_buckwalter_lossy(s)
    } else {
        s.to_string()
    }
}

/// Stable reorder: analyses whose lemma is listed for `word` come first in
/// override order, everything else keeps its relative order.
pub fn apply_overrides(
    word: &str,
    analyses: Vec<Analysis>,
    overrides: &LemmaOrderOverrides,
) -> Vec<Analysis> {
    let Some(preferred) = overrides.entries.get(word) else {
        return analyses;
    };
    let rank = |a: &Analysis| {
        preferred
            .iter()
            .position(|l| *l == a.lemma_bare)
            .unwrap_or(preferred.len())
    };
    let mut analyses = analyses;
    analyses.sort_by_key(rank);
    analyses
}

/// A group of analyses sharing one diacritized form but disagreeing on the lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityRow {
    pub word: String,
    pub diacritized_form: String,
    pub lemmas: Vec<String>,
}

/// Words whose analyses contain identical diacritizations with different lemmas.
pub fn report_ambiguous<'a, I>(analyzer: &Analyzer, words: I) -> Vec<AmbiguityRow>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for word in words {
        if !seen.insert(word) {
            continue;
        }
        let mut groups: Vec<(String, Vec<String>)> = Vec::new();
        for a in analyzer.analyze(word) {
            match groups.iter_mut().find(|(f, _)| *f == a.diacritized_form) {
                Some((_, lemmas)) => {
                    if !lemmas.contains(&a.lemma_bare) {
                        lemmas.push(a.lemma_bare);
                    }
                }
                None => groups.push((a.diacritized_form, vec![a.lemma_bare])),
            }
        }
        rows.extend(
            groups
                .into_iter()
                .filter(|(_, lemmas)| lemmas.len() >= 2)
                .map(|(diacritized_form, lemmas)| AmbiguityRow {
                    word: word.to_string(),
                    diacritized_form,
                    lemmas,
                }),
        );
    }
    rows
}
