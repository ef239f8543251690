//! Agreement score between a corpus diacritization and an analyzer
//! diacritization of the same skeleton.
//!
//! The two sources follow different conventions. Corpus forms are fully
//! vocalized including the case ending; analyzer forms carry no case ending
//! and routinely drop the short vowel before a long vowel and on the lam of
//! the definite article. [`reconcile`] normalizes both sides so that only
//! marks both conventions write are compared.

use crate::orthography::{
    case_ending_slot, decompose, strip_diacritics, DiacriticMark, OrthographyError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Schema {
    CorpusSchema,
    AnalyzerSchema,
}

/// Marks of one slot after reconciliation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconciledSlot {
    pub base: char,
    pub shadda: bool,
    /// Last non-shadda mark in canonical order.
    pub vowel: Option<DiacriticMark>,
    /// Vowel channel excluded from comparison.
    pub vowel_neutral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconciled {
    pub slots: Vec<ReconciledSlot>,
}

impl Reconciled {
    /// Number of marks that can take part in a comparison.
    pub fn comparable_marks(&self) -> u32 {
        self.slots
            .iter()
            .map(|s| s.shadda as u32 + (s.vowel.is_some() && !s.vowel_neutral) as u32)
            .sum()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MatchScore {
    pub agreements: u32,
    pub conflicts: u32,
}

impl MatchScore {
    pub fn score(&self) -> i64 {
        self.agreements as i64 - 2 * self.conflicts as i64
    }
}

const ARTICLE_PROCLITICS: [char; 5] = ['w', 'f', 'b', 'k', 'l'];

fn carries_vowel(marks: &[DiacriticMark]) -> bool {
    marks.iter().any(|m| m.is_case_vowel())
}

/// Decomposes `form` and applies the schema normalizations.
pub fn reconcile(form: &str, side: Schema) -> Result<Reconciled, OrthographyError> {
    let mut decomposition = decompose(form)?;
    for slot in &mut decomposition.slots {
        slot.marks = slot.canonical_marks();
    }

    if side == Schema::CorpusSchema {
        if let Some(i) = case_ending_slot(&decomposition) {
            decomposition.slots[i].marks.pop();
        }
    }

    let slots = &decomposition.slots;
    let n = slots.len();
    let mut neutral = vec![false; n];

    // Short vowel before a long-vowel letter.
    for i in 0..n.saturating_sub(1) {
        let next = &slots[i + 1];
        let is_madd = match next.base {
            'A' => true,
            'w' | 'y' => !carries_vowel(&next.marks),
            _ => false,
        };
        if is_madd {
            neutral[i] = true;
        }
    }

    // Lam of the definite article, word-initial or after one proclitic.
    let bases: Vec<char> = slots.iter().map(|s| s.base).collect();
    let article_at = |start: usize| {
        bases.get(start) == Some(&'A') && bases.get(start + 1) == Some(&'l') && n > start + 2
    };
    if article_at(0) {
        neutral[1] = true;
    } else if bases
        .first()
        .is_some_and(|c| ARTICLE_PROCLITICS.contains(c))
        && article_at(1)
    {
        neutral[2] = true;
    }

    let slots = slots
        .iter()
        .zip(neutral)
        .map(|(slot, vowel_neutral)| ReconciledSlot {
            base: slot.base,
            shadda: slot.marks.contains(&DiacriticMark::Shadda),
            vowel: slot
                .marks
                .iter()
                .rev()
                .copied()
                .find(|m| *m != DiacriticMark::Shadda),
            vowel_neutral,
        })
        .collect();
    Ok(Reconciled { slots })
}

/// Compares two reconciled forms slot by slot. `None` if skeletons differ.
pub fn compare(corpus: &Reconciled, analysis: &Reconciled) -> Option<MatchScore> {
    if corpus.slots.len() != analysis.slots.len()
        || corpus
            .slots
            .iter()
            .zip(&analysis.slots)
            .any(|(a, b)| a.base != b.base)
    {
        return None;
    }
    let mut score = MatchScore::default();
    for (c, a) in corpus.slots.iter().zip(&analysis.slots) {
        if c.shadda && a.shadda {
            score.agreements += 1;
        }
        if c.vowel_neutral || a.vowel_neutral {
            continue;
        }
        match (c.vowel, a.vowel) {
            (Some(x), Some(y)) if x == y => score.agreements += 1,
            (Some(_), Some(_)) => score.conflicts += 1,
            _ => {}
        }
    }
    Some(score)
}

/// Score of an analyzer form against a corpus form, or `None`
/// (incomparable) when their skeletons differ or either form is malformed.
pub fn match_score(corpus_form: &str, analysis_form: &str) -> Option<MatchScore> {
    if strip_diacritics(corpus_form) != strip_diacritics(analysis_form) {
        return None;
    }
    let corpus = reconcile(corpus_form, Schema::CorpusSchema).ok()?;
    let analysis = reconcile(analysis_form, Schema::AnalyzerSchema).ok()?;
    compare(&corpus, &analysis)
}
