//! Diacritic classification, stripping, and skeleton decomposition.

use std::fmt;

use thiserror::Error;

/// The nine Buckwalter marks treated as diacritics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiacriticMark {
    Fatha,
    Damma,
    Kasra,
    Fathatan,
    Dammatan,
    Kasratan,
    Shadda,
    Sukun,
    DaggerAlef,
}

impl DiacriticMark {
    pub const ALL: [DiacriticMark; 9] = [
        DiacriticMark::Fatha,
        DiacriticMark::Damma,
        DiacriticMark::Kasra,
        DiacriticMark::Fathatan,
        DiacriticMark::Dammatan,
        DiacriticMark::Kasratan,
        DiacriticMark::Shadda,
        DiacriticMark::Sukun,
        DiacriticMark::DaggerAlef,
    ];

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'a' => DiacriticMark::Fatha,
            'u' => DiacriticMark::Damma,
            'i' => DiacriticMark::Kasra,
            'F' => DiacriticMark::Fathatan,
            'N' => DiacriticMark::Dammatan,
            'K' => DiacriticMark::Kasratan,
            '~' => DiacriticMark::Shadda,
            'o' => DiacriticMark::Sukun,
            '`' => DiacriticMark::DaggerAlef,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            DiacriticMark::Fatha => 'a',
            DiacriticMark::Damma => 'u',
            DiacriticMark::Kasra => 'i',
            DiacriticMark::Fathatan => 'F',
            DiacriticMark::Dammatan => 'N',
            DiacriticMark::Kasratan => 'K',
            DiacriticMark::Shadda => '~',
            DiacriticMark::Sukun => 'o',
            DiacriticMark::DaggerAlef => '`',
        }
    }

    /// Short vowels and tanween: the marks that can carry grammatical case.
    pub fn is_case_vowel(self) -> bool {
        matches!(
            self,
            DiacriticMark::Fatha
                | DiacriticMark::Damma
                | DiacriticMark::Kasra
                | DiacriticMark::Fathatan
                | DiacriticMark::Dammatan
                | DiacriticMark::Kasratan
        )
    }

    pub fn is_tanween(self) -> bool {
        matches!(
            self,
            DiacriticMark::Fathatan | DiacriticMark::Dammatan | DiacriticMark::Kasratan
        )
    }
}

impl fmt::Display for DiacriticMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn is_diacritic(c: char) -> bool {
    DiacriticMark::from_char(c).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthographyError {
    #[error("diacritic at char {position} has no preceding base letter")]
    LeadingDiacritic { position: usize },
}

/// One base letter and the marks written on it, in source order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub base: char,
    pub marks: Vec<DiacriticMark>,
}

impl Slot {
    /// Marks with shadda moved ahead of every other mark, otherwise stable.
    pub fn canonical_marks(&self) -> Vec<DiacriticMark> {
        let mut marks = self.marks.clone();
        marks.sort_by_key(|m| *m != DiacriticMark::Shadda);
        marks
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkeletonDecomposition {
    pub slots: Vec<Slot>,
}

impl SkeletonDecomposition {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// The bare skeleton: base letters only.
    pub fn base_letters(&self) -> String {
        self.slots.iter().map(|s| s.base).collect()
    }

    /// Inverse of [`decompose`].
    pub fn recompose(&self) -> String {
        let mut out = String::new();
        for slot in &self.slots {
            out.push(slot.base);
            out.extend(slot.marks.iter().map(|m| m.as_char()));
        }
        out
    }
}

pub fn strip_diacritics(word: &str) -> String {
    word.chars().filter(|&c| !is_diacritic(c)).collect()
}

pub fn is_fully_bare(word: &str) -> bool {
    !word.chars().any(is_diacritic)
}

pub fn decompose(word: &str) -> Result<SkeletonDecomposition, OrthographyError> {
    let mut slots: Vec<Slot> = Vec::with_capacity(word.len());
    for (position, c) in word.chars().enumerate() {
        match DiacriticMark::from_char(c) {
            Some(mark) => match slots.last_mut() {
                Some(slot) => slot.marks.push(mark),
                None => return Err(OrthographyError::LeadingDiacritic { position }),
            },
            None => slots.push(Slot {
                base: c,
                marks: Vec::new(),
            }),
        }
    }
    Ok(SkeletonDecomposition { slots })
}

/// Whether the word ends in a case vowel or tanween.
///
/// Also true for the accusative spelling `-FA`, where the tanween sits on
/// the letter before a final unmarked alef.
pub fn has_case_ending(word: &str) -> bool {
    let Ok(decomposition) = decompose(word) else {
        return false;
    };
    case_ending_slot(&decomposition).is_some()
}

/// Index of the slot carrying the case ending, if any.
pub(crate) fn case_ending_slot(decomposition: &SkeletonDecomposition) -> Option<usize> {
    let slots = &decomposition.slots;
    let last = slots.len().checked_sub(1)?;
    let ends_in_case = |slot: &Slot| {
        slot.canonical_marks()
            .last()
            .is_some_and(|m| m.is_case_vowel())
    };
    if ends_in_case(&slots[last]) {
        return Some(last);
    }
    if last > 0 && slots[last].base == 'A' && slots[last].marks.is_empty() {
        let prev = &slots[last - 1];
        if prev
            .canonical_marks()
            .last()
            .is_some_and(|m| m.is_tanween())
        {
            return Some(last - 1);
        }
    }
    None
}
