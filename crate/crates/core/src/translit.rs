//! Buckwalter transliteration.
//!
//! Every module in this crate works on Buckwalter ASCII internally. Arabic
//! script is converted at the boundary with [`arabic_to_buckwalter`] and
//! [`buckwalter_to_arabic`].

use thiserror::Error;

/// Standard Buckwalter table: (Arabic codepoint, Buckwalter character).
pub const BUCKWALTER_TABLE: &[(char, char)] = &[
    ('\u{0621}', '\''),
    ('\u{0622}', '|'),
    ('\u{0623}', '>'),
    ('\u{0624}', '&'),
    ('\u{0625}', '<'),
    ('\u{0626}', '}'),
    ('\u{0627}', 'A'),
    ('\u{0628}', 'b'),
    ('\u{0629}', 'p'),
    ('\u{062A}', 't'),
    ('\u{062B}', 'v'),
    ('\u{062C}', 'j'),
    ('\u{062D}', 'H'),
    ('\u{062E}', 'x'),
    ('\u{062F}', 'd'),
    ('\u{0630}', '*'),
    ('\u{0631}', 'r'),
    ('\u{0632}', 'z'),
    ('\u{0633}', 's'),
    ('\u{0634}', '$'),
    ('\u{0635}', 'S'),
    ('\u{0636}', 'D'),
    ('\u{0637}', 'T'),
    ('\u{0638}', 'Z'),
    ('\u{0639}', 'E'),
    ('\u{063A}', 'g'),
    ('\u{0640}', '_'),
    ('\u{0641}', 'f'),
    ('\u{0642}', 'q'),
    ('\u{0643}', 'k'),
    ('\u{0644}', 'l'),
    ('\u{0645}', 'm'),
    ('\u{0646}', 'n'),
    ('\u{0647}', 'h'),
    ('\u{0648}', 'w'),
    ('\u{0649}', 'Y'),
    ('\u{064A}', 'y'),
    ('\u{064B}', 'F'),
    ('\u{064C}', 'N'),
    ('\u{064D}', 'K'),
    ('\u{064E}', 'a'),
    ('\u{064F}', 'u'),
    ('\u{0650}', 'i'),
    ('\u{0651}', '~'),
    ('\u{0652}', 'o'),
    ('\u{0670}', '`'),
    ('\u{0671}', '{'),
];

/// Tatweel (kashida), a purely typographic stretch character.
pub const TATWEEL: char = '_';

const ARABIC_BLOCK_START: u32 = 0x0600;
const ARABIC_BLOCK_END: u32 = 0x06FF;

// Dense lookup tables built at compile time from BUCKWALTER_TABLE.
const TO_BW: [u8; 256] = {
    let mut out = [0u8; 256];
    let mut i = 0;
    while i < BUCKWALTER_TABLE.len() {
        let (ar, bw) = BUCKWALTER_TABLE[i];
        out[(ar as u32 - ARABIC_BLOCK_START) as usize] = bw as u8;
        i += 1;
    }
    out
};

const FROM_BW: [u32; 128] = {
    let mut out = [0u32; 128];
    let mut i = 0;
    while i < BUCKWALTER_TABLE.len() {
        let (ar, bw) = BUCKWALTER_TABLE[i];
        out[bw as usize] = ar as u32;
        i += 1;
    }
    out
};

/// Boundary encoding of text handed to the tool.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Encoding {
    /// Arabic script. Latin letters are treated as foreign text.
    #[default]
    Arabic,
    /// Buckwalter ASCII. Latin letters in the Buckwalter alphabet are read
    /// as Arabic; Arabic-script tokens are still detected by codepoint.
    Buckwalter,
}

impl std::str::FromStr for Encoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arabic" => Ok(Encoding::Arabic),
            "buckwalter" => Ok(Encoding::Buckwalter),
            other => Err(format!("unknown encoding '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslitError {
    #[error("unmappable codepoint U+{:04X} at char {position}", *codepoint as u32)]
    UnmappableCodepoint { position: usize, codepoint: char },
    #[error("unmappable character {character:?} at char {position}")]
    UnmappableCharacter { position: usize, character: char },
}

pub fn is_arabic_block(c: char) -> bool {
    (ARABIC_BLOCK_START..=ARABIC_BLOCK_END).contains(&(c as u32))
}

/// Arabic punctuation and digits that live in the Arabic block but have no
/// Buckwalter letter; they pass through both directions untouched.
fn is_arabic_passthrough(c: char) -> bool {
    matches!(
        c,
        '\u{060C}' | '\u{061B}' | '\u{061F}' | '\u{066A}'..='\u{066D}'
    ) || ('\u{0660}'..='\u{0669}').contains(&c)
        || ('\u{06F0}'..='\u{06F9}').contains(&c)
}

/// Buckwalter character for an Arabic codepoint, if the table covers it.
pub fn to_buckwalter_char(c: char) -> Option<char> {
    if !is_arabic_block(c) {
        return None;
    }
    match TO_BW[(c as u32 - ARABIC_BLOCK_START) as usize] {
        0 => None,
        b => Some(b as char),
    }
}

/// Arabic codepoint for a Buckwalter character, if it is in the alphabet.
pub fn from_buckwalter_char(c: char) -> Option<char> {
    if !c.is_ascii() {
        return None;
    }
    match FROM_BW[c as usize] {
        0 => None,
        cp => char::from_u32(cp),
    }
}

/// True for characters of the Buckwalter alphabet.
pub fn is_buckwalter_char(c: char) -> bool {
    from_buckwalter_char(c).is_some()
}

/// True when the text contains at least one Arabic-script letter or mark.
pub fn contains_arabic(text: &str) -> bool {
    text.chars().any(|c| to_buckwalter_char(c).is_some())
}

pub fn arabic_to_buckwalter(text: &str) -> Result<String, TranslitError> {
    let mut out = String::with_capacity(text.len());
    for (position, c) in text.chars().enumerate() {
        if let Some(b) = to_buckwalter_char(c) {
            out.push(b);
        } else if is_arabic_block(c) && !is_arabic_passthrough(c) {
            return Err(TranslitError::UnmappableCodepoint {
                position,
                codepoint: c,
            });
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn buckwalter_to_arabic(text: &str) -> Result<String, TranslitError> {
    let mut out = String::with_capacity(text.len() * 2);
    for (position, c) in text.chars().enumerate() {
        if let Some(a) = from_buckwalter_char(c) {
            out.push(a);
        } else if c.is_ascii() {
            out.push(c);
        } else {
            return Err(TranslitError::UnmappableCharacter {
                position,
                character: c,
            });
        }
    }
    Ok(out)
}

/// Like [`arabic_to_buckwalter`] but keeps unmapped characters verbatim.
/// Used on the lemmatization hot path, which must be total.
pub fn arabic_to_buckwalter_lossy(text: &str) -> String {
    text.chars()
        .map(|c| to_buckwalter_char(c).unwrap_or(c))
        .collect()
}

/// Like [`buckwalter_to_arabic`] but keeps unmapped characters verbatim.
pub fn buckwalter_to_arabic_lossy(text: &str) -> String {
    text.chars()
        .map(|c| from_buckwalter_char(c).unwrap_or(c))
        .collect()
}
