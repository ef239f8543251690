//! Whitespace- and punctuation-separated tokenization.
//!
//! The tokenizer is a lossless partition: concatenating the surfaces of the
//! returned tokens gives back the input.

use crate::orthography::is_diacritic;
use crate::translit::{is_arabic_block, is_buckwalter_char, to_buckwalter_char, Encoding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    ArabicWord,
    Number,
    Latin,
    Punctuation,
    Whitespace,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::ArabicWord => "arabic",
            TokenKind::Number => "number",
            TokenKind::Latin => "latin",
            TokenKind::Punctuation => "punctuation",
            TokenKind::Whitespace => "whitespace",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub surface: &'a str,
    pub kind: TokenKind,
    /// Byte offsets `(start, end)` into the source text.
    pub span: (usize, usize),
}

impl Token<'_> {
    /// True when the surface is written in Arabic script rather than
    /// Buckwalter.
    pub fn is_arabic_script(&self) -> bool {
        self.surface.chars().any(is_arabic_block)
    }
}

fn is_number_char(c: char) -> bool {
    c.is_ascii_digit()
        || ('\u{0660}'..='\u{0669}').contains(&c)
        || ('\u{06F0}'..='\u{06F9}').contains(&c)
}

fn is_arabic_letter(c: char) -> bool {
    // Table letters plus Arabic-block letters the table does not cover
    // (Persian and Urdu extensions); the latter never analyze.
    to_buckwalter_char(c).is_some() || (is_arabic_block(c) && c.is_alphabetic())
}

pub fn classify(c: char, encoding: Encoding) -> TokenKind {
    if c.is_whitespace() {
        TokenKind::Whitespace
    } else if is_number_char(c) {
        TokenKind::Number
    } else if is_arabic_letter(c)
        || (encoding == Encoding::Buckwalter && (is_buckwalter_char(c) || is_diacritic(c)))
    {
        TokenKind::ArabicWord
    } else if c.is_alphabetic() {
        TokenKind::Latin
    } else {
        TokenKind::Punctuation
    }
}

/// Splits `text` into maximal runs of one [`TokenKind`].
pub fn tokenize(text: &str, encoding: Encoding) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut current: Option<(TokenKind, usize)> = None;
    for (i, c) in text.char_indices() {
        let kind = classify(c, encoding);
        match current {
            Some((k, _)) if k == kind => {}
            Some((k, start)) => {
                tokens.push(Token {
                    surface: &text[start..i],
                    kind: k,
                    span: (start, i),
                });
                current = Some((kind, i));
            }
            None => current = Some((kind, i)),
        }
    }
    if let Some((kind, start)) = current {
        tokens.push(Token {
            surface: &text[start..],
            kind,
            span: (start, text.len()),
        });
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kinds<'a>(tokens: &[Token<'a>]) -> Vec<(TokenKind, &'a str)> {
        tokens.iter().map(|t| (t.kind, t.surface)).collect()
    }

    #[test]
    fn hong_kong_split() {
        let tokens = tokenize("هونغ كونغ", Encoding::Arabic);
        assert_eq!(
            kinds(&tokens),
            vec![
                (TokenKind::ArabicWord, "هونغ"),
                (TokenKind::Whitespace, " "),
                (TokenKind::ArabicWord, "كونغ"),
            ]
        );
        assert_eq!(tokens[2].span, ("هونغ ".len(), "هونغ كونغ".len()));
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("", Encoding::Arabic).is_empty());
    }

    #[test]
    fn buckwalter_word_then_period() {
        let tokens = tokenize("wbnwd.", Encoding::Buckwalter);
        assert_eq!(
            kinds(&tokens),
            vec![
                (TokenKind::ArabicWord, "wbnwd"),
                (TokenKind::Punctuation, ".")
            ]
        );
        // In Arabic mode the same ASCII letters are foreign text.
        assert_eq!(
            tokenize("wbnwd.", Encoding::Arabic)[0].kind,
            TokenKind::Latin
        );
    }

    #[test]
    fn diacritics_stay_in_word() {
        let tokens = tokenize("وَبُنُودِ، 2015", Encoding::Arabic);
        assert_eq!(
            kinds(&tokens),
            vec![
                (TokenKind::ArabicWord, "وَبُنُودِ"),
                (TokenKind::Punctuation, "،"),
                (TokenKind::Whitespace, " "),
                (TokenKind::Number, "2015"),
            ]
        );
        let tokens = tokenize(">aqolAm~ x", Encoding::Buckwalter);
        assert_eq!(tokens[0].surface, ">aqolAm~");
    }

    #[test]
    fn mixed_scripts() {
        let tokens = tokenize("Hong Kong هونغ كونغ؟ ١٢", Encoding::Arabic);
        let k: Vec<TokenKind> = tokens.iter().map(|t| t.kind).collect();
        use TokenKind::*;
        assert_eq!(
            k,
            vec![
                Latin,
                Whitespace,
                Latin,
                Whitespace,
                ArabicWord,
                Whitespace,
                ArabicWord,
                Punctuation,
                Whitespace,
                Number
            ]
        );
    }

    proptest! {
        #[test]
        fn lossless_and_maximal(text in "\\PC{0,40}", bw in any::<bool>()) {
            let encoding = if bw { Encoding::Buckwalter } else { Encoding::Arabic };
            let tokens = tokenize(&text, encoding);
            let joined: String = tokens.iter().map(|t| t.surface).collect();
            prop_assert_eq!(&joined, &text);
            for t in &tokens {
                prop_assert!(!t.surface.is_empty());
                prop_assert_eq!(&text[t.span.0..t.span.1], t.surface);
            }
            for pair in tokens.windows(2) {
                prop_assert_ne!(pair[0].kind, pair[1].kind);
            }
        }

        #[test]
        fn arabic_mixture_lossless(text in "[\u{0621}-\u{0652} .،0-9a-z]{0,40}") {
            let tokens = tokenize(&text, Encoding::Arabic);
            let joined: String = tokens.iter().map(|t| t.surface).collect();
            prop_assert_eq!(joined, text);
        }
    }
}
