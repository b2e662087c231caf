//! Token alphabets and the integer coding used by every stage.
//!
//! Letters are coded by their lexicographic rank, so comparing codes compares
//! the underlying tokens. The separator `#` gets the reserved code [`SEP`] and
//! is never part of an [`Alphabet`].

use std::fmt;

use crate::error::{Error, Result};

/// Integer code of a token.
pub type Sym = u32;

/// Reserved code of the separator `#`.
pub const SEP: Sym = Sym::MAX;

/// Textual form of the separator.
pub const SEP_TOKEN: &str = "#";

/// How raw text is split into tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TokenMode {
    /// One token per non-whitespace character.
    #[default]
    Char,
    /// Whitespace-separated tokens.
    Token,
}

impl std::str::FromStr for TokenMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "char" => Ok(TokenMode::Char),
            "token" => Ok(TokenMode::Token),
            other => Err(format!("unknown mode `{other}` (expected char or token)")),
        }
    }
}

impl fmt::Display for TokenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenMode::Char => "char",
            TokenMode::Token => "token",
        })
    }
}

/// Splits `text` into tokens. Whitespace only delimits; it never becomes a token.
pub fn tokenize(text: &str, mode: TokenMode) -> Vec<&str> {
    match mode {
        TokenMode::Token => text.split_whitespace().collect(),
        TokenMode::Char => text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| &text[i..i + c.len_utf8()])
            .collect(),
    }
}

/// Finite ordered alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    /// Builds the alphabet of the distinct tokens in `tokens`, sorted.
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut letters: Vec<String> = tokens.into_iter().map(|t| t.as_ref().to_owned()).collect();
        letters.sort_unstable();
        letters.dedup();
        if letters.iter().any(|l| l == SEP_TOKEN) {
            return Err(Error::SeparatorInInput);
        }
        if letters.iter().any(|l| l.is_empty()) {
            return Err(Error::UnknownToken(String::new()));
        }
        Ok(Alphabet { letters })
    }

    /// Alphabet `a, b, c, ...` of the given size (falls back to numeric tokens past 26).
    pub fn synthetic(size: usize) -> Self {
        let letters = if size <= 26 {
            (0..size).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            let width = (size - 1).to_string().len();
            (0..size).map(|i| format!("{i:0width$}")).collect()
        };
        Alphabet { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    /// Codes of all letters in rank order.
    pub fn symbols(&self) -> impl Iterator<Item = Sym> + Clone {
        0..self.letters.len() as Sym
    }

    pub fn code(&self, token: &str) -> Option<Sym> {
        self.letters
            .binary_search_by(|l| l.as_str().cmp(token))
            .ok()
            .map(|i| i as Sym)
    }

    pub fn token(&self, sym: Sym) -> &str {
        if sym == SEP {
            SEP_TOKEN
        } else {
            &self.letters[sym as usize]
        }
    }

    /// True when every letter is a single character, so char-mode rendering is lossless.
    pub fn is_char_alphabet(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Encodes tokens; `#` becomes [`SEP`].
    pub fn encode<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Vec<Sym>> {
        tokens
            .iter()
            .map(|t| {
                let t = t.as_ref();
                if t == SEP_TOKEN {
                    Ok(SEP)
                } else {
                    self.code(t).ok_or_else(|| Error::UnknownToken(t.to_owned()))
                }
            })
            .collect()
    }

    pub fn render(&self, seq: &[Sym], mode: TokenMode) -> String {
        let sep = match mode {
            TokenMode::Char => "",
            TokenMode::Token => " ",
        };
        seq.iter().map(|&s| self.token(s)).collect::<Vec<_>>().join(sep)
    }
}
