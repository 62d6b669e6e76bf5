//! Text forms of words and formations.
//!
//! Three word grammars are accepted:
//! - lowercase letters, `abcacb`
//! - compact digits and uppercase, where `1`..`9` are letters 0..8, `0` is
//!   letter 9 and `A`..`Z` are 10..35 (`1234567890ABCDEF` is the identity on
//!   16 letters)
//! - comma-separated integers, `0,1,2,0,2,1`
//!
//! `|` may separate rows in any of them and is otherwise ignored.

use crate::error::{Error, Result};
use crate::formation::Formation;
use crate::word::{normalize, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Grammar {
    Lowercase,
    Compact,
    Integers,
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Parses the raw letters of `text` without normalizing them.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    let first = text
        .char_indices()
        .find(|&(_, ch)| ch != '|')
        .ok_or(Error::EmptyWord)?;
    let grammar = if text.contains(',') {
        Grammar::Integers
    } else if first.1.is_ascii_lowercase() {
        Grammar::Lowercase
    } else if first.1.is_ascii_digit() || first.1.is_ascii_uppercase() {
        Grammar::Compact
    } else {
        return Err(parse_error(
            first.0,
            format!("unexpected character {:?}", first.1),
        ));
    };

    if grammar == Grammar::Integers {
        let mut letters = Vec::new();
        let mut offset = 0;
        for field in text.split([',', '|']) {
            let trimmed = field.trim();
            let value = trimmed.parse::<Letter>().map_err(|_| {
                parse_error(offset, format!("expected an integer, found {trimmed:?}"))
            })?;
            letters.push(value);
            offset += field.len() + 1;
        }
        return Ok(letters);
    }

    text.char_indices()
        .filter(|&(_, ch)| ch != '|')
        .map(|(i, ch)| match (grammar, ch) {
            (Grammar::Lowercase, 'a'..='z') => Ok(ch as Letter - 'a' as Letter),
            (Grammar::Compact, '1'..='9') => Ok(ch as Letter - '1' as Letter),
            (Grammar::Compact, '0') => Ok(9),
            (Grammar::Compact, 'A'..='Z') => Ok(ch as Letter - 'A' as Letter + 10),
            _ => Err(parse_error(
                i,
                format!("{ch:?} does not belong to the {grammar:?} grammar"),
            )),
        })
        .collect()
}

pub fn parse_word(text: &str) -> Result<Word> {
    normalize(&parse_letters(text)?)
}

/// Lowercase letters when the alphabet fits, integers otherwise.
pub fn render(w: &Word) -> String {
    render_letters(w.letters(), w.alphabet_size())
}

fn render_letters(letters: &[Letter], alphabet: usize) -> String {
    if alphabet <= 26 {
        letters
            .iter()
            .map(|&x| char::from(b'a' + x as u8))
            .collect()
    } else {
        letters
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Rows joined by `|`; each row is 0-based digits (`012|210`) when the
/// formation has at most ten letters and comma-separated integers otherwise.
pub fn render_formation(f: &Formation) -> String {
    f.rows()
        .iter()
        .map(|row| {
            if f.r() <= 10 {
                row.as_slice()
                    .iter()
                    .map(|&x| char::from(b'0' + x as u8))
                    .collect()
            } else {
                row.as_slice()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        })
        .collect::<Vec<String>>()
        .join("|")
}

/// Row in the compact digit convention (`1`..`9`, `0`, `A`..).
pub fn render_compact(letters: &[Letter]) -> Option<String> {
    letters
        .iter()
        .map(|&x| match x {
            0..=8 => Some(char::from(b'1' + x as u8)),
            9 => Some('0'),
            10..=35 => Some(char::from(b'A' + (x - 10) as u8)),
            _ => None,
        })
        .collect()
}
