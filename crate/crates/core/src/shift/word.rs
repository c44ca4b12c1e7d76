use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A symbol of the alphabet `{1, …, N}`.
pub type Symbol = u8;

/// A finite word over the alphabet. The empty word is allowed.
///
/// Admissibility is a property relative to a transition matrix and is
/// checked by [`TransitionMatrix::is_admissible`](super::TransitionMatrix::is_admissible).
/// Words order lexicographically, a proper prefix sorting before its
/// extensions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// True when one word is a prefix of the other, i.e. the cylinders meet.
    pub fn overlaps(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn with(&self, s: Symbol) -> Word {
        let mut w = self.clone();
        w.0.push(s);
        w
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> &[Symbol] {
        &self.0[n..]
    }

    /// The word with its last symbol removed; `None` for the empty word.
    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl<const K: usize> From<[Symbol; K]> for Word {
    fn from(v: [Symbol; K]) -> Self {
        Word(v.to_vec())
    }
}

/// Comma-separated symbols, `EMPTY` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("EMPTY");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `1,2,1`, `EMPTY`, or the blank string (also the empty word).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "EMPTY" {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<Symbol>() {
                    Ok(0) | Err(_) => Err(Error::parse(0, format!("bad symbol {t:?}"))),
                    Ok(v) => Ok(v),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
