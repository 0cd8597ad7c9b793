use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest digit representable in a sequence literal.
pub const MAX_DIGIT: u8 = 9;

/// A finite word over the digits `0..=9`. May be empty.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > MAX_DIGIT) {
            return Err(Error::DigitOutOfRange(d));
        }
        Ok(Word(digits))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses a bare digit string such as `"0110011"`.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| {
                c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse {
                    literal: text.to_string(),
                    reason: format!("illegal character {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub(crate) fn from_vec_unchecked(digits: Vec<u8>) -> Self {
        debug_assert!(digits.iter().all(|&d| d <= MAX_DIGIT));
        Word(digits)
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn max_digit(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Lexicographic comparison of `self·0^∞` against `other·0^∞`.
    pub fn padded_cmp(&self, other: &Word) -> Ordering {
        word_cmp(self, other)
    }
}

/// Compares `u·0^∞` with `v·0^∞`.
pub fn word_cmp(u: &Word, v: &Word) -> Ordering {
    let n = u.len().max(v.len());
    for i in 0..n {
        let a = u.0.get(i).copied().unwrap_or(0);
        let b = v.0.get(i).copied().unwrap_or(0);
        match a.cmp(&b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl std::ops::Index<usize> for Word {
    type Output = u8;
    fn index(&self, i: usize) -> &u8 {
        &self.0[i]
    }
}
