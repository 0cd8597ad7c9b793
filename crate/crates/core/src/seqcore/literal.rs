//! Sequence literals.
//!
//! ```text
//! seq   := word | word "(" word ")" | "(" word ")"
//! word  := digit+
//! digit := '0' ... '9'
//! ```
//!
//! A bare word `w` denotes `w·0^∞`; `w(p)` denotes `w·p^∞`.

use super::seq::EPSeq;
use super::word::Word;
use crate::error::{Error, Result};

fn fail(text: &str, reason: impl Into<String>) -> Error {
    Error::Parse { literal: text.to_string(), reason: reason.into() }
}

pub fn parse_seq(text: &str) -> Result<EPSeq> {
    if text.is_empty() {
        return Err(fail(text, "empty input"));
    }
    let (pre, per) = match text.find('(') {
        None => (text, None),
        Some(open) => {
            let rest = &text[open + 1..];
            let close = rest.find(')').ok_or_else(|| fail(text, "missing ')'"))?;
            if close + 1 != rest.len() {
                return Err(fail(text, "trailing characters after ')'"));
            }
            (&text[..open], Some(&rest[..close]))
        }
    };
    let pre = Word::parse(pre).map_err(|_| fail(text, "illegal character"))?;
    match per {
        None => Ok(EPSeq::finite(pre)),
        Some("") => Err(fail(text, "empty period")),
        Some(p) => {
            let per = Word::parse(p).map_err(|_| fail(text, "illegal character"))?;
            EPSeq::new(pre, per)
        }
    }
}
