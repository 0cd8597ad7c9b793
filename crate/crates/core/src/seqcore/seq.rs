use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::literal::parse_seq;
use super::word::Word;
use crate::error::{Error, Result};

/// An eventually periodic digit sequence `pre · per^∞`.
///
/// Values are always kept in canonical form: the period is primitive and the
/// preperiod does not end with the last digit of the period. Two sequences are
/// therefore equal as infinite sequences iff they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EPSeq {
    pre: Word,
    per: Word,
}

impl EPSeq {
    /// Builds and canonicalizes `pre · per^∞`.
    pub fn new(pre: Word, per: Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidInput("period must be nonempty".into()));
        }
        Ok(canonicalize_parts(pre.into_vec(), per.into_vec()))
    }

    /// `w^∞`.
    pub fn periodic(per: Word) -> Result<Self> {
        Self::new(Word::empty(), per)
    }

    /// `w · 0^∞`.
    pub fn finite(pre: Word) -> Self {
        canonicalize_parts(pre.into_vec(), vec![0])
    }

    pub fn zero() -> Self {
        EPSeq { pre: Word::empty(), per: Word::from_vec_unchecked(vec![0]) }
    }

    pub fn pre(&self) -> &Word {
        &self.pre
    }

    pub fn per(&self) -> &Word {
        &self.per
    }

    /// Number of distinct shifts `σ^k`, `k ≥ 0`.
    pub fn orbit_len(&self) -> usize {
        self.pre.len() + self.per.len()
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> u8 {
        let l = self.pre.len();
        if i < l {
            self.pre[i]
        } else {
            self.per[(i - l) % self.per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_vec_unchecked((0..n).map(|i| self.digit(i)).collect())
    }

    pub fn digits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..).map(move |i| self.digit(i))
    }

    pub fn max_digit(&self) -> u8 {
        self.pre.max_digit().max(self.per.max_digit())
    }

    pub fn is_eventually_zero(&self) -> bool {
        self.per.digits() == [0]
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.is_eventually_zero()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// `σ^n`: drops the first `n` digits.
    pub fn shift(&self, n: usize) -> EPSeq {
        let l = self.pre.len();
        if n <= l {
            return canonicalize_parts(self.pre.digits()[n..].to_vec(), self.per.digits().to_vec());
        }
        let p = self.per.len();
        let r = (n - l) % p;
        let mut per = self.per.digits()[r..].to_vec();
        per.extend_from_slice(&self.per.digits()[..r]);
        // a rotation of a primitive word is primitive, no further work needed
        EPSeq { pre: Word::empty(), per: Word::from_vec_unchecked(per) }
    }

    /// All distinct shifts `σ^k` for `k ∈ [0, orbit_len)`, paired with `k`.
    pub fn shifts(&self) -> impl Iterator<Item = (usize, EPSeq)> + '_ {
        (0..self.orbit_len()).map(move |k| (k, self.shift(k)))
    }

    /// `head · self`.
    pub fn prepend(&self, head: &Word) -> EPSeq {
        let mut pre = head.digits().to_vec();
        pre.extend_from_slice(self.pre.digits());
        canonicalize_parts(pre, self.per.digits().to_vec())
    }

    /// Exact lexicographic comparison.
    pub fn lex_cmp(&self, other: &EPSeq) -> Ordering {
        let (pa, pb) = (self.per.len(), other.per.len());
        let bound = self.pre.len() + other.pre.len() + pa.lcm(&pb) + pa.max(pb);
        for i in 0..bound {
            match self.digit(i).cmp(&other.digit(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Canonical representative of the same infinite sequence.
pub fn canonicalize(s: &EPSeq) -> EPSeq {
    canonicalize_parts(s.pre.digits().to_vec(), s.per.digits().to_vec())
}

pub fn shift(s: &EPSeq, n: usize) -> EPSeq {
    s.shift(n)
}

pub fn cmp(a: &EPSeq, b: &EPSeq) -> Ordering {
    a.lex_cmp(b)
}

fn primitive_root(per: &[u8]) -> &[u8] {
    let p = per.len();
    for d in 1..p {
        if p.is_multiple_of(d) && (d..p).all(|i| per[i] == per[i - d]) {
            return &per[..d];
        }
    }
    per
}

fn canonicalize_parts(mut pre: Vec<u8>, per: Vec<u8>) -> EPSeq {
    let mut per = primitive_root(&per).to_vec();
    while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
        if a != b {
            break;
        }
        pre.pop();
        per.rotate_right(1);
    }
    EPSeq { pre: Word::from_vec_unchecked(pre), per: Word::from_vec_unchecked(per) }
}

impl PartialOrd for EPSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of the infinite sequences.
impl Ord for EPSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Display for EPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_eventually_zero() {
            if self.pre.is_empty() {
                return write!(f, "0");
            }
            return write!(f, "{}", self.pre);
        }
        write!(f, "{}({})", self.pre, self.per)
    }
}

impl fmt::Debug for EPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPSeq({self})")
    }
}

impl FromStr for EPSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_seq(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> EPSeq {
        text.parse().unwrap()
    }

    fn parts(pre: &str, per: &str) -> EPSeq {
        EPSeq::new(Word::parse(pre).unwrap(), Word::parse(per).unwrap()).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let a = parts("01", "0101");
        assert_eq!(a.pre().to_string(), "");
        assert_eq!(a.per().to_string(), "01");
        let b = parts("", "011011");
        assert_eq!(b.per().to_string(), "011");
        let c = parts("10", "0");
        assert_eq!(c.pre().to_string(), "1");
        assert_eq!(c.per().to_string(), "0");
    }

    #[test]
    fn shifting() {
        assert_eq!(s("(01)").shift(1), s("(10)"));
        assert_eq!(s("23(0)").shift(1), s("3(0)"));
        assert_eq!(s("(011)").shift(3), s("(011)"));
        assert_eq!(s("110(01)").shift(6), s("(10)"));
        assert_eq!(s("110(01)").shift(7), s("(01)"));
    }

    #[test]
    fn comparisons() {
        assert_eq!(cmp(&s("(01)"), &s("(110)")), Ordering::Less);
        assert_eq!(cmp(&s("(23)").shift(1), &s("(30)")), Ordering::Greater);
        assert_eq!(cmp(&s("(011)"), &s("011(011)")), Ordering::Equal);
        assert_eq!(cmp(&s("1"), &s("0(1)")), Ordering::Greater);
    }

    #[test]
    fn rendering() {
        assert_eq!(s("0110011").to_string(), "0110011");
        assert_eq!(s("(0)").to_string(), "0");
        assert_eq!(s("11101001000(1)").to_string(), "11101001000(1)");
        assert_eq!(s("(30)").to_string(), "(30)");
    }
}
