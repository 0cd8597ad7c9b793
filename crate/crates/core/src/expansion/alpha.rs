use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::engine::{expand, ExpansionKind, Expanded, Orbit};
use crate::betanum::{BetaSpec, CertValue};
use crate::error::{Error, Result};
use crate::seqcore::{EPSeq, Word};

/// `α(β)`, the quasi-greedy expansion of 1.
#[derive(Clone)]
pub enum AlphaSeq {
    Exact(EPSeq),
    /// Neither finite nor periodic within the detection depth; digits are
    /// produced on demand.
    Stream(Arc<AlphaStream>),
}

/// Lazily extended quasi-greedy digits of 1. Reading cached digits is shared;
/// extension holds the lock.
pub struct AlphaStream {
    beta: BetaSpec,
    state: Mutex<StreamState>,
}

struct StreamState {
    digits: Vec<u8>,
    orbit: Orbit,
}

impl AlphaStream {
    fn new(beta: &BetaSpec) -> Result<Self> {
        let orbit = Orbit::start(&CertValue::from_int(1), beta, ExpansionKind::QuasiGreedy)?;
        Ok(AlphaStream { beta: beta.clone(), state: Mutex::new(StreamState { digits: Vec::new(), orbit }) })
    }

    pub fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    /// Digit `i` (zero-based).
    pub fn digit(&self, i: usize) -> Result<u8> {
        let mut s = self.state.lock().unwrap_or_else(|e| e.into_inner());
        while s.digits.len() <= i {
            let d = s.orbit.next_digit()?;
            s.digits.push(d);
        }
        Ok(s.digits[i])
    }

    pub fn prefix(&self, n: usize) -> Result<Word> {
        if n > 0 {
            self.digit(n - 1)?;
        }
        let s = self.state.lock().unwrap_or_else(|e| e.into_inner());
        Ok(Word::new(s.digits[..n].to_vec()).unwrap())
    }

    pub fn cached_len(&self) -> usize {
        self.state.lock().unwrap_or_else(|e| e.into_inner()).digits.len()
    }
}

impl AlphaSeq {
    pub fn as_seq(&self) -> Option<&EPSeq> {
        match self {
            AlphaSeq::Exact(s) => Some(s),
            AlphaSeq::Stream(_) => None,
        }
    }

    /// Digit `i` (zero-based).
    pub fn digit(&self, i: usize) -> Result<u8> {
        match self {
            AlphaSeq::Exact(s) => Ok(s.digit(i)),
            AlphaSeq::Stream(st) => st.digit(i),
        }
    }

    pub fn prefix(&self, n: usize) -> Result<Word> {
        match self {
            AlphaSeq::Exact(s) => Ok(s.prefix(n)),
            AlphaSeq::Stream(st) => st.prefix(n),
        }
    }

    /// Compares `σ^k(s)` with `α`, up to `depth` digits for a streamed `α`.
    pub fn cmp_shift(&self, s: &EPSeq, k: usize, depth: usize) -> Result<Ordering> {
        match self {
            AlphaSeq::Exact(a) => Ok(s.shift(k).cmp(a)),
            AlphaSeq::Stream(st) => {
                for i in 0..depth {
                    match s.digit(k + i).cmp(&st.digit(i)?) {
                        Ordering::Equal => continue,
                        o => return Ok(o),
                    }
                }
                Err(Error::InconclusiveAtDepth(depth))
            }
        }
    }

    /// Compares a sequence with `α`.
    pub fn cmp_seq(&self, s: &EPSeq, depth: usize) -> Result<Ordering> {
        self.cmp_shift(s, 0, depth)
    }

    /// Compares `σ^k(α)` with `s`, up to `depth` digits for a streamed `α`.
    pub fn cmp_own_shift(&self, k: usize, s: &EPSeq, depth: usize) -> Result<Ordering> {
        match self {
            AlphaSeq::Exact(a) => Ok(a.shift(k).cmp(s)),
            AlphaSeq::Stream(st) => {
                for i in 0..depth {
                    match st.digit(k + i)?.cmp(&s.digit(i)) {
                        Ordering::Equal => continue,
                        o => return Ok(o),
                    }
                }
                Err(Error::InconclusiveAtDepth(depth))
            }
        }
    }

    pub fn render(&self, n: usize) -> String {
        match self {
            AlphaSeq::Exact(s) => s.render(),
            AlphaSeq::Stream(st) => match st.prefix(n) {
                Ok(w) => format!("{w}..."),
                Err(e) => format!("<{e}>"),
            },
        }
    }
}

impl fmt::Debug for AlphaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSeq::Exact(s) => write!(f, "AlphaSeq({s})"),
            AlphaSeq::Stream(st) => write!(f, "AlphaSeq(stream, {} cached)", st.cached_len()),
        }
    }
}

/// `α(β)`. A finite greedy expansion `d_1…d_m` of 1 gives
/// `(d_1…d_{m-1}(d_m - 1))^∞`; a periodic one is already quasi-greedy.
pub fn alpha_of(beta: &BetaSpec) -> Result<AlphaSeq> {
    let depth = beta.limits().digit_depth;
    match expand(&CertValue::from_int(1), beta, ExpansionKind::Greedy, depth)? {
        Expanded::Exact(s) if s.is_eventually_zero() => {
            let mut d = s.pre().digits().to_vec();
            *d.last_mut().expect("1 has a nonzero expansion") -= 1;
            Ok(AlphaSeq::Exact(EPSeq::periodic(Word::new(d).unwrap())?))
        }
        Expanded::Exact(s) => Ok(AlphaSeq::Exact(s)),
        Expanded::Prefix(_) => Ok(AlphaSeq::Stream(Arc::new(AlphaStream::new(beta)?))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_examples() {
        let a = alpha_of(&BetaSpec::parse("one-exp:11101").unwrap()).unwrap();
        assert_eq!(a.as_seq().unwrap().render(), "(11100)");
        let a = alpha_of(&BetaSpec::parse("one-exp:31").unwrap()).unwrap();
        assert_eq!(a.as_seq().unwrap().render(), "(30)");
        let a = alpha_of(&BetaSpec::integer(2).unwrap()).unwrap();
        assert_eq!(a.as_seq().unwrap().render(), "(1)");
        let a = alpha_of(&BetaSpec::integer(3).unwrap()).unwrap();
        assert_eq!(a.as_seq().unwrap().render(), "(2)");
    }

    #[test]
    fn streamed_alpha_for_a_rational_base() {
        let b = BetaSpec::parse("3/2").unwrap();
        let a = alpha_of(&b).unwrap();
        assert!(matches!(a, AlphaSeq::Stream(_)));
        let w = a.prefix(20).unwrap();
        let direct = super::super::engine::quasi_greedy_digits(&CertValue::from_int(1), &b, 20).unwrap();
        assert_eq!(w, direct);
    }
}
