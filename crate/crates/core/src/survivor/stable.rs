use std::cmp::Ordering;

use crate::betanum::{cert_cmp, eval_pi, BetaSpec, CertValue};
use crate::error::{Error, Result};
use crate::expansion::{alpha_of, expand, is_admissible_with, AlphaSeq, Expanded, ExpansionKind};
use crate::seqcore::{EPSeq, Word};

/// `I_r* = (r, r*)`, the interval of parameters on which `K(·)` is constant
/// and equal to `K(r)`.
#[derive(Clone, Debug)]
pub struct StableInterval {
    pub r_word: Word,
    pub r_value: CertValue,
    pub r_star_seq: EPSeq,
    pub r_star_value: CertValue,
}

/// `S_{k,s}(t) = t_1…t_{k-1}s` with `s > t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaWord {
    pub word: Word,
    pub admissible: bool,
}

/// Result of the rewriting loop for `r*`: the final sequence and every
/// intermediate one, starting from `(r_word)^∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteChain {
    pub steps: Vec<EPSeq>,
    pub result: EPSeq,
}

impl RewriteChain {
    /// Number of rewriting steps taken.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Greedy expansion of `t ∈ [0, 1)` as an eventually periodic sequence, or
/// `InconclusiveAtDepth` when none is found within the digit depth.
pub(crate) fn greedy_seq(t: &CertValue, beta: &BetaSpec) -> Result<EPSeq> {
    let depth = beta.limits().digit_depth;
    match expand(t, beta, ExpansionKind::Greedy, depth)? {
        Expanded::Exact(s) => Ok(s),
        Expanded::Prefix(_) => Err(Error::InconclusiveAtDepth(depth)),
    }
}

/// `t ∈ K(t)` for `t` with greedy expansion `b`: every nonzero shift of `b`
/// is at least `b`.
pub fn is_bifurcation_seq(b: &EPSeq) -> bool {
    (1..=b.orbit_len()).all(|k| {
        let s = b.shift(k);
        s.is_zero() || s >= *b
    })
}

/// [`is_bifurcation_seq`] for a value, through its greedy expansion.
pub fn is_bifurcation(beta: &BetaSpec, t: &CertValue) -> Result<bool> {
    Ok(is_bifurcation_seq(&greedy_seq(t, beta)?))
}

/// `r*` for the β-rational `r` with finite greedy expansion `r_word`.
pub fn r_star(beta: &BetaSpec, r_word: &Word) -> Result<StableInterval> {
    let alpha = alpha_of(beta)?;
    let depth = beta.limits().digit_depth;
    let r = EPSeq::finite(r_word.clone());
    if r_word.last() == Some(0) || r_word.is_empty() || !is_admissible_with(&r, &alpha, depth)? {
        return Err(Error::NotGreedyRational(r_word.to_string()));
    }
    let chain = r_star_chain(r_word, &alpha, beta.gamma(), depth)?;
    let r_value = eval_pi(&r, beta)?;
    let r_star_value = match alpha.as_seq() {
        Some(a) if *a == chain.result => CertValue::from_int(1),
        _ => eval_pi(&chain.result, beta)?,
    };
    if cert_cmp(&r_value, &r_star_value)? != Ordering::Less {
        return Err(Error::InvalidInput(format!("r* does not exceed r for {r_word}")));
    }
    Ok(StableInterval { r_word: r_word.clone(), r_value, r_star_seq: chain.result, r_star_value })
}

/// The rewriting loop against an explicit comparison sequence `alpha`, which
/// need not be a genuine `α(β)`.
pub fn r_star_chain(r_word: &Word, alpha: &AlphaSeq, gamma: u8, depth: usize) -> Result<RewriteChain> {
    let start = EPSeq::periodic(r_word.clone())?;
    let mut steps = vec![start.clone()];
    if is_admissible_with(&start, alpha, depth)? {
        return Ok(RewriteChain { steps, result: start });
    }
    let alpha_seq = || match alpha {
        AlphaSeq::Exact(a) => Ok(a.clone()),
        AlphaSeq::Stream(_) => Err(Error::InconclusiveAtDepth(depth)),
    };
    if r_word.digits()[0] == gamma {
        let a = alpha_seq()?;
        steps.push(a.clone());
        return Ok(RewriteChain { steps, result: a });
    }
    let mut cur = start;
    let mut bound = usize::MAX;
    loop {
        let j = (0..cur.orbit_len())
            .find_map(|k| match alpha.cmp_shift(&cur, k, depth) {
                Ok(Ordering::Less) => None,
                Ok(_) => Some(Ok(k)),
                Err(e) => Some(Err(e)),
            })
            .transpose()?;
        let Some(j) = j else {
            return Ok(RewriteChain { steps, result: cur });
        };
        if j == 0 || j >= bound {
            let a = alpha_seq()?;
            steps.push(a.clone());
            return Ok(RewriteChain { steps, result: a });
        }
        bound = j;
        let mut head = cur.prefix(j).into_vec();
        head[j - 1] += 1;
        cur = EPSeq::finite(Word::new(head)?);
        steps.push(cur.clone());
    }
}

/// The `I_r*` containing a non-bifurcation `t`, from its greedy expansion.
pub fn stable_component(beta: &BetaSpec, t: &EPSeq) -> Result<Option<StableInterval>> {
    if is_bifurcation_seq(t) {
        return Ok(None);
    }
    let k = (1..=t.orbit_len())
        .find(|&k| {
            let s = t.shift(k);
            !s.is_zero() && s < *t
        })
        .expect("a non-bifurcation sequence has a dropping shift");
    let mut head = t.prefix(k).into_vec();
    while head.last() == Some(&0) {
        head.pop();
    }
    let interval = r_star(beta, &Word::new(head)?)?;
    let tv = eval_pi(t, beta)?;
    if cert_cmp(&interval.r_value, &tv)? != Ordering::Less || cert_cmp(&tv, &interval.r_star_value)? != Ordering::Less {
        return Err(Error::InvalidInput(format!("{t} is not inside I_r* for r = .{}", interval.r_word)));
    }
    Ok(Some(interval))
}

/// `Ω_{β,k}(t)`: the words `t_1…t_{k-1}s` with `t_k < s ≤ γ`.
pub fn omega_words(beta: &BetaSpec, t: &EPSeq, k: usize) -> Result<Vec<OmegaWord>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let alpha = alpha_of(beta)?;
    let depth = beta.limits().digit_depth;
    let head = t.prefix(k - 1);
    let mut out = Vec::new();
    for s in t.digit(k - 1) + 1..=beta.gamma() {
        let word = head.concat(&Word::new(vec![s])?);
        let admissible = is_admissible_with(&EPSeq::finite(word.clone()), &alpha, depth)?;
        out.push(OmegaWord { word, admissible });
    }
    Ok(out)
}

/// `x ∈ K(t)` for greedy expansions `x` and `t`: no shift of `x` lands in
/// `(0, t)`.
pub fn in_survivor(x: &EPSeq, t: &EPSeq) -> bool {
    (0..x.orbit_len() + 1).all(|k| {
        let s = x.shift(k);
        s.is_zero() || s >= *t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> EPSeq {
        text.parse().unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn bifurcation_examples() {
        assert!(is_bifurcation_seq(&s("01")));
        assert!(is_bifurcation_seq(&s("0")));
        assert!(is_bifurcation_seq(&s("010")));
        assert!(!is_bifurcation_seq(&s("0101")));
        assert!(!is_bifurcation_seq(&s("0101001")));
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        assert!(is_bifurcation(&b, &CertValue::from_int(0)).unwrap());
    }

    #[test]
    fn rewriting_against_a_finite_comparison_word() {
        let a = AlphaSeq::Exact(s("1101"));
        let c = r_star_chain(&w("0110011"), &a, 1, 64).unwrap();
        assert_eq!(c.steps, vec![s("(0110011)"), s("01101"), s("1")]);
        let a = AlphaSeq::Exact(s("(1101)"));
        let c = r_star_chain(&w("0110011"), &a, 1, 64).unwrap();
        assert_eq!((c.len(), c.result), (0, s("(0110011)")));
    }

    #[test]
    fn r_star_examples() {
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        let i = r_star(&b, &w("01")).unwrap();
        assert_eq!(i.r_star_seq, s("(01)"));
        let i = r_star(&b, &w("1")).unwrap();
        assert_eq!(i.r_star_seq, s("(11100)"));
        assert_eq!(i.r_star_value.cmp_rational(&num_rational::BigRational::from_integer(1.into())).unwrap(), Ordering::Equal);
        assert!(r_star(&b, &w("1111")).is_err());
        assert!(r_star(&b, &w("010")).is_err());
    }

    #[test]
    fn stable_component_examples() {
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        assert!(stable_component(&b, &s("01")).unwrap().is_none());
        let i = stable_component(&b, &s("0101001")).unwrap().unwrap();
        assert_eq!(i.r_word, w("01"));
        let i = stable_component(&b, &s("00110001")).unwrap().unwrap();
        assert_eq!(i.r_word, w("0011"));
    }

    #[test]
    fn omega_examples() {
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        let o = omega_words(&b, &s("01"), 1).unwrap();
        assert_eq!(o, vec![OmegaWord { word: w("1"), admissible: true }]);
        assert!(omega_words(&b, &s("01"), 2).unwrap().is_empty());
        let b = BetaSpec::parse("one-exp:31").unwrap();
        let o = omega_words(&b, &s("0"), 1).unwrap();
        let got: Vec<_> = o.iter().map(|o| (o.word.to_string(), o.admissible)).collect();
        assert_eq!(got, vec![("1".into(), true), ("2".into(), true), ("3".into(), true)]);
    }

    #[test]
    fn survivor_membership() {
        assert!(in_survivor(&s("(01)"), &s("01")));
        assert!(in_survivor(&s("0"), &s("01")));
        assert!(!in_survivor(&s("1001"), &s("01")));
    }
}
