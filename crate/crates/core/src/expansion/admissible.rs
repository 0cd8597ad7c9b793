use std::cmp::Ordering;

use super::alpha::{alpha_of, AlphaSeq};
use crate::betanum::BetaSpec;
use crate::error::Result;
use crate::seqcore::EPSeq;

/// Parry's condition: `σ^k(s) ≺ α(β)` for all `k ≥ 0`, i.e. `s` is the greedy
/// expansion of some `x ∈ [0, 1)`.
pub fn is_admissible(s: &EPSeq, beta: &BetaSpec) -> Result<bool> {
    is_admissible_with(s, &alpha_of(beta)?, beta.limits().digit_depth)
}

/// [`is_admissible`] against a given `α`. Only the distinct shifts of `s`
/// need checking.
pub fn is_admissible_with(s: &EPSeq, alpha: &AlphaSeq, depth: usize) -> Result<bool> {
    for k in 0..s.orbit_len() {
        if alpha.cmp_shift(s, k, depth)? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `0^∞ ≺ σ^k(s) ⪯ α(β)` for all `k ≥ 0`: `s` is the quasi-greedy expansion
/// of some `x ∈ (0, 1]`.
pub fn is_quasi_admissible(s: &EPSeq, beta: &BetaSpec) -> Result<bool> {
    is_quasi_admissible_with(s, &alpha_of(beta)?, beta.limits().digit_depth)
}

pub fn is_quasi_admissible_with(s: &EPSeq, alpha: &AlphaSeq, depth: usize) -> Result<bool> {
    if s.is_eventually_zero() {
        return Ok(false);
    }
    for k in 0..s.orbit_len() {
        if alpha.cmp_shift(s, k, depth)? == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> EPSeq {
        s.parse().unwrap()
    }

    #[test]
    fn parry_fixtures() {
        let b = BetaSpec::parse("one-exp:31").unwrap();
        assert!(!is_admissible(&seq("(23)"), &b).unwrap());
        assert!(is_admissible(&seq("23"), &b).unwrap());
        assert!(is_admissible(&seq("0"), &b).unwrap());
        assert!(is_quasi_admissible(&seq("(30)"), &b).unwrap());
        assert!(!is_quasi_admissible(&seq("30"), &b).unwrap());
        assert!(is_quasi_admissible(&seq("(1)"), &BetaSpec::integer(2).unwrap()).unwrap());
    }

    #[test]
    fn streamed_alpha_is_inconclusive_on_itself() {
        let b = BetaSpec::parse("3/2").unwrap();
        let alpha = alpha_of(&b).unwrap();
        assert!(is_admissible(&seq("1"), &b).unwrap());
        let w = alpha.prefix(8).unwrap();
        let s = EPSeq::finite(w);
        assert!(is_admissible_with(&s, &alpha, 16).is_ok());
    }
}
