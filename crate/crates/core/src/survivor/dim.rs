use std::cmp::Ordering;
use std::fmt;

use super::stable::greedy_seq;
use crate::betanum::{cert_cmp, eval_pi, smallest_root_unit, BetaSpec, CertValue, CoeffStream, FloatBounds};
use crate::error::{Error, Result};
use crate::expansion::{alpha_of, expand, is_admissible_with, is_quasi_admissible_with, AlphaSeq, Expanded, ExpansionKind};
use crate::seqcore::{EPSeq, Word};
use crate::subshift::{normalize, LexPair, NormalizedPair, PairStatus, LAMBDA_WIDTH};

/// Verdict on the hypothesis `Σ_{i≥k} α_i/β^i ≥ t` for all `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    Holds,
    /// Least violating `k` (one-based).
    Fails(usize),
    Inconclusive,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Holds => f.write_str("holds"),
            Hypothesis::Fails(k) => write!(f, "fails({k})"),
            Hypothesis::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// Both readings of the hypothesis. `orbit` compares the value of
/// `σ^{k-1}α` with `t`; `literal` compares the tail sum as written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub orbit: Hypothesis,
    pub literal: Hypothesis,
}

/// The parameter `t`: a value, or a digit sequence (a finite greedy
/// expansion, or an infinite quasi-greedy one).
#[derive(Clone, Debug)]
pub enum TParam {
    Value(CertValue),
    Seq(EPSeq),
}

impl From<CertValue> for TParam {
    fn from(v: CertValue) -> Self {
        TParam::Value(v)
    }
}

impl From<EPSeq> for TParam {
    fn from(s: EPSeq) -> Self {
        TParam::Seq(s)
    }
}

/// Quasi-greedy expansion of `t`, when eventually periodic, or its first
/// digits otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TSeq {
    Exact(EPSeq),
    Prefix(Word),
}

impl TSeq {
    pub fn as_seq(&self) -> Option<&EPSeq> {
        match self {
            TSeq::Exact(s) => Some(s),
            TSeq::Prefix(_) => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            TSeq::Exact(s) => s.render(),
            TSeq::Prefix(w) => format!("{w}..."),
        }
    }
}

/// `dim_H K(t)` with the data it was computed from.
///
/// When `exact` is false the quasi-greedy expansion of `t` or `α(β)` is not
/// eventually periodic and the bounds come from bracketing it between
/// eventually periodic sequences; `dim` still encloses the true value.
#[derive(Clone, Debug)]
pub struct DimResult {
    pub beta: BetaSpec,
    pub t: CertValue,
    pub t_seq: TSeq,
    pub lambda: Option<CertValue>,
    pub lambda_bounds: Option<FloatBounds>,
    pub entropy: FloatBounds,
    pub dim: FloatBounds,
    pub hypothesis_main1: Hypothesis,
    pub hypothesis: HypothesisReport,
    pub normalized: Option<NormalizedPair>,
    pub exact: bool,
}

/// Resolved form of `t`.
#[derive(Clone, Debug)]
pub struct ResolvedT {
    pub value: CertValue,
    pub quasi: TSeq,
}

fn one_seq() -> EPSeq {
    EPSeq::periodic(Word::new(vec![1]).unwrap()).unwrap()
}

/// Value and quasi-greedy expansion of `t ∈ [0, 1)`. A zero `t` has no
/// quasi-greedy expansion and resolves to `0^∞`.
pub fn resolve_t(beta: &BetaSpec, alpha: &AlphaSeq, t: &TParam) -> Result<ResolvedT> {
    let depth = beta.limits().digit_depth;
    let (value, quasi) = match t {
        TParam::Value(v) => {
            match v.sign()? {
                Ordering::Less => return Err(Error::InvalidInput(format!("t = {v} is negative"))),
                Ordering::Equal => return Ok(ResolvedT { value: v.clone(), quasi: TSeq::Exact(EPSeq::zero()) }),
                Ordering::Greater => {}
            }
            let q = match expand(v, beta, ExpansionKind::QuasiGreedy, depth)? {
                Expanded::Exact(s) => TSeq::Exact(s),
                Expanded::Prefix(w) => TSeq::Prefix(w),
            };
            (v.clone(), q)
        }
        TParam::Seq(s) if s.is_zero() => return Ok(ResolvedT { value: CertValue::from_int(0), quasi: TSeq::Exact(s.clone()) }),
        TParam::Seq(s) if s.is_eventually_zero() => {
            if !is_admissible_with(s, alpha, depth)? {
                return Err(Error::NotGreedyRational(s.render()));
            }
            let mut head = s.pre().digits().to_vec();
            *head.last_mut().unwrap() -= 1;
            let head = Word::new(head)?;
            let q = match alpha {
                AlphaSeq::Exact(a) => TSeq::Exact(a.prepend(&head)),
                AlphaSeq::Stream(_) => TSeq::Prefix(head.concat(&alpha.prefix(depth)?)),
            };
            (eval_pi(s, beta)?, q)
        }
        TParam::Seq(s) => {
            if !is_quasi_admissible_with(s, alpha, depth)? {
                return Err(Error::InvalidInput(format!("{s} is not a quasi-greedy expansion")));
            }
            (eval_pi(s, beta)?, TSeq::Exact(s.clone()))
        }
    };
    if cert_cmp(&value, &CertValue::from_int(1))? != Ordering::Less {
        return Err(Error::InvalidInput("t must be below 1".into()));
    }
    Ok(ResolvedT { value, quasi })
}

/// Greedy expansion of `t`, from a sequence argument or by expanding a value.
pub fn greedy_of(beta: &BetaSpec, alpha: &AlphaSeq, t: &TParam) -> Result<EPSeq> {
    match t {
        TParam::Seq(s) if s.is_eventually_zero() => Ok(s.clone()),
        TParam::Seq(s) => {
            let depth = beta.limits().digit_depth;
            if is_admissible_with(s, alpha, depth)? {
                Ok(s.clone())
            } else {
                greedy_seq(&eval_pi(s, beta)?, beta)
            }
        }
        TParam::Value(v) => greedy_seq(v, beta),
    }
}

/// Both readings of the hypothesis at `t`.
pub fn check_main1_hypothesis(beta: &BetaSpec, t: &CertValue) -> Result<HypothesisReport> {
    let alpha = alpha_of(beta)?;
    hypothesis_with(beta, &alpha, t)
}

fn hypothesis_with(beta: &BetaSpec, alpha: &AlphaSeq, t: &CertValue) -> Result<HypothesisReport> {
    if t.sign()? != Ordering::Greater {
        return Ok(HypothesisReport { orbit: Hypothesis::Holds, literal: Hypothesis::Holds });
    }
    let depth = beta.limits().digit_depth;
    let b = beta.value();
    // Values of σ^k α, k = 0, 1, …: exact shifts for an eventually periodic
    // α, otherwise the orbit x_{k+1} = β x_k - α_{k+1} of 1.
    let shift_values: Box<dyn Fn(usize) -> Result<CertValue>> = match alpha {
        AlphaSeq::Exact(a) => {
            let a = a.clone();
            let beta = beta.clone();
            Box::new(move |k| if k == 0 { Ok(CertValue::from_int(1)) } else { eval_pi(&a.shift(k), &beta) })
        }
        AlphaSeq::Stream(_) => {
            let cache = std::cell::RefCell::new(vec![CertValue::from_int(1)]);
            let b = b.clone();
            let alpha = alpha.clone();
            Box::new(move |k| {
                let mut c = cache.borrow_mut();
                while c.len() <= k {
                    let i = c.len();
                    let d = CertValue::from_int(alpha.digit(i - 1)? as i64);
                    let next = c[i - 1].mul(&b)?.sub(&d)?;
                    c.push(next);
                }
                Ok(c[k].clone())
            })
        }
    };
    let orbit_span = match alpha {
        AlphaSeq::Exact(a) => Some(a.orbit_len()),
        AlphaSeq::Stream(_) => None,
    };
    let mut orbit = Hypothesis::Inconclusive;
    for k in 0..orbit_span.unwrap_or(depth) {
        if cert_cmp(&shift_values(k)?, t)? == Ordering::Less {
            orbit = Hypothesis::Fails(k + 1);
            break;
        }
    }
    if orbit == Hypothesis::Inconclusive && orbit_span.is_some() {
        orbit = Hypothesis::Holds;
    }
    // The tail sum is β^{-k} times the value of σ^k α, and drops below t once
    // β^{-k} < t.
    let mut literal = Hypothesis::Inconclusive;
    let mut scale = CertValue::from_int(1);
    for k in 0..depth {
        let tail = scale.mul(&shift_values(k)?)?;
        if cert_cmp(&tail, t)? == Ordering::Less {
            literal = Hypothesis::Fails(k + 1);
            break;
        }
        scale = scale.div(&b)?;
    }
    Ok(HypothesisReport { orbit, literal })
}

struct PairEntropy {
    lambda: Option<CertValue>,
    entropy: FloatBounds,
    normalized: Option<NormalizedPair>,
}

fn pair_entropy(t: &EPSeq, u: &EPSeq) -> Result<PairEntropy> {
    if t > u {
        return Ok(PairEntropy { lambda: None, entropy: FloatBounds::zero(), normalized: None });
    }
    let normalized = normalize(&LexPair::new(t.clone(), u.clone())?)?;
    if normalized.status != PairStatus::Nonempty {
        return Ok(PairEntropy { lambda: None, entropy: FloatBounds::zero(), normalized: Some(normalized) });
    }
    let c = CoeffStream::difference(&normalized.b, &normalized.a);
    let Some(l) = smallest_root_unit(&c) else {
        return Ok(PairEntropy { lambda: None, entropy: FloatBounds::zero(), normalized: Some(normalized) });
    };
    let l = l.refine_f64(LAMBDA_WIDTH)?;
    let (lo, hi) = l.f64_bounds();
    let entropy = FloatBounds::new(lo, hi).neg_ln().clamp(0.0, f64::INFINITY);
    Ok(PairEntropy { lambda: Some(l), entropy, normalized: Some(normalized) })
}

/// `dim_H K(t) = h_top(𝒦(t̃, α(β))) / ln β` for `1 < β ≤ 2`, always through
/// normalization and the entropy root; the hypothesis is only reported.
pub fn hausdorff_dim(beta: &BetaSpec, t: impl Into<TParam>) -> Result<DimResult> {
    if beta.gamma() != 1 {
        return Err(Error::InvalidBeta(format!("{beta} is above 2")));
    }
    let alpha = alpha_of(beta)?;
    let r = resolve_t(beta, &alpha, &t.into())?;
    let hypothesis = hypothesis_with(beta, &alpha, &r.value)?;
    let ln_beta = beta.ln_bounds();
    let finish = |lambda, lambda_bounds, entropy: FloatBounds, normalized, exact| {
        let dim = if entropy == FloatBounds::zero() { entropy } else { entropy.div_pos(&ln_beta).clamp(0.0, 1.0) };
        Ok(DimResult {
            beta: beta.clone(),
            t: r.value.clone(),
            t_seq: r.quasi.clone(),
            lambda,
            lambda_bounds,
            entropy,
            dim,
            hypothesis_main1: hypothesis.orbit,
            hypothesis,
            normalized,
            exact,
        })
    };
    if r.value.sign()? == Ordering::Equal {
        let l = CertValue::from_int(1).div(&beta.value())?.refine_f64(LAMBDA_WIDTH)?;
        let (lo, hi) = l.f64_bounds();
        let lb = FloatBounds::new(lo, hi);
        let mut r = finish(Some(l), Some(lb), ln_beta, None, true)?;
        r.dim = FloatBounds::exact(1.0);
        return Ok(r);
    }
    let bd = beta.limits().bracket_depth;
    let (u_lo, u_hi) = match &alpha {
        AlphaSeq::Exact(a) => (a.clone(), a.clone()),
        AlphaSeq::Stream(_) => {
            let p = alpha.prefix(bd)?;
            (EPSeq::finite(p.clone()), one_seq().prepend(&p))
        }
    };
    match (&r.quasi, &alpha) {
        (TSeq::Exact(ts), AlphaSeq::Exact(a)) => {
            let p = pair_entropy(ts, a)?;
            let lb = p.lambda.as_ref().map(|l| {
                let (lo, hi) = l.f64_bounds();
                FloatBounds::new(lo, hi)
            });
            finish(p.lambda, lb, p.entropy, p.normalized, true)
        }
        _ => {
            let (t_lo, t_hi) = match &r.quasi {
                TSeq::Exact(ts) => (ts.clone(), ts.clone()),
                TSeq::Prefix(w) => {
                    let head = Word::new(w.digits()[..bd.min(w.len())].to_vec())?;
                    (EPSeq::finite(head.clone()), u_hi.prepend(&head))
                }
            };
            let big = pair_entropy(&t_lo, &u_hi)?;
            let small = pair_entropy(&t_hi, &u_lo)?;
            let entropy = FloatBounds::new(small.entropy.lo, big.entropy.hi);
            let lambda_bounds = big.lambda.as_ref().map(|l| {
                let lo = l.f64_bounds().0;
                let hi = small.lambda.as_ref().map_or(1.0, |s| s.f64_bounds().1);
                FloatBounds::new(lo, hi)
            });
            finish(None, lambda_bounds, entropy, None, false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn s(text: &str) -> EPSeq {
        text.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> CertValue {
        CertValue::point(BigRational::new(n.into(), d.into()))
    }

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if (f(m) > 0.0) == (f(hi) > 0.0) {
                hi = m;
            } else {
                lo = m;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn example_base_window() {
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        let lam = bisect(|x| x * x + x * x * x - 1.0, 0.0, 1.0);
        let beta = bisect(|x| x.powi(5) - x.powi(4) - x.powi(3) - x * x - 1.0, 1.0, 2.0);
        let r = hausdorff_dim(&b, s("01")).unwrap();
        assert!(r.exact);
        let (lo, hi) = r.lambda.as_ref().unwrap().f64_bounds();
        assert!((lo - lam).abs() < 1e-12 && (hi - lam).abs() < 1e-12);
        let eta = -lam.ln() / beta.ln();
        assert!((r.dim.mid() - eta).abs() < 1e-12);
        assert!((eta - 0.4423).abs() < 1e-4);
        // σ³α = (00111)^∞ has value exactly 1/β² = t, so the orbit reading holds.
        assert_eq!(r.hypothesis, HypothesisReport { orbit: Hypothesis::Holds, literal: Hypothesis::Fails(3) });
        let r2 = hausdorff_dim(&b, s("00111")).unwrap();
        assert!((r2.dim.mid() - r.dim.mid()).abs() < 1e-12);
    }

    #[test]
    fn zero_and_top() {
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        let r = hausdorff_dim(&b, CertValue::from_int(0)).unwrap();
        assert!(r.dim.contains(1.0));
        assert!(r.lambda_bounds.unwrap().contains(1.0 / b.to_f64()));
        assert_eq!(r.hypothesis, HypothesisReport { orbit: Hypothesis::Holds, literal: Hypothesis::Holds });
        for t in [q(6, 10), q(7, 10), q(9, 10)] {
            assert_eq!(hausdorff_dim(&b, t).unwrap().dim, FloatBounds::zero());
        }
    }

    #[test]
    fn binary_base() {
        let two = BetaSpec::integer(2).unwrap();
        let r = hausdorff_dim(&two, q(1, 4)).unwrap();
        assert_eq!(r.t_seq, TSeq::Exact(s("00(1)")));
        let fib = ((1.0 + 5f64.sqrt()) / 2.0).ln() / 2f64.ln();
        assert!((r.dim.mid() - fib).abs() < 1e-12, "{:?}", r.dim);
        assert_eq!(r.hypothesis.orbit, Hypothesis::Holds);
        assert!(matches!(r.hypothesis.literal, Hypothesis::Fails(_)));
    }

    #[test]
    fn rational_base_brackets() {
        let b = BetaSpec::parse("3/2").unwrap();
        let r = hausdorff_dim(&b, q(1, 5)).unwrap();
        assert!(!r.exact);
        assert!(r.dim.width() < 1e-3, "{:?}", r.dim);
        assert!(r.dim.lo > 0.0 && r.dim.hi < 1.0);
    }
}
