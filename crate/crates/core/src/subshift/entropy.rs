use std::collections::{BTreeSet, HashMap};

use super::normalize::{in_range, normalize, LexPair, NormalizedPair, PairStatus};
use crate::betanum::{smallest_root_unit, CertValue, CoeffStream, FloatBounds};
use crate::error::{Error, Result};
use crate::seqcore::{EPSeq, Word};

/// Entropy of `𝒦(t, u)`: `-ln λ` with `λ` the smallest root in `(0, 1)` of
/// `Σ (b_n - a_n) z^n = 1` for the normalized pair, or 0 when there is none.
#[derive(Clone, Debug)]
pub struct EntropyResult {
    pub lambda: Option<CertValue>,
    pub entropy: FloatBounds,
    pub normalized: NormalizedPair,
}

/// Width to which `λ` is refined before taking the logarithm.
pub const LAMBDA_WIDTH: f64 = 1e-15;

pub fn entropy(p: &LexPair) -> Result<EntropyResult> {
    let normalized = normalize(p)?;
    entropy_of_normalized(normalized)
}

/// Entropy of an already normalized pair.
pub fn entropy_of_normalized(normalized: NormalizedPair) -> Result<EntropyResult> {
    if normalized.status != PairStatus::Nonempty {
        return Ok(EntropyResult { lambda: None, entropy: FloatBounds::zero(), normalized });
    }
    let c = CoeffStream::difference(&normalized.b, &normalized.a);
    match smallest_root_unit(&c) {
        None => Ok(EntropyResult { lambda: None, entropy: FloatBounds::zero(), normalized }),
        Some(l) => {
            let l = l.refine_f64(LAMBDA_WIDTH)?;
            let (lo, hi) = l.f64_bounds();
            let entropy = FloatBounds::new(lo, hi).neg_ln().clamp(0.0, f64::INFINITY);
            Ok(EntropyResult { lambda: Some(l), entropy, normalized })
        }
    }
}

/// Every member of a zero-entropy subshift, when it consists of periodic
/// points: brute force over periods up to `period_cap`. `None` when the
/// entropy is positive.
pub fn enumerate_if_finite(np: &NormalizedPair, period_cap: usize) -> Result<Option<Vec<EPSeq>>> {
    match np.status {
        PairStatus::Empty => return Ok(Some(Vec::new())),
        PairStatus::DegenerateBoundary => {
            let cands = [EPSeq::zero(), EPSeq::periodic(Word::new(vec![1]).unwrap()).unwrap()];
            return Ok(Some(cands.into_iter().filter(|x| in_range(x, &np.a, &np.b)).collect()));
        }
        PairStatus::Nonempty => {}
    }
    let r = entropy_of_normalized(np.clone())?;
    if r.lambda.is_some() {
        return Ok(None);
    }
    if !np.a.is_purely_periodic() || !np.b.is_purely_periodic() {
        return Err(Error::NotFinite);
    }
    let period = np.a.per().len().max(np.b.per().len());
    if period > period_cap {
        return Err(Error::CapTooSmall { period, cap: period_cap });
    }
    let mut found = BTreeSet::new();
    for n in 1..=period_cap {
        for bits in 0u64..(1u64 << n) {
            let w: Vec<u8> = (0..n).rev().map(|i| ((bits >> i) & 1) as u8).collect();
            let x = EPSeq::periodic(Word::new(w).unwrap()).unwrap();
            if x.per().len() == n && in_range(&x, &np.a, &np.b) {
                found.insert(x);
            }
        }
    }
    Ok(Some(found.into_iter().collect()))
}

/// Test oracle: `ln(N_n / N_{n-1})` where `N_n` counts binary words of length
/// `n` avoiding every word in `forbidden`, by dynamic programming over
/// suffixes.
pub fn sft_entropy_oracle(forbidden: &[Word], n: usize) -> f64 {
    let m = forbidden.iter().map(Word::len).max().unwrap_or(1).max(1);
    let keep = m - 1;
    let bad = |w: &[u8]| forbidden.iter().any(|f| !f.is_empty() && w.ends_with(f.digits()));
    let mut states: HashMap<Vec<u8>, f64> = HashMap::from([(Vec::new(), 1.0)]);
    let mut last_ratio = 2.0;
    for _ in 0..n {
        let mut next: HashMap<Vec<u8>, f64> = HashMap::new();
        for (s, &c) in &states {
            for d in 0..2u8 {
                let mut w = s.clone();
                w.push(d);
                if bad(&w) {
                    continue;
                }
                let cut = w.len().saturating_sub(keep);
                *next.entry(w[cut..].to_vec()).or_insert(0.0) += c;
            }
        }
        let total: f64 = next.values().sum();
        if total == 0.0 {
            return f64::NEG_INFINITY;
        }
        let before: f64 = states.values().sum();
        last_ratio = total / before;
        for v in next.values_mut() {
            *v /= total;
        }
        states = next;
    }
    last_ratio.ln()
}
