use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::betanum::{cert_cmp, BetaSpec, CertValue, FloatBounds};
use crate::error::{Error, Result};
use crate::expansion::quasi_greedy_digits;
use crate::seqcore::EPSeq;
use crate::survivor::{hausdorff_dim, DimResult};

/// `m(t, u)`: the number of leading quasi-greedy digits `t` and `u` share.
pub fn common_prefix_len(t: &CertValue, u: &CertValue, beta: &BetaSpec) -> Result<usize> {
    if cert_cmp(t, u)? == Ordering::Equal {
        return Err(Error::IdenticalInputs);
    }
    let depth = beta.limits().digit_depth;
    let mut n = 16;
    loop {
        let n_now = n.min(depth);
        let a = quasi_greedy_digits(t, beta, n_now)?;
        let b = quasi_greedy_digits(u, beta, n_now)?;
        if let Some(i) = a.digits().iter().zip(b.digits()).position(|(x, y)| x != y) {
            return Ok(i);
        }
        if n_now == depth {
            return Err(Error::InconclusiveAtDepth(depth));
        }
        n *= 2;
    }
}

/// A Hölder exponent estimate, or `Infinite` when `η` is locally constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HolderValue {
    Finite(f64),
    Infinite,
}

impl fmt::Display for HolderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HolderValue::Finite(x) => write!(f, "{x}"),
            HolderValue::Infinite => f.write_str("inf"),
        }
    }
}

/// One sampled neighbour `t' = t ± h`. `ratio` is `None` when the difference
/// in `η` is below the noise floor.
#[derive(Clone, Debug)]
pub struct HolderSample {
    pub t: CertValue,
    pub offset: BigRational,
    pub diff: f64,
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct HolderEstimate {
    pub t: CertValue,
    pub eta_t: FloatBounds,
    pub samples: Vec<HolderSample>,
    pub estimate: HolderValue,
}

/// `h_j = 2^{-j} · first` for `j = 1..=count`.
pub fn geometric_offsets(first: &BigRational, count: usize) -> Vec<BigRational> {
    (1..=count).map(|j| first / BigRational::from_integer(BigInt::from(1) << j)).collect()
}

/// `2^{-j} · 10^{-2}`, `j = 1..=20`.
pub fn default_offsets() -> Vec<BigRational> {
    geometric_offsets(&BigRational::new(1.into(), 100.into()), 20)
}

fn noise(r: &DimResult) -> f64 {
    let lw = r.lambda_bounds.map_or(0.0, |l| l.width());
    lw.max(r.dim.width())
}

/// `liminf ln|η(t') - η(t)| / ln|t' - t|`, approximated by the smallest ratio
/// over the finest half of `offsets`.
pub fn holder_estimate(beta: &BetaSpec, t: &CertValue, offsets: &[BigRational]) -> Result<HolderEstimate> {
    let mut offsets = offsets.to_vec();
    if offsets.is_empty() || offsets.iter().any(|h| h <= &BigRational::from_integer(0.into())) {
        return Err(Error::InvalidInput("offsets must be positive".into()));
    }
    if offsets.iter().any(|h| h >= &BigRational::from_integer(1.into())) {
        return Err(Error::InvalidInput("offsets must be below 1".into()));
    }
    offsets.sort_by(|a, b| b.cmp(a));
    let base = hausdorff_dim(beta, t.clone())?;
    let zero = CertValue::from_int(0);
    let one = CertValue::from_int(1);
    let mut points = Vec::new();
    for h in &offsets {
        for sign in [-1, 1] {
            let hv = CertValue::point(if sign < 0 { -h.clone() } else { h.clone() });
            let tp = t.add(&hv)?;
            if cert_cmp(&tp, &zero)? == Ordering::Less || cert_cmp(&tp, &one)? != Ordering::Less {
                continue;
            }
            points.push((tp, h.clone()));
        }
    }
    let results: Vec<Result<DimResult>> = points.par_iter().map(|(tp, _)| hausdorff_dim(beta, tp.clone())).collect();
    let base_noise = noise(&base);
    let mut samples = Vec::with_capacity(points.len());
    for ((tp, h), r) in points.into_iter().zip(results) {
        let r = r?;
        let diff = (r.dim.mid() - base.dim.mid()).abs();
        let floor = 10.0 * base_noise.max(noise(&r));
        let hf = crate::betanum::to_f64_down(&h);
        let ratio = (diff > floor && diff > 0.0).then(|| diff.ln() / hf.ln());
        samples.push(HolderSample { t: tp, offset: h, diff, ratio });
    }
    let finest = &offsets[offsets.len() / 2..];
    let estimate = samples
        .iter()
        .filter(|s| finest.contains(&s.offset))
        .filter_map(|s| s.ratio)
        .min_by(|a, b| a.total_cmp(b))
        .map_or(HolderValue::Infinite, HolderValue::Finite);
    Ok(HolderEstimate { t: t.clone(), eta_t: base.dim, samples, estimate })
}

/// Bounds on `P_t'(x) = Σ n (α_n - t_n) x^{n-1}` from `terms` terms plus the
/// tail bound `γ Σ_{n>N} n x^{n-1}`.
pub fn pressure_derivative(alpha: &EPSeq, t: &EPSeq, x: f64, terms: usize, gamma: u8) -> FloatBounds {
    let mut sum = 0.0;
    let mut p = 1.0;
    for n in 1..=terms {
        sum += n as f64 * (alpha.digit(n - 1) as f64 - t.digit(n - 1) as f64) * p;
        p *= x;
    }
    // Σ_{n>N} n x^{n-1} = x^N (N + 1 - N x) / (1 - x)^2
    let nf = terms as f64;
    let tail = gamma as f64 * x.powi(terms as i32) * (nf + 1.0 - nf * x) / ((1.0 - x) * (1.0 - x));
    let slack = 1e-12 * sum.abs().max(1.0);
    FloatBounds::new(sum - tail - slack, sum + tail + slack)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> CertValue {
        CertValue::point(BigRational::new(n.into(), d.into()))
    }

    fn val(text: &str, b: &BetaSpec) -> CertValue {
        crate::betanum::eval_pi(&text.parse().unwrap(), b).unwrap()
    }

    #[test]
    fn prefix_lengths() {
        let two = BetaSpec::integer(2).unwrap();
        assert_eq!(common_prefix_len(&q(1, 1), &q(1, 2), &two).unwrap(), 0);
        assert_eq!(common_prefix_len(&q(11, 32), &q(23, 64), &two).unwrap(), 4);
        assert_eq!(common_prefix_len(&q(1, 3), &q(1, 3), &two), Err(Error::IdenticalInputs));
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        // quasi-greedy digits 0011100… and 0011011100…
        assert_eq!(common_prefix_len(&val("01", &b), &val("00111", &b), &b).unwrap(), 4);
    }

    #[test]
    fn locally_constant_in_the_window() {
        let b = BetaSpec::parse("one-exp:11101").unwrap();
        let e = holder_estimate(&b, &q(3, 10), &geometric_offsets(&BigRational::new(1.into(), 100.into()), 6)).unwrap();
        assert_eq!(e.estimate, HolderValue::Infinite);
    }

    #[test]
    fn binary_bifurcation_point() {
        let two = BetaSpec::integer(2).unwrap();
        let e = holder_estimate(&two, &q(1, 4), &geometric_offsets(&BigRational::new(1.into(), 100.into()), 8)).unwrap();
        let HolderValue::Finite(x) = e.estimate else { panic!("{e:?}") };
        assert!(x >= e.eta_t.mid() - 0.05, "{x} vs {}", e.eta_t.mid());
    }

    #[test]
    fn derivative_of_the_full_shift_pressure() {
        let one: EPSeq = "(1)".parse().unwrap();
        let zero: EPSeq = "0".parse().unwrap();
        let d = pressure_derivative(&one, &zero, 0.5, 200, 1);
        assert!(d.contains(4.0));
    }
}
