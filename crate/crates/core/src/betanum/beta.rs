use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebraic::RealRoot;
use super::cert::{CertValue, DEFAULT_REFINE_CAP};
use super::float::FloatBounds;
use super::poly::Poly;
use super::roots::roots_in;
use super::{parse_rational, to_f64_down, to_f64_up};
use crate::error::{Error, Result};
use crate::seqcore::{EPSeq, Word, MAX_DIGIT};

/// Work caps shared by everything computed over one base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum halvings for one refinement or sign decision.
    pub refine_cap: u32,
    /// Digits examined before an expansion or comparison against a streamed
    /// α(β) gives up.
    pub digit_depth: usize,
    /// Prefix length used when a sequence has to be bracketed by eventually
    /// periodic neighbours.
    pub bracket_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { refine_cap: DEFAULT_REFINE_CAP, digit_depth: 512, bracket_depth: 64 }
    }
}

/// How a base was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaKind {
    Rational(BigRational),
    /// Root of an integer polynomial (lowest degree first) isolated in
    /// `(lo, hi)` with `lo > 1`.
    PolyRoot { coeffs: Vec<BigInt>, lo: BigRational, hi: BigRational },
}

/// A base `β > 1`.
#[derive(Clone)]
pub struct BetaSpec {
    kind: BetaKind,
    root: RealRoot,
    gamma: u8,
    limits: Limits,
    label: String,
}

const PRE_REFINE_BITS: usize = 80;

impl BetaSpec {
    pub fn rational(q: BigRational) -> Result<Self> {
        if q <= BigRational::one() {
            return Err(Error::InvalidBeta(format!("{q} is not greater than 1")));
        }
        let label = q.to_string();
        BetaSpec::build(BetaKind::Rational(q.clone()), RealRoot::rational(q), label, Limits::default())
    }

    pub fn integer(n: u32) -> Result<Self> {
        BetaSpec::rational(BigRational::from_integer(n.into()))
    }

    /// The unique root greater than 1 of the polynomial with the given
    /// integer coefficients, highest degree first.
    pub fn poly_root(high_first: &[i64]) -> Result<Self> {
        let label = format!("poly:{}", high_first.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        let poly = Poly::from_ints(high_first.iter().rev().copied());
        BetaSpec::poly_root_of(&poly, label)
    }

    fn poly_root_of(poly: &Poly, label: String) -> Result<Self> {
        let Some(deg) = poly.degree().filter(|&d| d >= 1) else {
            return Err(Error::InvalidBeta(format!("{label}: polynomial must have positive degree")));
        };
        let lead = poly.coeff(deg).abs();
        let bound = poly.coeffs().iter().map(|c| c.abs() / &lead).max().unwrap() + BigRational::from_integer(2.into());
        let mut found = roots_in(&poly.squarefree(), &BigRational::one(), &bound);
        if found.len() != 1 {
            return Err(Error::InvalidBeta(format!("{label}: expected exactly one root above 1, found {}", found.len())));
        }
        let root = RealRoot::from_isolated(found.pop().unwrap());
        BetaSpec::from_root(root, label)
    }

    /// Wraps an existing root `> 1`.
    pub fn from_root(root: RealRoot, label: String) -> Result<Self> {
        let limits = Limits::default();
        if let Some(q) = root.exact() {
            if q <= BigRational::one() {
                return Err(Error::InvalidBeta(format!("{label}: root {q} is not greater than 1")));
            }
            return BetaSpec::build(BetaKind::Rational(q), root, label, limits);
        }
        if root.cmp_rational(&BigRational::one(), limits.refine_cap)? != Ordering::Greater {
            return Err(Error::InvalidBeta(format!("{label}: root is not greater than 1")));
        }
        let width = BigRational::new(BigInt::one(), BigInt::one() << PRE_REFINE_BITS);
        root.refine_to_width(&width, limits.refine_cap)?;
        for _ in 0..limits.refine_cap {
            if root.exact().is_some() || root.enclosure().lo() > &BigRational::one() {
                break;
            }
            root.bisect_once();
        }
        if let Some(q) = root.exact() {
            return BetaSpec::build(BetaKind::Rational(q), root, label, limits);
        }
        let e = root.enclosure();
        let kind =
            BetaKind::PolyRoot { coeffs: root.poly().to_primitive_ints(), lo: e.lo().clone(), hi: e.hi().clone() };
        BetaSpec::build(kind, root, label, limits)
    }

    fn build(kind: BetaKind, root: RealRoot, label: String, limits: Limits) -> Result<Self> {
        let gamma = compute_gamma(&root, limits.refine_cap)?;
        if gamma > MAX_DIGIT {
            return Err(Error::InvalidBeta(format!("{label}: digit bound {gamma} exceeds the alphabet 0..=9")));
        }
        Ok(BetaSpec { kind, root, gamma, limits, label })
    }

    /// Parses `2`, `3/2`, `1.5`, `poly:1,-3,-1` (highest degree first) or
    /// `one-exp:31`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(w) = text.strip_prefix("one-exp:") {
            return beta_from_one_expansion(&Word::parse(w)?);
        }
        if let Some(c) = text.strip_prefix("poly:") {
            let coeffs = c
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidBeta(format!("{text}: {e}")))?;
            return BetaSpec::poly_root(&coeffs);
        }
        let q = parse_rational(text).ok_or_else(|| Error::InvalidBeta(format!("cannot parse {text:?}")))?;
        BetaSpec::rational(q)
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn kind(&self) -> &BetaKind {
        &self.kind
    }

    pub fn root(&self) -> &RealRoot {
        &self.root
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.root.exact()
    }

    pub fn is_exact_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Largest digit: `β - 1` for integer `β`, else `⌊β⌋`.
    pub fn gamma(&self) -> u8 {
        self.gamma
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// β as a certified value.
    pub fn value(&self) -> CertValue {
        CertValue::of_root(&self.root).with_cap(self.limits.refine_cap)
    }

    /// `num(β) / den(β)`.
    pub fn value_of(&self, num: Poly, den: Poly) -> Result<CertValue> {
        CertValue::algebraic_with_cap(&self.root, num, den, self.limits.refine_cap)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.f64_bounds();
        0.5 * (lo + hi)
    }

    pub fn f64_bounds(&self) -> (f64, f64) {
        let e = self.root.enclosure();
        (to_f64_down(e.lo()), to_f64_up(e.hi()))
    }

    /// Bounds on `ln β`.
    pub fn ln_bounds(&self) -> FloatBounds {
        let (lo, hi) = self.f64_bounds();
        FloatBounds::new(lo, hi).ln()
    }

    /// Same base, decided exactly.
    pub fn same_as(&self, other: &BetaSpec) -> Result<bool> {
        self.root.same_as(&other.root, self.limits.refine_cap)
    }
}

fn compute_gamma(root: &RealRoot, cap: u32) -> Result<u8> {
    let undecided = |_| Error::UndecidableDigit { index: 0, cap };
    if let Some(q) = root.exact() {
        let f = q.floor().to_integer();
        let g = if q.is_integer() { f - 1 } else { f };
        return g.to_u8().ok_or_else(|| Error::InvalidBeta(format!("{q} is too large")));
    }
    let mut k = root.enclosure().lo().floor().to_integer();
    for _ in 0..=cap {
        let next = BigRational::from_integer(&k + 1);
        match root.cmp_rational(&next, cap).map_err(undecided)? {
            Ordering::Greater => k += 1,
            Ordering::Equal => return k.to_u8().ok_or_else(|| Error::InvalidBeta("base too large".into())),
            Ordering::Less => {
                let here = root.cmp_rational(&BigRational::from_integer(k.clone()), cap).map_err(undecided)?;
                let g = if here == Ordering::Equal { &k - 1 } else { k.clone() };
                return g.to_u8().ok_or_else(|| Error::InvalidBeta("base too large".into()));
            }
        }
    }
    Err(Error::UndecidableDigit { index: 0, cap })
}

/// Free-function form of [`BetaSpec::gamma`].
pub fn gamma_of(beta: &BetaSpec) -> u8 {
    beta.gamma()
}

impl fmt::Debug for BetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BetaSpec({} ≈ {:.12})", self.label, self.to_f64())
    }
}

impl fmt::Display for BetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// The base `β > 1` with `1 = Σ d_i β^{-i}`, checked to have `d` as its
/// greedy expansion of 1.
pub fn beta_from_one_expansion(d: &Word) -> Result<BetaSpec> {
    let label = format!("one-exp:{d}");
    let digits = d.digits();
    if digits.is_empty() {
        return Err(Error::EmptyWord);
    }
    if digits[0] == 0 || d.last() == Some(0) {
        return Err(Error::VerificationFailed(format!("{d} (leading and trailing digits must be nonzero)")));
    }
    // x^m - Σ d_i x^{m-i}
    let m = digits.len();
    let mut c = vec![BigRational::zero(); m + 1];
    c[m] = BigRational::one();
    for (i, &di) in digits.iter().enumerate() {
        c[m - 1 - i] = BigRational::from_integer((-(di as i64)).into());
    }
    let poly = Poly::from_coeffs(c);
    if !poly.eval(&BigRational::one()).is_negative() {
        return Err(Error::VerificationFailed(format!("{d} (root would not exceed 1)")));
    }
    let beta = BetaSpec::poly_root_of(&poly, label)?;
    let one = CertValue::from_int(1);
    let got = crate::expansion::greedy_digits(&one, &beta, m)?;
    if got != *d {
        return Err(Error::VerificationFailed(format!("{d} (greedy expansion of 1 starts {got})")));
    }
    Ok(beta)
}

/// Value `Σ s_i β^{-i}` of a sequence, in closed form:
/// `(P(β)(β^p - 1) + R(β)) / (β^L (β^p - 1))` with `P`, `R` the preperiod and
/// period read as base-β integers.
pub fn eval_pi(s: &EPSeq, beta: &BetaSpec) -> Result<CertValue> {
    let (num, den) = pi_fraction(s);
    beta.value_of(num, den)
}

pub(crate) fn pi_fraction(s: &EPSeq) -> (Poly, Poly) {
    let l = s.pre().len();
    let p = s.per().len();
    let pre = word_poly(s.pre());
    let per = word_poly(s.per());
    let xp1 = Poly::monomial(p).sub(&Poly::one());
    let num = pre.mul(&xp1).add(&per);
    let den = Poly::monomial(l).mul(&xp1);
    (num, den)
}

/// `Σ w_i x^{|w| - i}`.
pub(crate) fn word_poly(w: &Word) -> Poly {
    let n = w.len();
    Poly::from_coeffs(
        (0..n).map(|k| BigRational::from_integer(BigInt::from(w.digits()[n - 1 - k]))).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(BetaSpec::integer(2).unwrap().gamma(), 1);
        assert_eq!(BetaSpec::rational(q(3, 2)).unwrap().gamma(), 1);
        assert_eq!(BetaSpec::poly_root(&[1, -3, -1]).unwrap().gamma(), 3);
        assert_eq!(BetaSpec::poly_root(&[1, -5]).unwrap().gamma(), 4);
    }

    #[test]
    fn parse_forms() {
        assert!(BetaSpec::parse("2").unwrap().is_exact_rational());
        assert_eq!(BetaSpec::parse("3/2").unwrap().as_rational(), Some(q(3, 2)));
        let b = BetaSpec::parse("poly:1,-3,-1").unwrap();
        assert!((b.to_f64() - 3.302775637731995).abs() < 1e-12);
        assert!(BetaSpec::parse("1").is_err());
        assert!(BetaSpec::parse("poly:1,-5,6").is_err()); // two roots above 1
        assert!(BetaSpec::parse("poly:1,0,-4,0,1").is_ok());
        assert!(BetaSpec::parse("poly:1,1").is_err());
    }

    #[test]
    fn one_expansions() {
        let b = beta_from_one_expansion(&Word::parse("11").unwrap()).unwrap();
        assert!((b.to_f64() - 1.618033988749895).abs() < 1e-12);
        let b = beta_from_one_expansion(&Word::parse("31").unwrap()).unwrap();
        assert!((b.to_f64() - 3.302775637731995).abs() < 1e-12);
        assert!(beta_from_one_expansion(&Word::parse("13").unwrap()).is_err());
        assert!(beta_from_one_expansion(&Word::parse("1").unwrap()).is_err());
        assert!(beta_from_one_expansion(&Word::parse("10").unwrap()).is_err());
    }

    #[test]
    fn closed_form_values() {
        let two = BetaSpec::integer(2).unwrap();
        assert_eq!(eval_pi(&"1".parse().unwrap(), &two).unwrap().as_rational(), Some(&q(1, 2)));
        assert_eq!(eval_pi(&"(10)".parse().unwrap(), &two).unwrap().as_rational(), Some(&q(2, 3)));
        assert_eq!(eval_pi(&"0".parse().unwrap(), &two).unwrap().as_rational(), Some(&q(0, 1)));
        let b = BetaSpec::parse("one-exp:31").unwrap();
        let v = eval_pi(&"(30)".parse().unwrap(), &b).unwrap();
        assert_eq!(crate::betanum::cert_cmp(&v, &CertValue::from_int(1)).unwrap(), Ordering::Equal);
    }
}
