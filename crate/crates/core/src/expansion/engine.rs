//! The digit engine: the orbit of `x` under `T_β` in exact arithmetic over
//! `Q(β)`, with an interval-only fallback for values that live over some
//! other algebraic number.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::betanum::{BetaSpec, CertValue, Interval, Poly};
use crate::error::{Error, Result};
use crate::seqcore::{EPSeq, Word};

/// Which expansion to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    Greedy,
    QuasiGreedy,
}

/// Outcome of expanding a value to the configured depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expanded {
    /// The whole expansion, detected as finite or eventually periodic.
    Exact(EPSeq),
    /// Only this prefix is known.
    Prefix(Word),
}

impl Expanded {
    pub fn as_seq(&self) -> Option<&EPSeq> {
        match self {
            Expanded::Exact(s) => Some(s),
            Expanded::Prefix(_) => None,
        }
    }

    /// The first `n` digits, if known.
    pub fn prefix(&self, n: usize) -> Option<Word> {
        match self {
            Expanded::Exact(s) => Some(s.prefix(n)),
            Expanded::Prefix(w) if w.len() >= n => Some(Word::new(w.digits()[..n].to_vec()).unwrap()),
            Expanded::Prefix(_) => None,
        }
    }
}

/// Exact orbit `x_i = N_i(β) / D(β)`, `D(β) > 0`.
pub(crate) struct ExactOrbit {
    beta: BetaSpec,
    kind: ExpansionKind,
    num: Poly,
    den: Poly,
    index: usize,
}

pub(crate) enum Orbit {
    Exact(ExactOrbit),
    Foreign(ForeignOrbit),
}

impl Orbit {
    /// Starts the orbit of `x` after checking the domain of `kind`:
    /// `[0, 1]` for greedy (1 by the endpoint convention), `(0, 1]` for
    /// quasi-greedy.
    pub(crate) fn start(x: &CertValue, beta: &BetaSpec, kind: ExpansionKind) -> Result<Orbit> {
        let zero = x.sign()?;
        let one = x.cmp_rational(&BigRational::one())?;
        let ok = match kind {
            ExpansionKind::Greedy => zero != Ordering::Less && one != Ordering::Greater,
            ExpansionKind::QuasiGreedy => zero == Ordering::Greater && one != Ordering::Greater,
        };
        if !ok {
            return Err(Error::InvalidInput(format!("{x} is outside the domain of the {kind:?} expansion")));
        }
        let same_field = match x.root() {
            None => true,
            Some(r) => r.same_as(beta.root(), beta.limits().refine_cap)?,
        };
        if same_field {
            let (num, den) = x.fraction();
            let mut o = ExactOrbit { beta: beta.clone(), kind, num, den, index: 0 };
            o.num = o.beta.root().reduce(&o.num);
            o.den = o.beta.root().reduce(&o.den);
            Ok(Orbit::Exact(o))
        } else {
            Ok(Orbit::Foreign(ForeignOrbit::new(x.clone(), beta.clone(), kind)))
        }
    }

    pub(crate) fn next_digit(&mut self) -> Result<u8> {
        match self {
            Orbit::Exact(o) => o.next_digit(),
            Orbit::Foreign(o) => o.next_digit(),
        }
    }
}

impl ExactOrbit {
    fn cap(&self) -> u32 {
        self.beta.limits().refine_cap
    }

    pub(crate) fn state_key(&self) -> &Poly {
        &self.num
    }

    /// `x_i = 0`, decided exactly.
    pub(crate) fn is_zero(&self) -> Result<bool> {
        if self.num.is_zero() {
            return Ok(true);
        }
        Ok(self.beta.root().sign_of(&self.num, self.cap())? == Ordering::Equal)
    }

    pub(crate) fn next_digit(&mut self) -> Result<u8> {
        let root = self.beta.root();
        let cap = self.cap();
        let bx = root.reduce(&self.num.mul(&Poly::x()));
        let gamma = self.beta.gamma();
        let guess = guess_upper(&bx, &self.den, root.enclosure(), gamma);
        let digit_poly = |k: u8| bx.sub(&self.den.scale(&BigRational::from_integer(BigInt::from(k))));
        let undecided = |e: Error| match e {
            Error::RefinementCapExceeded(c) => Error::UndecidableDigit { index: self.index + 1, cap: c },
            other => other,
        };
        let mut d = 0;
        for k in (1..=guess).rev() {
            let s = root.sign_of(&digit_poly(k), cap).map_err(undecided)?;
            let accept = match self.kind {
                ExpansionKind::Greedy => s != Ordering::Less,
                ExpansionKind::QuasiGreedy => s == Ordering::Greater,
            };
            if accept {
                d = k;
                break;
            }
        }
        self.num = root.reduce(&digit_poly(d));
        self.index += 1;
        Ok(d)
    }
}

// Upper estimate of the digit from interval evaluation, clamped to [0, γ].
fn guess_upper(bx: &Poly, den: &Poly, x: Interval, gamma: u8) -> u8 {
    let Some(v) = bx.eval_interval(&x).div(&den.eval_interval(&x)) else {
        return gamma;
    };
    let hi = v.hi().floor().to_integer();
    if hi.is_negative() {
        0
    } else {
        hi.to_u8().map_or(gamma, |h| h.min(gamma))
    }
}

/// Orbit computed from enclosures only: `T^i x = β^i x - Q_i(β)` with `Q_i`
/// the integer polynomial of the digits so far. Zero is never declared.
pub(crate) struct ForeignOrbit {
    x: CertValue,
    beta: BetaSpec,
    kind: ExpansionKind,
    q: Poly,
    index: usize,
}

impl ForeignOrbit {
    fn new(x: CertValue, beta: BetaSpec, kind: ExpansionKind) -> Self {
        ForeignOrbit { x, beta, kind, q: Poly::zero(), index: 0 }
    }

    fn next_digit(&mut self) -> Result<u8> {
        let cap = self.beta.limits().refine_cap;
        let gamma = self.beta.gamma() as i64;
        let i = self.index as u32;
        let bq = self.q.mul(&Poly::x());
        for _ in 0..cap {
            let b = self.beta.root().enclosure();
            let v = b.pow(i + 1).mul(self.x.enclosure()).sub(&bq.eval_interval(&b));
            if let Some(d) = decide(&v, self.kind, gamma) {
                self.q = bq.add(&Poly::constant(BigRational::from_integer(d.into())));
                self.index += 1;
                return Ok(d as u8);
            }
            self.x = self.x.refine_once()?;
            self.beta.root().bisect_once();
        }
        Err(Error::UndecidableDigit { index: self.index + 1, cap })
    }
}

// The digit of a value enclosed by `v`, if the enclosure decides it.
fn decide(v: &Interval, kind: ExpansionKind, gamma: i64) -> Option<i64> {
    let one = BigRational::one();
    match kind {
        ExpansionKind::Greedy => {
            let k = v.lo().floor().to_integer().to_i64()?;
            let k = k.max(0);
            if k >= gamma {
                return Some(gamma);
            }
            (v.hi() < &(BigRational::from_integer((k + 1).into()))).then_some(k)
        }
        ExpansionKind::QuasiGreedy => {
            let c = v.hi().ceil().to_integer().to_i64()? - 1;
            let c = c.clamp(0, gamma);
            let lo_ok = v.lo() > &BigRational::from_integer(c.into());
            let hi_ok = v.hi() <= &(BigRational::from_integer(c.into()) + &one) || c == gamma;
            (lo_ok && hi_ok).then_some(c)
        }
    }
}

/// First `n` digits.
pub fn digits(x: &CertValue, beta: &BetaSpec, kind: ExpansionKind, n: usize) -> Result<Word> {
    let mut o = Orbit::start(x, beta, kind)?;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        if let (Orbit::Exact(e), ExpansionKind::Greedy) = (&o, kind) {
            if e.is_zero()? {
                out.resize(n, 0);
                break;
            }
        }
        out.push(o.next_digit()?);
    }
    Ok(Word::new(out).expect("digits are at most gamma"))
}

/// Expands to at most `depth` digits, detecting finite and eventually
/// periodic expansions exactly.
pub fn expand(x: &CertValue, beta: &BetaSpec, kind: ExpansionKind, depth: usize) -> Result<Expanded> {
    let mut o = Orbit::start(x, beta, kind)?;
    let mut out: Vec<u8> = Vec::new();
    let e = match &mut o {
        Orbit::Foreign(_) => {
            for _ in 0..depth {
                out.push(o.next_digit()?);
            }
            return Ok(Expanded::Prefix(Word::new(out).unwrap()));
        }
        Orbit::Exact(e) => e,
    };
    let mut seen: HashMap<Poly, usize> = HashMap::new();
    for i in 0..=depth {
        if kind == ExpansionKind::Greedy && e.is_zero()? {
            return Ok(Expanded::Exact(EPSeq::finite(Word::new(out).unwrap())));
        }
        if let Some(&j) = seen.get(e.state_key()) {
            let pre = Word::new(out[..j].to_vec()).unwrap();
            let per = Word::new(out[j..].to_vec()).unwrap();
            return EPSeq::new(pre, per).map(Expanded::Exact);
        }
        if i == depth {
            break;
        }
        seen.insert(e.state_key().clone(), i);
        out.push(e.next_digit()?);
    }
    Ok(Expanded::Prefix(Word::new(out).unwrap()))
}

/// `b(x, β)`: first `n` greedy digits of `x ∈ [0, 1]`, with
/// `b(1, β) = γ · b(β - γ, β)`.
pub fn greedy_digits(x: &CertValue, beta: &BetaSpec, n: usize) -> Result<Word> {
    digits(x, beta, ExpansionKind::Greedy, n)
}

/// First `n` digits of the quasi-greedy expansion of `x ∈ (0, 1]`.
pub fn quasi_greedy_digits(x: &CertValue, beta: &BetaSpec, n: usize) -> Result<Word> {
    digits(x, beta, ExpansionKind::QuasiGreedy, n)
}
