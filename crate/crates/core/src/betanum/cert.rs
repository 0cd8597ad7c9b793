use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebraic::RealRoot;
use super::interval::Interval;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Default refinement cap, in halvings.
pub const DEFAULT_REFINE_CAP: u32 = 4096;

/// A certified real number: either an exact rational, or `num(θ)/den(θ)` for
/// a real algebraic `θ`, carried with a rational enclosure that can be
/// halved on demand.
#[derive(Clone)]
pub struct CertValue {
    repr: Repr,
    enclosure: Interval,
    cap: u32,
}

#[derive(Clone)]
enum Repr {
    Point(BigRational),
    // den(θ) > 0; num, den reduced modulo the root's polynomial
    Algebraic { root: RealRoot, num: Poly, den: Poly },
}

impl CertValue {
    pub fn point(q: BigRational) -> Self {
        CertValue { enclosure: Interval::point(q.clone()), repr: Repr::Point(q), cap: DEFAULT_REFINE_CAP }
    }

    pub fn from_int(n: i64) -> Self {
        CertValue::point(BigRational::from_integer(n.into()))
    }

    /// The root itself.
    pub fn of_root(root: &RealRoot) -> Self {
        CertValue::algebraic(root, Poly::x(), Poly::one()).expect("denominator 1 is nonzero")
    }

    /// `num(θ) / den(θ)` for the root `θ`. Fails when `den(θ) = 0`.
    pub fn algebraic(root: &RealRoot, num: Poly, den: Poly) -> Result<Self> {
        CertValue::algebraic_with_cap(root, num, den, DEFAULT_REFINE_CAP)
    }

    pub fn algebraic_with_cap(root: &RealRoot, num: Poly, den: Poly, cap: u32) -> Result<Self> {
        if let Some(q) = root.exact() {
            let d = den.eval(&q);
            if d.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            return Ok(CertValue::point(num.eval(&q) / d).with_cap(cap));
        }
        let mut num = root.reduce(&num);
        let mut den = root.reduce(&den);
        match root.sign_of(&den, cap)? {
            Ordering::Equal => return Err(Error::InvalidInput("zero denominator".into())),
            Ordering::Less => {
                num = num.scale(&-BigRational::one());
                den = den.scale(&-BigRational::one());
            }
            Ordering::Greater => {}
        }
        if num.degree().unwrap_or(0) == 0 && den.degree() == Some(0) {
            return Ok(CertValue::point(num.coeff(0) / den.coeff(0)).with_cap(cap));
        }
        if let Some(q) = root.exact() {
            return Ok(CertValue::point(num.eval(&q) / den.eval(&q)).with_cap(cap));
        }
        let enclosure = enclose(root, &num, &den, cap)?;
        Ok(CertValue { repr: Repr::Algebraic { root: root.clone(), num, den }, enclosure, cap })
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn enclosure(&self) -> &Interval {
        &self.enclosure
    }

    pub fn width(&self) -> BigRational {
        self.enclosure.width()
    }

    pub fn f64_bounds(&self) -> (f64, f64) {
        self.enclosure.to_f64_bounds()
    }

    /// Midpoint of the enclosure, as an approximation.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.f64_bounds();
        0.5 * (lo + hi)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Point(q) => Some(q),
            Repr::Algebraic { .. } => None,
        }
    }

    /// The algebraic number this value is expressed over, if any.
    pub fn root(&self) -> Option<&RealRoot> {
        match &self.repr {
            Repr::Point(_) => None,
            Repr::Algebraic { root, .. } => Some(root),
        }
    }

    /// `(num, den)` with the value equal to `num(θ)/den(θ)`; for a rational
    /// value, constant polynomials.
    pub fn fraction(&self) -> (Poly, Poly) {
        match &self.repr {
            Repr::Point(q) => (Poly::constant(q.clone()), Poly::one()),
            Repr::Algebraic { num, den, .. } => (num.clone(), den.clone()),
        }
    }

    /// Exact sign.
    pub fn sign(&self) -> Result<Ordering> {
        match &self.repr {
            Repr::Point(q) => Ok(q.cmp(&BigRational::zero())),
            Repr::Algebraic { root, num, .. } => root.sign_of(num, self.cap),
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Result<Ordering> {
        if self.enclosure.hi() < q {
            return Ok(Ordering::Less);
        }
        if self.enclosure.lo() > q {
            return Ok(Ordering::Greater);
        }
        match &self.repr {
            Repr::Point(p) => Ok(p.cmp(q)),
            Repr::Algebraic { root, num, den } => root.sign_of(&num.sub(&den.scale(q)), self.cap),
        }
    }

    /// One refinement step: the enclosure width at least halves.
    pub fn refine_once(&self) -> Result<CertValue> {
        let (root, num, den) = match &self.repr {
            Repr::Point(_) => return Ok(self.clone()),
            Repr::Algebraic { root, num, den } => (root, num, den),
        };
        let target = self.width() / BigRational::from_integer(2.into());
        for _ in 0..=self.cap {
            if let Some(q) = root.exact() {
                return Ok(CertValue::point(num.eval(&q) / den.eval(&q)).with_cap(self.cap));
            }
            let e = enclose(root, num, den, self.cap)?;
            let e = e.intersect(&self.enclosure).unwrap_or(e);
            if e.width() <= target {
                return Ok(CertValue { repr: self.repr.clone(), enclosure: e, cap: self.cap });
            }
            root.bisect_once();
        }
        Err(Error::RefinementCapExceeded(self.cap))
    }

    /// Refines until the enclosure width is at most `target_width`.
    pub fn refine(&self, target_width: &BigRational) -> Result<CertValue> {
        if !target_width.is_positive() {
            return Err(Error::InvalidInput("target width must be positive".into()));
        }
        let mut v = self.clone();
        let mut steps = 0;
        while &v.width() > target_width {
            if steps >= self.cap {
                return Err(Error::RefinementCapExceeded(self.cap));
            }
            v = v.refine_once()?;
            steps += 1;
        }
        Ok(v)
    }

    /// Refines until the `f64` bounds are within `width` of each other.
    pub fn refine_f64(&self, width: f64) -> Result<CertValue> {
        let w = BigRational::from_float(width).ok_or_else(|| Error::InvalidInput("bad width".into()))?;
        self.refine(&w)
    }

    fn same_field(&self, other: &CertValue) -> Result<Option<RealRoot>> {
        match (self.root(), other.root()) {
            (None, None) => Ok(None),
            (Some(r), None) | (None, Some(r)) => Ok(Some(r.clone())),
            (Some(a), Some(b)) => {
                if a.same_as(b, self.cap)? {
                    Ok(Some(a.clone()))
                } else {
                    Err(Error::InvalidInput("arithmetic across different algebraic roots".into()))
                }
            }
        }
    }

    fn combine(&self, other: &CertValue, f: impl Fn(&Poly, &Poly, &Poly, &Poly) -> (Poly, Poly)) -> Result<CertValue> {
        let (n1, d1) = self.fraction();
        let (n2, d2) = other.fraction();
        let (n, d) = f(&n1, &d1, &n2, &d2);
        match self.same_field(other)? {
            None => {
                let z = BigRational::zero();
                Ok(CertValue::point(n.eval(&z) / d.eval(&z)).with_cap(self.cap))
            }
            Some(root) => CertValue::algebraic_with_cap(&root, n, d, self.cap),
        }
    }

    /// Sum; both values must live over the same root (or be rational).
    pub fn add(&self, other: &CertValue) -> Result<CertValue> {
        self.combine(other, |n1, d1, n2, d2| (n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2)))
    }

    pub fn sub(&self, other: &CertValue) -> Result<CertValue> {
        self.combine(other, |n1, d1, n2, d2| (n1.mul(d2).sub(&n2.mul(d1)), d1.mul(d2)))
    }

    pub fn mul(&self, other: &CertValue) -> Result<CertValue> {
        self.combine(other, |n1, d1, n2, d2| (n1.mul(n2), d1.mul(d2)))
    }

    /// Quotient; fails when `other` is zero.
    pub fn div(&self, other: &CertValue) -> Result<CertValue> {
        if other.sign()? == Ordering::Equal {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        self.combine(other, |n1, d1, n2, d2| (n1.mul(d2), d1.mul(n2)))
    }
}

fn enclose(root: &RealRoot, num: &Poly, den: &Poly, cap: u32) -> Result<Interval> {
    for _ in 0..=cap {
        let x = root.enclosure();
        if let Some(v) = num.eval_interval(&x).div(&den.eval_interval(&x)) {
            return Ok(v);
        }
        root.bisect_once();
    }
    Err(Error::RefinementCapExceeded(cap))
}

/// Exact comparison. Values over the same root (or rational on one side) are
/// decided algebraically; otherwise both are refined until their enclosures
/// separate, and equality of two irrational values over unrelated roots ends
/// in [`Error::UndecidableComparison`].
pub fn cert_cmp(a: &CertValue, b: &CertValue) -> Result<Ordering> {
    if a.enclosure.hi() < b.enclosure.lo() {
        return Ok(Ordering::Less);
    }
    if a.enclosure.lo() > b.enclosure.hi() {
        return Ok(Ordering::Greater);
    }
    let cap = a.cap.max(b.cap);
    match (&a.repr, &b.repr) {
        (Repr::Point(p), Repr::Point(q)) => return Ok(p.cmp(q)),
        (Repr::Point(p), _) => return Ok(b.cmp_rational(p)?.reverse()),
        (_, Repr::Point(q)) => return a.cmp_rational(q),
        (Repr::Algebraic { root: r1, num: n1, den: d1 }, Repr::Algebraic { root: r2, num: n2, den: d2 }) => {
            if r1.same_as(r2, cap)? {
                return r1.sign_of(&n1.mul(d2).sub(&n2.mul(d1)), cap);
            }
        }
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    for _ in 0..cap {
        if x.enclosure.hi() < y.enclosure.lo() {
            return Ok(Ordering::Less);
        }
        if x.enclosure.lo() > y.enclosure.hi() {
            return Ok(Ordering::Greater);
        }
        if x.as_rational().is_some() || y.as_rational().is_some() {
            return cert_cmp(&x, &y);
        }
        x = x.refine_once()?;
        y = y.refine_once()?;
    }
    Err(Error::UndecidableComparison(cap))
}

/// Free-function form of [`CertValue::refine`].
pub fn refine(v: &CertValue, target_width: &BigRational) -> Result<CertValue> {
    v.refine(target_width)
}

impl fmt::Debug for CertValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Point(q) => write!(f, "CertValue({q})"),
            Repr::Algebraic { .. } => write!(f, "CertValue({:?})", self.enclosure),
        }
    }
}

impl fmt::Display for CertValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Point(q) => write!(f, "{q}"),
            Repr::Algebraic { .. } => {
                let (lo, hi) = self.f64_bounds();
                write!(f, "[{lo:.17}, {hi:.17}]")
            }
        }
    }
}
