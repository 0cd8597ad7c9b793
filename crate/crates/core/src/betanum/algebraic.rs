use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex, MutexGuard};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::Poly;
use super::roots::{roots_in, Isolated};
use crate::error::{Error, Result};

/// A real algebraic number: a root of `poly` isolated by a shrinking rational
/// interval, or an exact rational.
///
/// Cloning is cheap and clones share the isolating interval; bisection only
/// shrinks it, so sharing is observationally pure.
#[derive(Clone)]
pub struct RealRoot {
    inner: Arc<Inner>,
}

struct Inner {
    state: Mutex<State>,
}

#[derive(Clone)]
struct State {
    poly: Poly,
    lo: BigRational,
    hi: BigRational,
    exact: Option<BigRational>,
    sign_lo: bool,
}

fn sign(q: &BigRational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl RealRoot {
    /// The rational `q`, as a root of the linear polynomial `x - q`.
    pub fn rational(q: BigRational) -> Self {
        let poly = Poly::from_coeffs(vec![-q.clone(), BigRational::one()]);
        let state = State { poly, lo: q.clone(), hi: q.clone(), exact: Some(q), sign_lo: false };
        RealRoot { inner: Arc::new(Inner { state: Mutex::new(state) }) }
    }

    /// Takes an isolation produced by [`roots_in`](super::roots_in).
    pub fn from_isolated(iso: Isolated) -> Self {
        match iso {
            Isolated::Exact(q) => RealRoot::rational(q),
            Isolated::Open { lo, hi, poly } => {
                let sign_lo = poly.eval(&lo).is_positive();
                let state = State { poly, lo, hi, exact: None, sign_lo };
                RealRoot { inner: Arc::new(Inner { state: Mutex::new(state) }) }
            }
        }
    }

    /// The unique root of `poly` in the open interval `(lo, hi)`.
    pub fn new(poly: &Poly, lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInput("empty isolating interval".into()));
        }
        let mut found = roots_in(&poly.squarefree(), &lo, &hi);
        if found.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "polynomial has {} roots in the given interval, expected exactly one",
                found.len()
            )));
        }
        Ok(RealRoot::from_isolated(found.pop().unwrap()))
    }

    fn state(&self) -> MutexGuard<'_, State> {
        self.inner.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// A polynomial vanishing at the root. The root is simple, and the only
    /// root of `poly` inside the current enclosure. It may be replaced by a
    /// factor when a zero test uncovers one.
    pub fn poly(&self) -> Poly {
        self.state().poly.clone()
    }

    pub fn exact(&self) -> Option<BigRational> {
        self.state().exact.clone()
    }

    pub fn enclosure(&self) -> Interval {
        let s = self.state();
        Interval::new(s.lo.clone(), s.hi.clone())
    }

    pub fn f64_bounds(&self) -> (f64, f64) {
        self.enclosure().to_f64_bounds()
    }

    /// Whether `self` and `other` are the same shared root object.
    pub fn ptr_eq(&self, other: &RealRoot) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Halves the enclosure; returns the new width.
    pub fn bisect_once(&self) -> BigRational {
        let mut s = self.state();
        Self::bisect_locked(&mut s);
        &s.hi - &s.lo
    }

    fn bisect_locked(s: &mut State) {
        if s.exact.is_some() {
            return;
        }
        let m = (&s.lo + &s.hi) / BigRational::from_integer(2.into());
        let v = s.poly.eval(&m);
        if v.is_zero() {
            s.lo = m.clone();
            s.hi = m.clone();
            s.exact = Some(m);
        } else if v.is_positive() == s.sign_lo {
            s.lo = m;
        } else {
            s.hi = m;
        }
    }

    /// Bisects until the enclosure width is at most `width`.
    pub fn refine_to_width(&self, width: &BigRational, cap: u32) -> Result<()> {
        let mut s = self.state();
        for _ in 0..=cap {
            if &(&s.hi - &s.lo) <= width {
                return Ok(());
            }
            Self::bisect_locked(&mut s);
        }
        if &(&s.hi - &s.lo) <= width {
            Ok(())
        } else {
            Err(Error::RefinementCapExceeded(cap))
        }
    }

    /// `p mod poly`: a representative of `p` of degree below `deg poly`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let s = self.state();
        if s.poly.degree().unwrap_or(0) == 0 {
            return p.clone();
        }
        p.rem(&s.poly)
    }

    /// Exact sign of `p` at the root.
    ///
    /// Zero is decided algebraically: the root is simple and alone in its
    /// enclosure, so `p` vanishes there iff `gcd(p, poly)` changes sign across
    /// the enclosure. A nonzero sign is then found by bisection, at most `cap`
    /// halvings.
    pub fn sign_of(&self, p: &Poly, cap: u32) -> Result<Ordering> {
        if let Some(q) = self.exact() {
            return Ok(sign(&p.eval(&q)));
        }
        let r = self.reduce(p);
        if r.is_zero() {
            return Ok(Ordering::Equal);
        }
        if r.degree() == Some(0) {
            return Ok(sign(&r.coeff(0)));
        }
        if let Some(o) = decided(&r, &self.enclosure()) {
            return Ok(o);
        }
        let g = r.gcd(&self.poly());
        if g.degree().unwrap_or(0) >= 1 {
            let mut s = self.state();
            let (a, b) = (g.eval(&s.lo), g.eval(&s.hi));
            if a.is_positive() != b.is_positive() {
                if g.degree() == Some(1) {
                    let q = -g.coeff(0) / g.coeff(1);
                    s.lo = q.clone();
                    s.hi = q.clone();
                    s.exact = Some(q);
                }
                if g.degree() < s.poly.degree() {
                    s.sign_lo = a.is_positive();
                    s.poly = g;
                }
                return Ok(Ordering::Equal);
            }
        }
        let mut s = self.state();
        for _ in 0..cap {
            Self::bisect_locked(&mut s);
            if let Some(q) = &s.exact {
                return Ok(sign(&p.eval(q)));
            }
            let i = Interval::new(s.lo.clone(), s.hi.clone());
            if let Some(o) = decided(&r, &i) {
                return Ok(o);
            }
        }
        Err(Error::RefinementCapExceeded(cap))
    }

    /// Compares the root with a rational.
    pub fn cmp_rational(&self, q: &BigRational, cap: u32) -> Result<Ordering> {
        let lin = Poly::from_coeffs(vec![-q.clone(), BigRational::one()]);
        self.sign_of(&lin, cap)
    }

    /// Exact equality of two roots, possibly of different polynomials.
    pub fn same_as(&self, other: &RealRoot, cap: u32) -> Result<bool> {
        if self.ptr_eq(other) {
            return Ok(true);
        }
        match (self.exact(), other.exact()) {
            (Some(a), Some(b)) => return Ok(a == b),
            (Some(a), None) => return Ok(other.cmp_rational(&a, cap)? == Ordering::Equal),
            (None, Some(b)) => return Ok(self.cmp_rational(&b, cap)? == Ordering::Equal),
            (None, None) => {}
        }
        let (e1, e2) = (self.enclosure(), other.enclosure());
        if !e1.overlaps(&e2) {
            return Ok(false);
        }
        let g = self.poly().gcd(&other.poly());
        if g.degree().unwrap_or(0) == 0 || self.sign_of(&g, cap)? != Ordering::Equal {
            return Ok(false);
        }
        Ok(self.cmp_rational(e2.lo(), cap)? == Ordering::Greater && self.cmp_rational(e2.hi(), cap)? == Ordering::Less)
    }
}

fn decided(r: &Poly, x: &Interval) -> Option<Ordering> {
    let e = r.eval_interval(x);
    if e.lo().is_positive() {
        Some(Ordering::Greater)
    } else if e.hi().is_negative() {
        Some(Ordering::Less)
    } else if e.is_point() && e.lo().is_zero() {
        Some(Ordering::Equal)
    } else {
        None
    }
}

impl fmt::Debug for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(q) => write!(f, "RealRoot({q})"),
            None => write!(f, "RealRoot({:?} in {:?})", self.poly(), self.enclosure()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn golden() -> RealRoot {
        RealRoot::new(&Poly::from_ints([-1, -1, 1]), q(1, 1), q(2, 1)).unwrap()
    }

    #[test]
    fn exact_zero_and_signs() {
        let phi = golden();
        // phi^2 - phi - 1 = 0 and phi^3 = 2 phi + 1
        assert_eq!(phi.sign_of(&Poly::from_ints([-1, -1, 1]), 64).unwrap(), Ordering::Equal);
        assert_eq!(phi.sign_of(&Poly::from_ints([-1, -2, 0, 1]), 64).unwrap(), Ordering::Equal);
        assert_eq!(phi.cmp_rational(&q(1618, 1000), 4096).unwrap(), Ordering::Greater);
        assert_eq!(phi.cmp_rational(&q(1619, 1000), 4096).unwrap(), Ordering::Less);
    }

    #[test]
    fn zero_through_a_common_factor() {
        // the root of x^2 - 2 in (1, 2) as a root of (x^2 - 2)(x - 3)
        let p = Poly::from_ints([-2, 0, 1]).mul(&Poly::from_ints([-3, 1]));
        let r = RealRoot::new(&p, q(1, 1), q(2, 1)).unwrap();
        assert_eq!(r.sign_of(&Poly::from_ints([-2, 0, 1]), 64).unwrap(), Ordering::Equal);
        assert_eq!(r.sign_of(&Poly::from_ints([-3, 1]), 64).unwrap(), Ordering::Less);
    }

    #[test]
    fn rational_roots_found_by_gcd() {
        // (x - 3/2)(x^2 - 5) isolated on (1, 2) without landing on 3/2
        let p = Poly::from_coeffs(vec![q(-3, 2), q(1, 1)]).mul(&Poly::from_ints([-5, 0, 1]));
        let r = RealRoot::new(&p, q(1, 1), q(2, 1)).unwrap();
        assert_eq!(r.cmp_rational(&q(3, 2), 64).unwrap(), Ordering::Equal);
        assert_eq!(r.exact(), Some(q(3, 2)));
    }

    #[test]
    fn same_root_of_different_polynomials() {
        // x^5 + x - 1 = (x^2 - x + 1)(x^3 + x^2 - 1)
        let a = RealRoot::new(&Poly::from_ints([-1, 1, 0, 0, 0, 1]), q(0, 1), q(1, 1)).unwrap();
        let b = RealRoot::new(&Poly::from_ints([-1, 0, 1, 1]), q(0, 1), q(1, 1)).unwrap();
        assert!(a.same_as(&b, 4096).unwrap());
        assert!(!a.same_as(&golden(), 4096).unwrap());
    }

    #[test]
    fn refinement_is_monotone() {
        let phi = golden();
        let before = phi.enclosure();
        phi.refine_to_width(&q(1, 1_000_000_000), 4096).unwrap();
        let after = phi.enclosure();
        assert!(after.width() <= q(1, 1_000_000_000));
        assert!(before.contains(after.lo()) && before.contains(after.hi()));
    }
}
