use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebraic::RealRoot;
use super::cert::{CertValue, DEFAULT_REFINE_CAP};
use super::poly::Poly;
use super::roots::smallest_root_in;
use crate::error::{Error, Result};
use crate::seqcore::EPSeq;

/// Eventually periodic integer coefficients `c_1, c_2, …` with `|c_n| ≤ 9`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffStream {
    pre: Vec<i32>,
    per: Vec<i32>,
}

impl CoeffStream {
    pub fn new(mut pre: Vec<i32>, mut per: Vec<i32>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidInput("coefficient period must be nonempty".into()));
        }
        if let Some(c) = pre.iter().chain(&per).find(|c| c.abs() > 9) {
            return Err(Error::InvalidInput(format!("coefficient {c} outside -9..=9")));
        }
        let n = per.len();
        if let Some(d) = (1..=n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| per[i] == per[i - d])) {
            per.truncate(d);
        }
        while pre.last().is_some_and(|&c| c == *per.last().unwrap()) {
            pre.pop();
            per.rotate_right(1);
        }
        Ok(CoeffStream { pre, per })
    }

    /// `c_n = b_n - a_n`.
    pub fn difference(b: &EPSeq, a: &EPSeq) -> CoeffStream {
        let l = b.pre().len().max(a.pre().len());
        let p = b.per().len().lcm(&a.per().len());
        let c = |i: usize| b.digit(i) as i32 - a.digit(i) as i32;
        let pre = (0..l).map(c).collect();
        let per = (l..l + p).map(c).collect();
        CoeffStream::new(pre, per).expect("digit differences are bounded")
    }

    pub fn pre(&self) -> &[i32] {
        &self.pre
    }

    pub fn per(&self) -> &[i32] {
        &self.per
    }

    /// `c_{n+1}` (zero-based index).
    pub fn coeff(&self, n: usize) -> i32 {
        if n < self.pre.len() {
            self.pre[n]
        } else {
            self.per[(n - self.pre.len()) % self.per.len()]
        }
    }

    /// Numerator of `Σ c_n z^n - 1` over the denominator `1 - z^p`:
    /// `(A(z) - 1)(1 - z^p) + z^L B(z)`.
    pub fn numerator(&self) -> Poly {
        let term = |c: &[i32]| {
            let mut v = vec![BigRational::zero()];
            v.extend(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))));
            Poly::from_coeffs(v)
        };
        let a = term(&self.pre).sub(&Poly::one());
        let b = term(&self.per);
        let one_minus = Poly::one().sub(&Poly::monomial(self.per.len()));
        a.mul(&one_minus).add(&b.shift_up(self.pre.len()))
    }
}

/// Smallest root in `(0, 1)` of `Σ c_n z^n = 1`, or `None` if there is none.
pub fn smallest_root_unit(c: &CoeffStream) -> Option<CertValue> {
    smallest_root_unit_with_cap(c, DEFAULT_REFINE_CAP)
}

pub fn smallest_root_unit_with_cap(c: &CoeffStream, cap: u32) -> Option<CertValue> {
    let n = c.numerator();
    let iso = smallest_root_in(&n, &BigRational::zero(), &BigRational::one())?;
    let root = RealRoot::from_isolated(iso);
    let width = BigRational::new(BigInt::one(), BigInt::one() << 80usize);
    // cannot fail: the root is isolated and bisection always halves
    let _ = root.refine_to_width(&width, cap);
    Some(CertValue::of_root(&root).with_cap(cap))
}
