//! Certified real arithmetic over a base β: exact polynomials and intervals,
//! real algebraic roots, refinable enclosures, and the power-series root
//! used for entropy.

mod algebraic;
mod beta;
mod cert;
mod float;
mod interval;
mod poly;
mod roots;
mod series;

pub use algebraic::RealRoot;
pub use beta::{beta_from_one_expansion, eval_pi, gamma_of, BetaKind, BetaSpec, Limits};
pub use cert::{cert_cmp, refine, CertValue};
pub use float::FloatBounds;
pub use interval::Interval;
pub use poly::Poly;
pub use roots::{roots_in, smallest_root_in, Isolated};
pub use series::{smallest_root_unit, CoeffStream};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};

/// Largest `f64` not above `q`.
pub fn to_f64_down(q: &BigRational) -> f64 {
    let f = approx(q);
    match BigRational::from_f64(f) {
        Some(e) if &e > q => f.next_down(),
        _ => f,
    }
}

/// Smallest `f64` not below `q`.
pub fn to_f64_up(q: &BigRational) -> f64 {
    let f = approx(q);
    match BigRational::from_f64(f) {
        Some(e) if &e < q => f.next_up(),
        _ => f,
    }
}

fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| if q.numer().sign() == num_bigint::Sign::Minus { f64::MIN } else { f64::MAX })
}

/// Rational from a decimal or fraction literal: `"3/7"`, `"0.25"`, `"2"`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((i, f)) = text.split_once('.') {
        let neg = i.starts_with('-');
        let digits = format!("{}{}", i.trim_start_matches(['-', '+']), f);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), f.len());
        let q = BigRational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    text.parse::<BigInt>().ok().map(BigRational::from_integer)
}
