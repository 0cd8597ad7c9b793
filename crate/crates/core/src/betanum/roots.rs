//! Real root isolation by Descartes' rule of signs with bisection
//! (Vincent–Collins–Akritas), in exact integer arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// An isolated real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isolated {
    /// The root is this rational number.
    Exact(BigRational),
    /// `poly` has exactly one root in the open interval `(lo, hi)`; it is
    /// simple, and `poly(lo)`, `poly(hi)` are nonzero with opposite signs.
    /// `poly` divides the polynomial that was searched.
    Open { lo: BigRational, hi: BigRational, poly: Poly },
}

// Depth at which a non-squarefree input is suspected and the search restarts
// on the squarefree part.
const SUSPECT_DEPTH: usize = 256;

struct Node {
    lo: BigRational,
    hi: BigRational,
    depth: usize,
    // q(x) ∝ reference(lo + (hi - lo) x), integer coefficients, low first
    q: Vec<BigInt>,
    reference: Poly,
}

struct TooDeep;

/// All real roots of `p` in the open interval `(a, b)`, in increasing order.
pub fn roots_in(p: &Poly, a: &BigRational, b: &BigRational) -> Vec<Isolated> {
    search(p, a, b, false)
}

/// The smallest real root of `p` in the open interval `(a, b)`.
pub fn smallest_root_in(p: &Poly, a: &BigRational, b: &BigRational) -> Option<Isolated> {
    search(p, a, b, true).into_iter().next()
}

fn search(p: &Poly, a: &BigRational, b: &BigRational, first_only: bool) -> Vec<Isolated> {
    assert!(a < b);
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    match run(p, a, b, first_only, Some(SUSPECT_DEPTH)) {
        Ok(v) => v,
        Err(TooDeep) => run(&p.squarefree(), a, b, first_only, None).unwrap_or_default(),
    }
}

fn run(
    p: &Poly,
    a: &BigRational,
    b: &BigRational,
    first_only: bool,
    depth_limit: Option<usize>,
) -> Result<Vec<Isolated>, TooDeep> {
    let mut reference = deflate_at(p, a);
    reference = deflate_at(&reference, b);
    if reference.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let q = reference.taylor_shift(a).scale_arg(&(b - a)).to_primitive_ints();
    let root = Node { lo: a.clone(), hi: b.clone(), depth: 0, q, reference };
    let mut out = Vec::new();
    visit(root, first_only, depth_limit, &mut out)?;
    Ok(out)
}

fn deflate_at(p: &Poly, r: &BigRational) -> Poly {
    let lin = Poly::from_coeffs(vec![-r.clone(), BigRational::one()]);
    let mut p = p.clone();
    while !p.is_zero() && p.degree() != Some(0) && p.eval(r).is_zero() {
        p = p.div_rem(&lin).0;
    }
    p
}

fn visit(node: Node, first_only: bool, limit: Option<usize>, out: &mut Vec<Isolated>) -> Result<(), TooDeep> {
    let v = descartes_unit(&node.q);
    if v == 0 {
        return Ok(());
    }
    if v == 1 {
        out.push(Isolated::Open { lo: node.lo, hi: node.hi, poly: node.reference });
        return Ok(());
    }
    if limit.is_some_and(|l| node.depth >= l) {
        return Err(TooDeep);
    }
    let mid = (&node.lo + &node.hi) / BigRational::from_integer(2.into());
    // q_l(x) = 2^d q(x/2) covers [lo, mid]
    let d = node.q.len() - 1;
    let mut ql: Vec<BigInt> = node.q.iter().enumerate().map(|(i, c)| c << (d - i)).collect();
    let mut reference = node.reference;
    let mid_is_root = ql.iter().fold(BigInt::zero(), |acc, c| acc + c).is_zero();
    if mid_is_root {
        ql = divide_by_x_minus_one(&ql);
        reference = deflate_at(&reference, &mid);
    }
    let qr = taylor_shift_one(&ql);
    let depth = node.depth + 1;
    let left = Node { lo: node.lo, hi: mid.clone(), depth, q: ql, reference: reference.clone() };
    let before = out.len();
    if left.q.len() > 1 {
        visit(left, first_only, limit, out)?;
    }
    if first_only && out.len() > before {
        return Ok(());
    }
    if mid_is_root {
        out.push(Isolated::Exact(mid.clone()));
        if first_only {
            return Ok(());
        }
    }
    if qr.len() > 1 {
        let right = Node { lo: mid, hi: node.hi, depth, q: qr, reference };
        visit(right, first_only, limit, out)?;
    }
    Ok(())
}

/// Sign variations of `(x+1)^d q(1/(x+1))`: an upper bound on the number of
/// roots of `q` in `(0, 1)`, exact when it is 0 or 1.
fn descartes_unit(q: &[BigInt]) -> usize {
    let mut rev: Vec<BigInt> = q.iter().rev().cloned().collect();
    while rev.last().is_some_and(Zero::is_zero) {
        rev.pop();
    }
    let shifted = taylor_shift_one(&rev);
    sign_variations(&shifted)
}

fn sign_variations(c: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for a in c {
        let s = if a.is_positive() {
            1
        } else if a.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn taylor_shift_one(c: &[BigInt]) -> Vec<BigInt> {
    let mut c = c.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
    c
}

/// Exact quotient by `(x - 1)`; the caller guarantees divisibility.
fn divide_by_x_minus_one(c: &[BigInt]) -> Vec<BigInt> {
    let n = c.len();
    let mut q = vec![BigInt::zero(); n - 1];
    let mut acc = BigInt::zero();
    for i in (1..n).rev() {
        acc += &c[i];
        q[i - 1] = acc.clone();
    }
    debug_assert!((acc + &c[0]).is_zero());
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn check_isolation(p: &Poly, iso: &Isolated) -> f64 {
        match iso {
            Isolated::Exact(r) => {
                assert!(p.eval(r).is_zero());
                num_traits::ToPrimitive::to_f64(r).unwrap()
            }
            Isolated::Open { lo, hi, poly } => {
                let (a, b) = (poly.eval(lo), poly.eval(hi));
                assert!(a.is_positive() != b.is_positive() && !a.is_zero() && !b.is_zero());
                let m = (lo + hi) / q(2, 1);
                num_traits::ToPrimitive::to_f64(&m).unwrap()
            }
        }
    }

    #[test]
    fn isolates_all_roots_with_rational_midpoints() {
        // (x - 1/2)(x - 1/4)(x^2 - 1/2)
        let p = Poly::from_coeffs(vec![q(-1, 2), q(1, 1)])
            .mul(&Poly::from_coeffs(vec![q(-1, 4), q(1, 1)]))
            .mul(&Poly::from_coeffs(vec![q(-1, 2), q(0, 1), q(1, 1)]));
        let roots = roots_in(&p, &q(0, 1), &q(1, 1));
        let vals: Vec<f64> = roots.iter().map(|r| check_isolation(&p, r)).collect();
        assert_eq!(roots.len(), 3);
        assert!((vals[0] - 0.25).abs() < 0.2);
        assert!(vals[0] < vals[1] && vals[1] < vals[2]);
        assert!(matches!(&roots[1], Isolated::Exact(r) if *r == q(1, 2)));
    }

    #[test]
    fn smallest_root_of_golden_equation() {
        // z + z^2 = 1 has root 0.618...
        let p = Poly::from_ints([-1, 1, 1]);
        let r = smallest_root_in(&p, &q(0, 1), &q(1, 1)).unwrap();
        let v = check_isolation(&p, &r);
        assert!((v - 0.618).abs() < 0.4);
    }

    #[test]
    fn handles_multiple_roots() {
        // (x - 1/3)^3 (x - 2/3)
        let a = Poly::from_coeffs(vec![q(-1, 3), q(1, 1)]);
        let p = a.mul(&a).mul(&a).mul(&Poly::from_coeffs(vec![q(-2, 3), q(1, 1)]));
        let roots = roots_in(&p, &q(0, 1), &q(1, 1));
        assert_eq!(roots.len(), 2);
        for r in &roots {
            check_isolation(&p.squarefree(), r);
        }
    }

    #[test]
    fn endpoint_roots_are_excluded() {
        let p = Poly::from_ints([0, -1, 1]); // x(x - 1)
        assert!(roots_in(&p, &q(0, 1), &q(1, 1)).is_empty());
        assert!(smallest_root_in(&Poly::from_ints([1, 0, 1]), &q(-5, 1), &q(5, 1)).is_none());
    }
}
