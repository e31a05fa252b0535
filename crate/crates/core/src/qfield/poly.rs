//! Dense univariate polynomials over the integers, coefficients stored in
//! ascending order with no trailing zeros (the zero polynomial is empty).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Poly = Vec<BigInt>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn one() -> Poly {
    vec![BigInt::one()]
}

pub(crate) fn is_one(p: &Poly) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn add(a: &Poly, b: &Poly) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.clone();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}


pub(crate) fn div_scalar(a: &Poly, c: &BigInt) -> Poly {
    a.iter().map(|x| x / c).collect()
}

pub(crate) fn content(a: &Poly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &Poly) -> Poly {
    let c = content(a);
    if c.is_zero() || c.is_one() {
        return a.clone();
    }
    div_scalar(a, &c)
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd over Z[q]; result has positive leading coefficient.
/// Returns the primitive part only (integer content is handled by callers).
pub(crate) fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() {
        return normalize_sign(primitive(b));
    }
    if b.is_empty() {
        return normalize_sign(primitive(a));
    }
    if a.len() == 1 || b.len() == 1 {
        return one();
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
        if y.len() == 1 {
            return one();
        }
    }
    normalize_sign(x)
}

fn normalize_sign(mut p: Poly) -> Poly {
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

/// Exact quotient `a / b` over Z[q]. The caller guarantees divisibility and
/// that `b` is primitive or that the integer divisions are exact.
pub(crate) fn div_exact(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    if is_one(b) {
        return a.clone();
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let (c, rem) = r.last().unwrap().div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

/// Number of leading zero coefficients (the q-adic valuation).
pub(crate) fn valuation(a: &Poly) -> usize {
    a.iter().take_while(|c| c.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        let mut v: Poly = cs.iter().map(|&c| BigInt::from(c)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn gcd_of_products() {
        // (q+1)(q-2) and (q+1)(2q+3)
        let a = mul(&p(&[1, 1]), &p(&[-2, 1]));
        let b = mul(&p(&[1, 1]), &p(&[3, 2]));
        assert_eq!(gcd_primitive(&a, &b), p(&[1, 1]));
        assert_eq!(gcd_primitive(&p(&[2, 4]), &p(&[3, 6])), p(&[1, 2]));
        assert!(is_one(&gcd_primitive(&p(&[1, 1]), &p(&[-1, 1]))));
    }

    #[test]
    fn exact_division() {
        let a = mul(&p(&[1, 1, 1]), &p(&[-3, 0, 2]));
        assert_eq!(div_exact(&a, &p(&[1, 1, 1])), p(&[-3, 0, 2]));
    }
}
