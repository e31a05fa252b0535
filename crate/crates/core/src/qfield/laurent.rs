use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// An element of Q(q) in canonical form `q^shift * num(q) / den(q)`.
///
/// Invariants: `num` and `den` are integer polynomials with nonzero constant
/// terms, coprime over Q[q], `den` has positive leading coefficient, and the
/// gcd of all coefficients of `num` and `den` together is 1. Zero is stored
/// with an empty numerator, `den = 1` and `shift = 0`. Because the form is
/// unique, derived equality and hashing are field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentRat {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Default for LaurentRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentRat {
    pub fn zero() -> Self {
        Self {
            shift: 0,
            num: Vec::new(),
            den: poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        Self {
            shift: 0,
            num: vec![n],
            den: poly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::from_parts(0, vec![r.numer().clone()], vec![r.denom().clone()])
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            shift: e,
            num: vec![BigInt::from(c)],
            den: poly::one(),
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// The Laurent polynomial `sum c * q^e` over the given `(e, c)` terms.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(e, c)| acc + Self::monomial(c, e))
    }

    /// Builds `q^shift * num / den` and brings it to canonical form.
    /// Panics if `den` is the zero polynomial.
    pub fn from_parts(shift: i64, mut num: Vec<BigInt>, mut den: Vec<BigInt>) -> Self {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        Self::normalize(shift, num, den)
    }

    fn normalize(mut shift: i64, mut num: Poly, mut den: Poly) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        let v = poly::valuation(&num);
        if v > 0 {
            num.drain(..v);
            shift += v as i64;
        }
        let dv = poly::valuation(&den);
        if dv > 0 {
            den.drain(..dv);
            shift -= dv as i64;
        }
        if den.len() > 1 && num.len() > 1 {
            let g = poly::gcd_primitive(&num, &den);
            if g.len() > 1 {
                num = poly::div_exact(&num, &g);
                den = poly::div_exact(&den, &g);
            }
        }
        let c = poly::content(&num).gcd(&poly::content(&den));
        if !c.is_one() {
            num = poly::div_scalar(&num, &c);
            den = poly::div_scalar(&den, &c);
        }
        if den.last().unwrap().is_negative() {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        Self { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && poly::is_one(&self.num) && poly::is_one(&self.den)
    }

    /// True when the value lies in Z[q, q^-1].
    pub fn is_laurent_poly(&self) -> bool {
        poly::is_one(&self.den)
    }

    /// True for `±q^e`, the units of Z[q, q^-1].
    pub fn is_unit_monomial(&self) -> bool {
        self.num.len() == 1 && self.num[0].magnitude().is_one() && poly::is_one(&self.den)
    }

    /// A rough size measure used to prefer simple pivots.
    pub fn complexity(&self) -> usize {
        let bits: u64 = self
            .num
            .iter()
            .chain(self.den.iter())
            .map(|c| c.bits())
            .sum();
        self.num.len() + 2 * self.den.len() + bits as usize
    }

    /// Laurent terms of the numerator as `(exponent, coefficient)`, ascending.
    pub fn numerator_terms(&self) -> Vec<(i64, BigInt)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    /// Denominator terms as `(exponent, coefficient)`, ascending.
    pub fn denominator_terms(&self) -> Vec<(i64, BigInt)> {
        self.den
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect()
    }

    /// For a Laurent polynomial, its coefficient at `q^e`.
    pub fn coefficient(&self, e: i64) -> Option<BigInt> {
        if !self.is_laurent_poly() {
            return None;
        }
        let idx = e - self.shift;
        if idx < 0 || idx as usize >= self.num.len() {
            return Some(BigInt::zero());
        }
        Some(self.num[idx as usize].clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = Self::normalize(-self.shift, self.den.clone(), self.num.clone());
        // normalize may not move the sign if den and num were already coprime
        if r.den.last().unwrap().is_negative() {
            r.num = poly::neg(&r.num);
            r.den = poly::neg(&r.den);
        }
        Ok(r)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Substitutes `q -> q^k` for `k >= 1`.
    pub fn scale_exponents(&self, k: i64) -> Self {
        assert!(k >= 1, "exponent scale must be positive");
        let spread = |p: &Poly| -> Poly {
            let mut out = vec![BigInt::zero(); (p.len().max(1) - 1) * k as usize + 1];
            for (i, c) in p.iter().enumerate() {
                out[i * k as usize] = c.clone();
            }
            out
        };
        if self.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.shift * k, spread(&self.num), spread(&self.den))
    }

    /// Exact value at a nonzero rational point.
    pub fn evaluate_at(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            return Err(Error::ZeroBase);
        }
        let horner = |p: &Poly| -> BigRational {
            p.iter().rev().fold(BigRational::zero(), |acc, c| {
                acc * q0 + BigRational::from_integer(c.clone())
            })
        };
        let d = horner(&self.den);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = horner(&self.num);
        let qs = if self.shift >= 0 {
            num_traits::pow(q0.clone(), self.shift as usize)
        } else {
            num_traits::pow(q0.recip(), (-self.shift) as usize)
        };
        Ok(n * qs / d)
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let shift = self.shift.min(other.shift);
        let lift = |p: &Poly, s: i64| -> Poly {
            let k = (s - shift) as usize;
            if k == 0 {
                return p.clone();
            }
            let mut out = vec![BigInt::zero(); k];
            out.extend(p.iter().cloned());
            out
        };
        let a = lift(&self.num, self.shift);
        let b = lift(&other.num, other.shift);
        if poly::is_one(&self.den) && poly::is_one(&other.den) {
            let n = poly::add(&a, &b);
            return Self::normalize(shift, n, poly::one());
        }
        if self.den == other.den {
            return Self::normalize(shift, poly::add(&a, &b), self.den.clone());
        }
        let g = poly::gcd_primitive(&self.den, &other.den);
        let (d1, d2) = if g.len() > 1 {
            (
                poly::div_exact(&self.den, &g),
                poly::div_exact(&other.den, &g),
            )
        } else {
            (self.den.clone(), other.den.clone())
        };
        let n = poly::add(&poly::mul(&a, &d2), &poly::mul(&b, &d1));
        let d = poly::mul(&self.den, &d2);
        Self::normalize(shift, n, d)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if poly::is_one(&self.den) && poly::is_one(&other.den) {
            let n = poly::mul(&self.num, &other.num);
            // product of primitive-content-free parts keeps content; fix it
            return Self::normalize(shift, n, poly::one());
        }
        let reduce = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.len() > 1 && n.len() > 1 {
                let g = poly::gcd_primitive(n, d);
                if g.len() > 1 {
                    return (poly::div_exact(n, &g), poly::div_exact(d, &g));
                }
            }
            (n.clone(), d.clone())
        };
        let (n1, d2) = reduce(&self.num, &other.den);
        let (n2, d1) = reduce(&other.num, &self.den);
        Self::normalize(shift, poly::mul(&n1, &n2), poly::mul(&d1, &d2))
    }

    fn fmt_poly(terms: &[(i64, BigInt)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentRat {
    /// Wire format: `(numerator)/(denominator)`, terms in descending exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        Self::fmt_poly(&self.numerator_terms(), f)?;
        write!(f, ")/(")?;
        Self::fmt_poly(&self.denominator_terms(), f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for LaurentRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_laurent_poly(s: &str) -> Result<LaurentRat> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut acc = LaurentRat::zero();
    let bad = |m: &str| Error::Parse(format!("{m} in `{s}`"));
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(bad("expected sign"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > start {
            BigInt::from_str(&s[start..i]).map_err(|_| bad("bad coefficient"))?
        } else {
            BigInt::one()
        };
        let mut exp = 0i64;
        let had_digits = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            if i >= bytes.len() || bytes[i] != b'q' {
                return Err(bad("expected q after *"));
            }
        }
        if i < bytes.len() && bytes[i] == b'q' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[es..i].parse().map_err(|_| bad("bad exponent"))?;
            }
        } else if !had_digits {
            return Err(bad("empty term"));
        }
        acc = acc + LaurentRat::from_parts(exp, vec![sign * coeff], poly::one());
    }
    Ok(acc)
}

impl FromStr for LaurentRat {
    type Err = Error;

    /// Accepts the wire format `(num)/(den)` or a bare Laurent polynomial.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('(') {
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{t}`")))?;
            let num = parse_laurent_poly(&rest[..close])?;
            let tail = rest[close + 1..].trim();
            if tail.is_empty() {
                return Ok(num);
            }
            let den_s = tail
                .strip_prefix("/(")
                .and_then(|d| d.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected /(den) in `{t}`")))?;
            let den = parse_laurent_poly(den_s)?;
            return num.checked_div(&den);
        }
        parse_laurent_poly(t)
    }
}

impl Ord for LaurentRat {
    /// Structural order on the canonical form; only used for deterministic
    /// container ordering, not a field order.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.shift, &self.num, &self.den).cmp(&(other.shift, &other.num, &other.den))
    }
}

impl PartialOrd for LaurentRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for LaurentRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for &LaurentRat {
    type Output = LaurentRat;
    fn neg(self) -> LaurentRat {
        LaurentRat {
            shift: self.shift,
            num: poly::neg(&self.num),
            den: self.den.clone(),
        }
    }
}

impl Neg for LaurentRat {
    type Output = LaurentRat;
    fn neg(mut self) -> LaurentRat {
        for c in self.num.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:expr) => {
        impl $tr<&LaurentRat> for &LaurentRat {
            type Output = LaurentRat;
            fn $m(self, rhs: &LaurentRat) -> LaurentRat {
                $imp(self, rhs)
            }
        }
        impl $tr<LaurentRat> for LaurentRat {
            type Output = LaurentRat;
            fn $m(self, rhs: LaurentRat) -> LaurentRat {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&LaurentRat> for LaurentRat {
            type Output = LaurentRat;
            fn $m(self, rhs: &LaurentRat) -> LaurentRat {
                $imp(&self, rhs)
            }
        }
        impl $tr<LaurentRat> for &LaurentRat {
            type Output = LaurentRat;
            fn $m(self, rhs: LaurentRat) -> LaurentRat {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &LaurentRat, b: &LaurentRat| a.add_impl(b));
forward_binop!(Sub, sub, |a: &LaurentRat, b: &LaurentRat| a.add_impl(&-b));
forward_binop!(Mul, mul, |a: &LaurentRat, b: &LaurentRat| a.mul_impl(b));
forward_binop!(Div, div, |a: &LaurentRat, b: &LaurentRat| a
    .checked_div(b)
    .expect("division by zero in Q(q)"));

impl AddAssign<&LaurentRat> for LaurentRat {
    fn add_assign(&mut self, rhs: &LaurentRat) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&LaurentRat> for LaurentRat {
    fn sub_assign(&mut self, rhs: &LaurentRat) {
        *self = self.add_impl(&-rhs);
    }
}

impl MulAssign<&LaurentRat> for LaurentRat {
    fn mul_assign(&mut self, rhs: &LaurentRat) {
        *self = self.mul_impl(rhs);
    }
}

impl std::iter::Sum for LaurentRat {
    fn sum<I: Iterator<Item = LaurentRat>>(iter: I) -> Self {
        iter.fold(LaurentRat::zero(), |a, b| a + b)
    }
}

/// The symmetric q-integer `(q^n - q^-n) / (q - q^-1)`.
pub fn qint(n: i64) -> LaurentRat {
    let m = n.abs();
    // q^{m-1} + q^{m-3} + ... + q^{-(m-1)}
    let terms: Vec<(i64, i64)> = (0..m).map(|k| (m - 1 - 2 * k, 1)).collect();
    let v = LaurentRat::from_terms(&terms);
    if n < 0 {
        -v
    } else {
        v
    }
}

/// The q-integer in base `q^d`, i.e. `[n]_{q^d}`.
pub fn qint_base(n: i64, d: i64) -> LaurentRat {
    qint(n).scale_exponents(d)
}

/// Gaussian binomial `[n choose k]_q` from the product formula.
pub fn qbinom(n: i64, k: i64) -> Result<LaurentRat> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "qbinom requires 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut num = LaurentRat::one();
    let mut den = LaurentRat::one();
    for j in 0..k {
        num = num * qint(n - j);
        den = den * qint(j + 1);
    }
    num.checked_div(&den)
}

/// `[n choose k]_{q^d}`.
pub fn qbinom_base(n: i64, k: i64, d: i64) -> Result<LaurentRat> {
    Ok(qbinom(n, k)?.scale_exponents(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> LaurentRat {
        LaurentRat::q_pow(e)
    }

    #[test]
    fn difference_of_squares() {
        let a = q(1) - q(-1);
        let b = q(1) + q(-1);
        assert_eq!(a * b, q(2) - q(-2));
    }

    #[test]
    fn inverse_of_monomial() {
        assert_eq!(q(2).inv().unwrap(), q(-2));
        assert_eq!(LaurentRat::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn additive_inverse_of_rational_function() {
        let x = (q(3) + LaurentRat::one()) / (q(1) + LaurentRat::from_int(2));
        assert!((x.clone() + (-x)).is_zero());
    }

    #[test]
    fn q_integers() {
        assert_eq!(qint(2), q(1) + q(-1));
        assert_eq!(qint(1), LaurentRat::one());
        assert_eq!(qint(-3), -(q(2) + LaurentRat::one() + q(-2)));
        assert_eq!(qint(0), LaurentRat::zero());
    }

    #[test]
    fn q_binomials() {
        assert_eq!(qbinom(2, 1).unwrap(), q(1) + q(-1));
        assert_eq!(qbinom(5, 0).unwrap(), LaurentRat::one());
        // hand expansion of [4][3]/([1][2])
        let expect = LaurentRat::from_terms(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]);
        assert_eq!(qbinom(4, 2).unwrap(), expect);
        assert!(matches!(qbinom(3, 4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn evaluation() {
        let two = BigRational::from_integer(2.into());
        let one = BigRational::one();
        assert_eq!(
            (q(1) + q(-1)).evaluate_at(&two).unwrap(),
            BigRational::new(5.into(), 2.into())
        );
        assert_eq!(qint(2).evaluate_at(&one).unwrap(), two);
        let pole = LaurentRat::one() / (q(1) - LaurentRat::one());
        assert_eq!(pole.evaluate_at(&one), Err(Error::PoleAtPoint));
        assert_eq!(q(1).evaluate_at(&BigRational::zero()), Err(Error::ZeroBase));
    }

    #[test]
    fn wire_format() {
        assert_eq!((q(2) - q(-2)).to_string(), "(q^2 - q^-2)/(1)");
        assert_eq!(LaurentRat::zero().to_string(), "(0)/(1)");
        let x = (LaurentRat::from_int(-3) * q(1)) / (q(2) + LaurentRat::from_int(2));
        assert_eq!(x.to_string(), "(-3*q)/(q^2 + 2)");
        let half = LaurentRat::one() / LaurentRat::from_int(2);
        assert_eq!(half.to_string(), "(1)/(2)");
        for v in [x, half, q(-7) + LaurentRat::from_int(4)] {
            assert_eq!(v.to_string().parse::<LaurentRat>().unwrap(), v);
        }
    }

    #[test]
    fn canonical_denominator() {
        // (2q - 2) / (4q^2 - 4) == 1 / (2q + 2)
        let a = LaurentRat::from_parts(0, vec![(-2).into(), 2.into()], vec![(-4).into(), 0.into(), 4.into()]);
        let b = LaurentRat::from_parts(0, vec![1.into()], vec![2.into(), 2.into()]);
        assert_eq!(a, b);
        let c = LaurentRat::from_parts(0, vec![1.into()], vec![(-1).into(), (-1).into()]);
        assert_eq!(c.denominator_terms()[1].1, BigInt::one());
    }
}
