use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::{deflate, horner, trim, Field, FieldTag};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| Rational::from_integer(k.into()))
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, k: i64) -> Rational {
        Rational::from_integer(k.into())
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn coset_split(&self, a: &Rational) -> (Rational, i64) {
        let fl = a.floor();
        let k = fl
            .to_integer()
            .to_i64()
            .expect("integer part of a parameter exceeds i64");
        (a - fl, k)
    }
    fn elements(&self) -> Option<Vec<Rational>> {
        None
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn encode(&self, a: &Rational) -> Value {
        Value::String(rational_to_string(a))
    }
    fn decode(&self, v: &Value) -> Result<Rational> {
        rational_from_value(v)
    }
    fn format(&self, a: &Rational) -> String {
        rational_to_string(a)
    }

    /// Rational root theorem on the integer-cleared polynomial.
    fn split_roots(&self, coeffs: &[Rational]) -> Option<Vec<Rational>> {
        let mut poly = trim(self, coeffs.to_vec());
        if poly.is_empty() {
            return None;
        }
        let mut roots = Vec::new();
        while poly.len() > 1 && poly[0].is_zero() {
            poly.remove(0);
            roots.push(Rational::zero());
        }
        while poly.len() > 1 {
            let x = find_rational_root(&poly)?;
            poly = deflate(self, &poly, &x);
            roots.push(x);
        }
        roots.sort();
        Some(roots)
    }
}

/// Some rational root of a nonconstant polynomial, or `None` if there is none
/// (or the coefficients are too large to search).
pub fn find_rational_root(poly: &[Rational]) -> Option<Rational> {
    let poly = trim(&Rationals, poly.to_vec());
    if poly.len() < 2 {
        return None;
    }
    if poly[0].is_zero() {
        return Some(Rational::zero());
    }
    let ints = clear_denominators(&poly);
    let nums = small_divisors(&ints[0].abs())?;
    let dens = small_divisors(&ints.last().unwrap().abs())?;
    for d in &dens {
        for n in &nums {
            for sign in [1, -1] {
                let x = Rational::new(n * BigInt::from(sign), d.clone());
                if horner(&Rationals, &poly, &x).is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

pub(crate) fn clear_denominators(poly: &[Rational]) -> Vec<BigInt> {
    let l = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    poly.iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

/// Positive divisors by trial division; `None` if the number is too large to
/// factor this way.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 10_000_000 {
            return None;
        }
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_and_reduces() {
        assert_eq!(q("6/4"), q("3/2"));
        assert_eq!(rational_to_string(&q("-4/-2")), "2");
        assert_eq!(rational_to_string(&q("1/-3")), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn coset_split_uses_floor() {
        assert_eq!(Rationals.coset_split(&q("-1/2")), (q("1/2"), -1));
        assert_eq!(Rationals.coset_split(&q("7/3")), (q("1/3"), 2));
        assert_eq!(Rationals.integer_gap(&q("1/2"), &q("-5/2")), Some(-3));
        assert_eq!(Rationals.integer_gap(&q("1/2"), &q("1/3")), None);
    }

    #[test]
    fn rational_roots_of_split_polynomial() {
        // (u - 1/2)(u + 3)(u)^2 = u^4 + 5/2 u^3 - 3/2 u^2
        let c = vec![q("0"), q("0"), q("-3/2"), q("5/2"), q("1")];
        let roots = Rationals.split_roots(&c).unwrap();
        assert_eq!(roots, vec![q("-3"), q("0"), q("0"), q("1/2")]);
        // u^2 - 2 does not split over Q
        assert!(Rationals.split_roots(&[q("-2"), q("0"), q("1")]).is_none());
    }
}
