//! Exact coefficient arithmetic.
//!
//! Everything in the crate is generic over [`Field`], which is implemented by
//! [`Rationals`] (characteristic zero) and [`GaloisField`] (`F_{p^m}`). Field
//! values are runtime objects, so elements are manipulated through the field:
//! `field.mul(&a, &b)`. Value types built on top ([`TruncSeries`],
//! [`FactoredPoly`], matrices) carry their field and expose ordinary methods.

mod factored;
mod galois;
mod poly;
mod rational;
mod series;

pub use factored::{cancel_common, FactoredPoly};
pub use galois::{bracket_lift, GaloisField, GfElem};
pub use poly::{lagrange_interpolate, IntegerRootReport, QPoly};
pub use rational::{find_rational_root, parse_rational, rational_to_string, Rational, Rationals};
pub use series::{series_shift_expand, shift_weights, TruncSeries, DEFAULT_TRUNCATION};

use std::fmt;
use std::hash::Hash;

use serde_json::Value;

use crate::error::{Error, Result};

/// Identifies a coefficient field in serialized data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    Finite { p: u64, m: u32 },
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "q"),
            FieldTag::Finite { p, m: 1 } => write!(f, "fp:{p}"),
            FieldTag::Finite { p, m } => write!(f, "fp:{p}:{m}"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    /// Parses `q`, `fp:<p>` or `fp:<p>:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldTag::Rational);
        }
        let rest = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        let mut it = rest.split(':');
        let p: u64 = it
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad prime in `{s}`")))?;
        let m: u32 = match it.next() {
            Some(x) => x
                .parse()
                .map_err(|_| Error::Parse(format!("bad extension degree in `{s}`")))?,
            None => 1,
        };
        if it.next().is_some() {
            return Err(Error::Parse(format!("unknown field `{s}`")));
        }
        Ok(FieldTag::Finite { p, m })
    }
}

/// An exact field with runtime parameters.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, k: i64) -> Self::Elem;
    /// Reduces a rational; fails when the denominator vanishes in the field.
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Writes `a = base + k` where `base` is a canonical representative of the
    /// coset `a + Z` (resp. `a + F_p`). In characteristic `p`, `0 <= k < p`.
    fn coset_split(&self, a: &Self::Elem) -> (Self::Elem, i64);
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn tag(&self) -> FieldTag;
    fn encode(&self, a: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self
            .inv(b)
            .ok_or_else(|| Error::Domain("division by zero".into()))?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn add_int(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        self.add(a, &self.from_i64(k))
    }

    /// `Some(k)` when `b = a + k` for an integer `k`; in characteristic `p`
    /// the representative `0 <= k < p` is returned.
    fn integer_gap(&self, a: &Self::Elem, b: &Self::Elem) -> Option<i64> {
        let (ra, ka) = self.coset_split(a);
        let (rb, kb) = self.coset_split(b);
        if ra != rb {
            return None;
        }
        let d = kb - ka;
        match self.characteristic() {
            0 => Some(d),
            p => Some(d.rem_euclid(p as i64)),
        }
    }

    /// Roots with multiplicity of the polynomial with ascending coefficients
    /// `coeffs`, or `None` if it does not split into linear factors. The
    /// default scans all field elements.
    fn split_roots(&self, coeffs: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        let elems = self.elements()?;
        let mut poly = trim(self, coeffs.to_vec());
        if poly.is_empty() {
            return None;
        }
        let mut roots = Vec::new();
        for x in &elems {
            while poly.len() > 1 && self.is_zero(&horner(self, &poly, x)) {
                poly = deflate(self, &poly, x);
                roots.push(x.clone());
            }
        }
        (poly.len() == 1).then(|| {
            roots.sort();
            roots
        })
    }
}

pub(crate) fn trim<F: Field>(field: &F, mut c: Vec<F::Elem>) -> Vec<F::Elem> {
    while c.last().is_some_and(|x| field.is_zero(x)) {
        c.pop();
    }
    c
}

pub(crate) fn horner<F: Field>(field: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Divides by `(u - x)` assuming `x` is a root.
pub(crate) fn deflate<F: Field>(field: &F, coeffs: &[F::Elem], x: &F::Elem) -> Vec<F::Elem> {
    let d = coeffs.len() - 1;
    let mut q = vec![field.zero(); d];
    let mut carry = field.zero();
    for k in (0..d).rev() {
        carry = field.add(&field.mul(&carry, x), &coeffs[k + 1]);
        q[k] = carry.clone();
    }
    q
}

/// Multiplies ascending coefficient vectors.
pub(crate) fn poly_mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}
