//! Finite fields `F_{p^m}` with `m <= 4`.
//!
//! Elements are packed as `sum coords[i] * p^i` relative to the
//! lexicographically least monic irreducible modulus of degree `m`
//! (ordering by the packed value of the non-leading coefficients).
//! Multiplication goes through discrete log tables.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{Field, FieldTag, Rational};
use crate::error::{Error, Result};

pub const MAX_EXTENSION_DEGREE: u32 = 4;
const MAX_ORDER: u64 = 1 << 20;

/// Element of a [`GaloisField`], packed base `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GfElem(pub u32);

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf#{}", self.0)
    }
}

struct Tables {
    p: u64,
    m: u32,
    q: u32,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct GaloisField {
    t: Arc<Tables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.m)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.m == other.t.m
    }
}
impl Eq for GaloisField {}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Remainder of `a` modulo the monic `b` over `F_p` (ascending coefficients).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_from_code(code: u64, degree: u32, p: u64) -> Vec<u64> {
    let mut c = Vec::with_capacity(degree as usize + 1);
    let mut x = code;
    for _ in 0..degree {
        c.push(x % p);
        x /= p;
    }
    c.push(1);
    c
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u32;
    for d in 1..=m / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        if m == 0 || m > MAX_EXTENSION_DEGREE {
            return Err(Error::Argument(format!(
                "extension degree {m} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::size("field order", p.saturating_pow(m), MAX_ORDER))?;
        let modulus = (0..p.pow(m))
            .map(|code| monic_from_code(code, m, p))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        let mut t = Tables {
            p,
            m,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        t.build_logs();
        Ok(GaloisField { t: Arc::new(t) })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.m
    }

    pub fn order(&self) -> u64 {
        self.t.q as u64
    }

    /// Monic modulus, ascending coefficients.
    pub fn modulus(&self) -> &[u64] {
        &self.t.modulus
    }

    pub fn coords(&self, a: &GfElem) -> Vec<u64> {
        self.t.digits(a.0)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<GfElem> {
        if coords.len() > self.t.m as usize {
            return Err(Error::Argument(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.t.m
            )));
        }
        let mut v = 0u64;
        for &c in coords.iter().rev() {
            if c >= self.t.p {
                return Err(Error::Argument(format!("coordinate {c} not reduced mod {}", self.t.p)));
            }
            v = v * self.t.p + c;
        }
        Ok(GfElem(v as u32))
    }

    /// A generator of `F_{p^m}` over `F_p` (the class of `x`).
    pub fn generator(&self) -> GfElem {
        if self.t.m == 1 {
            GfElem(0)
        } else {
            GfElem(self.t.p as u32)
        }
    }

    pub fn in_prime_subfield(&self, a: &GfElem) -> bool {
        (a.0 as u64) < self.t.p
    }
}

impl Tables {
    fn digits(&self, mut v: u32) -> Vec<u64> {
        (0..self.m)
            .map(|_| {
                let d = v as u64 % self.p;
                v /= self.p as u32;
                d
            })
            .collect()
    }

    fn pack(&self, c: &[u64]) -> u32 {
        c.iter().rev().fold(0u64, |acc, &d| acc * self.p + d) as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.m as usize - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        let mut c = r;
        c.resize(self.m as usize, 0);
        self.pack(&c)
    }

    fn build_logs(&mut self) {
        let q = self.q;
        let n = q - 1;
        let mut order_divisors = Vec::new();
        let mut k = n;
        let mut d = 2;
        while k > 1 {
            if k % d == 0 {
                order_divisors.push(n / d);
                while k % d == 0 {
                    k /= d;
                }
            }
            d += 1;
        }
        let pow = |t: &Tables, g: u32, mut e: u32| {
            let (mut acc, mut b) = (1u32, g);
            while e > 0 {
                if e & 1 == 1 {
                    acc = t.slow_mul(acc, b);
                }
                b = t.slow_mul(b, b);
                e >>= 1;
            }
            acc
        };
        let g = (1..q)
            .find(|&g| order_divisors.iter().all(|&e| pow(self, g, e) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
    }
}

impl Field for GaloisField {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        GfElem(0)
    }
    fn one(&self) -> GfElem {
        GfElem(1)
    }
    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let t = &self.t;
        if t.m == 1 {
            return GfElem(((a.0 as u64 + b.0 as u64) % t.p) as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..t.m {
            out += ((x % t.p + y % t.p) % t.p) * place;
            x /= t.p;
            y /= t.p;
            place *= t.p;
        }
        GfElem(out as u32)
    }
    fn neg(&self, a: &GfElem) -> GfElem {
        let t = &self.t;
        if t.m == 1 {
            return GfElem(((t.p - a.0 as u64) % t.p) as u32);
        }
        let c: Vec<u64> = t.digits(a.0).iter().map(|&d| (t.p - d) % t.p).collect();
        GfElem(t.pack(&c))
    }
    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        if a.0 == 0 || b.0 == 0 {
            return GfElem(0);
        }
        let t = &self.t;
        GfElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }
    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.t;
        let n = t.q - 1;
        Some(GfElem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
    }
    fn is_zero(&self, a: &GfElem) -> bool {
        a.0 == 0
    }
    fn from_i64(&self, k: i64) -> GfElem {
        GfElem(k.rem_euclid(self.t.p as i64) as u32)
    }
    fn from_rational(&self, q: &Rational) -> Result<GfElem> {
        let p = num_bigint::BigInt::from(self.t.p);
        let n = q.numer().mod_floor(&p).to_i64().unwrap();
        let d = q.denom().mod_floor(&p).to_i64().unwrap();
        if d == 0 {
            return Err(Error::Domain(format!(
                "denominator of {q} vanishes mod {}",
                self.t.p
            )));
        }
        let (n, d) = (self.from_i64(n), self.from_i64(d));
        self.div(&n, &d)
    }
    fn characteristic(&self) -> u64 {
        self.t.p
    }
    fn coset_split(&self, a: &GfElem) -> (GfElem, i64) {
        let c0 = a.0 as u64 % self.t.p;
        (GfElem(a.0 - c0 as u32), c0 as i64)
    }
    fn elements(&self) -> Option<Vec<GfElem>> {
        Some((0..self.t.q).map(GfElem).collect())
    }
    fn tag(&self) -> FieldTag {
        FieldTag::Finite {
            p: self.t.p,
            m: self.t.m,
        }
    }
    fn encode(&self, a: &GfElem) -> Value {
        json!({"p": self.t.p, "m": self.t.m, "coords": self.coords(a)})
    }
    fn decode(&self, v: &Value) -> Result<GfElem> {
        match v {
            Value::Object(o) => {
                let p = o.get("p").and_then(Value::as_u64);
                let m = o.get("m").and_then(Value::as_u64);
                if p != Some(self.t.p) || m.is_some_and(|m| m != self.t.m as u64) {
                    return Err(Error::FieldMismatch(format!(
                        "element {v} does not belong to {self:?}"
                    )));
                }
                let coords: Vec<u64> = o
                    .get("coords")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("missing coords".into()))?
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(|| Error::Parse(format!("bad coord {c}"))))
                    .collect::<Result<_>>()?;
                self.from_coords(&coords)
            }
            other => {
                let q = super::rational::rational_from_value(other)?;
                self.from_rational(&q)
            }
        }
    }
    fn format(&self, a: &GfElem) -> String {
        if self.in_prime_subfield(a) {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .coords(a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        terms.join("+")
    }
}

/// The least nonnegative integer representative of an element of the prime subfield.
pub fn bracket_lift(field: &GaloisField, x: &GfElem) -> Result<u64> {
    if field.in_prime_subfield(x) {
        Ok(x.0 as u64)
    } else {
        Err(Error::Domain(format!(
            "{} is not in the prime subfield of {field:?}",
            field.format(x)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_lift_examples() {
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(bracket_lift(&f7, &f7.from_i64(3)).unwrap(), 3);
        assert_eq!(bracket_lift(&f7, &f7.from_i64(-1)).unwrap(), 6);
        let f5 = GaloisField::prime(5).unwrap();
        assert_eq!(bracket_lift(&f5, &f5.zero()).unwrap(), 0);
        let f49 = GaloisField::new(7, 2).unwrap();
        assert!(matches!(
            bracket_lift(&f49, &f49.generator()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn bracket_lift_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = GaloisField::prime(p).unwrap();
            for x in f.elements().unwrap() {
                let k = bracket_lift(&f, &x).unwrap();
                assert!(k < p);
                assert_eq!(f.from_i64(k as i64), x);
            }
        }
    }

    #[test]
    fn least_irreducible_moduli() {
        assert_eq!(GaloisField::new(7, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(GaloisField::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(GaloisField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert!(GaloisField::new(4, 1).is_err());
        assert!(GaloisField::new(3, 5).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_f9_and_f8() {
        for (p, m) in [(3, 2), (2, 3), (5, 1)] {
            let f = GaloisField::new(p, m).unwrap();
            let el = f.elements().unwrap();
            for a in &el {
                assert_eq!(f.add(a, &f.neg(a)), f.zero());
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
                }
                for b in &el {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), GfElem(f.t.slow_mul(a.0, b.0)));
                    for c in el.iter().step_by(3) {
                        let lhs = f.mul(a, &f.add(b, c));
                        let rhs = f.add(&f.mul(a, b), &f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn rational_reduction_and_json() {
        let f = GaloisField::prime(7).unwrap();
        let half = f.from_rational(&Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(f.mul(&half, &f.from_i64(2)), f.one());
        assert!(f.from_rational(&Rational::new(1.into(), 7.into())).is_err());
        let f49 = GaloisField::new(7, 2).unwrap();
        let x = f49.add(&f49.generator(), &f49.from_i64(3));
        let v = f49.encode(&x);
        assert_eq!(v, json!({"p":7,"m":2,"coords":[3,1]}));
        assert_eq!(f49.decode(&v).unwrap(), x);
        assert!(f.decode(&v).is_err());
    }

    #[test]
    fn coset_split_in_extension() {
        let f = GaloisField::new(5, 2).unwrap();
        let x = f.add(&f.generator(), &f.from_i64(4));
        let y = f.add(&f.generator(), &f.from_i64(1));
        assert_eq!(f.integer_gap(&x, &y), Some(2));
        assert_eq!(f.integer_gap(&x, &f.one()), None);
    }
}
