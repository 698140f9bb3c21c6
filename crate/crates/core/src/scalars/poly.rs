use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::rational::{clear_denominators, rational_from_value};
use super::{horner, Field, Rational, Rationals};
use crate::error::{Error, Result};

/// Polynomial in `t` with rational coefficients, ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(k: i64) -> Self {
        Self::constant(Rational::from_integer(k.into()))
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&k| Rational::from_integer(k.into())).collect())
    }

    /// The monomial `t^k`.
    pub fn t_pow(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        QPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        horner(&Rationals, &self.coeffs, t)
    }

    /// Evaluates at `t` in another field, reducing coefficients first.
    pub fn eval_in<F: Field>(&self, field: &F, t: &F::Elem) -> Result<F::Elem> {
        let c = self
            .coeffs
            .iter()
            .map(|q| field.from_rational(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(horner(field, &c, t))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    /// Exact division; the remainder must vanish.
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer roots with multiplicity, found by testing divisors of the
    /// lowest nonzero coefficient and deflating.
    pub fn integer_roots(&self) -> IntegerRootReport {
        let mut roots: Vec<(i64, usize)> = Vec::new();
        let mut cur = self.clone();
        let mut zeros = 0;
        while cur.degree().is_some_and(|d| d > 0) && cur.coeffs[0].is_zero() {
            cur = QPoly::new(cur.coeffs[1..].to_vec());
            zeros += 1;
        }
        if zeros > 0 {
            roots.push((0, zeros));
        }
        let mut inconclusive = false;
        'outer: while cur.degree().is_some_and(|d| d > 0) {
            let ints = clear_denominators(&cur.coeffs);
            let Some(cands) = divisor_candidates(&ints[0]) else {
                inconclusive = true;
                break;
            };
            for r in cands {
                let x = Rational::from_integer(r.into());
                if cur.eval(&x).is_zero() {
                    let lin = QPoly::new(vec![-x, Rational::one()]);
                    cur = cur.div_exact(&lin).expect("root divides");
                    match roots.iter_mut().find(|(y, _)| *y == r) {
                        Some(e) => e.1 += 1,
                        None => roots.push((r, 1)),
                    }
                    continue 'outer;
                }
            }
            break;
        }
        roots.sort();
        IntegerRootReport {
            roots,
            residual: cur,
            inconclusive,
        }
    }

    /// `c (t - r_1)...(t - r_k)` when the polynomial splits over Q.
    pub fn factored_string(&self) -> Option<String> {
        let lead = self.leading();
        if self.is_zero() {
            return Some("0".into());
        }
        let roots = Rationals.split_roots(&self.coeffs)?;
        let mut parts: Vec<String> = Vec::new();
        let mut distinct: Vec<(Rational, usize)> = Vec::new();
        for r in roots {
            match distinct.last_mut() {
                Some((x, k)) if *x == r => *k += 1,
                _ => distinct.push((r, 1)),
            }
        }
        for (r, k) in distinct {
            let base = if r.is_zero() {
                "t".to_string()
            } else if r.is_positive() {
                format!("(t - {r})")
            } else {
                format!("(t + {})", -r)
            };
            parts.push(if k > 1 { format!("{base}^{k}") } else { base });
        }
        let body = parts.join("*");
        Some(if parts.is_empty() {
            lead.to_string()
        } else if lead.is_one() {
            body
        } else if lead == -Rational::one() {
            format!("-{body}")
        } else {
            format!("{lead}*{body}")
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected coefficient array, got {v}")))?;
        Ok(Self::new(
            arr.iter().map(rational_from_value).collect::<Result<_>>()?,
        ))
    }
}

/// Candidate integer roots: `±d` for divisors `d` of `c`, ascending by absolute value.
fn divisor_candidates(c: &BigInt) -> Option<Vec<i64>> {
    let n = c.abs().to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d)? <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
        if d > 10_000_000 {
            return None;
        }
    }
    out.sort();
    out.dedup();
    Some(
        out.into_iter()
            .flat_map(|d| [d as i64, -(d as i64)])
            .collect(),
    )
}

/// Result of [`QPoly::integer_roots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRootReport {
    /// `(root, multiplicity)`, ascending.
    pub roots: Vec<(i64, usize)>,
    /// What remains after dividing out the integer roots.
    pub residual: QPoly,
    /// The constant term was too large to enumerate divisors.
    pub inconclusive: bool,
}

impl IntegerRootReport {
    pub fn all_integer(&self) -> bool {
        !self.inconclusive && self.residual.degree().is_some_and(|d| d == 0)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let sign = match (first, neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            let body = if k == 0 {
                a.to_string()
            } else if a.is_one() {
                mono
            } else {
                format!("{a}*{mono}")
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        self + &(-o)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        QPoly::new(super::poly_mul(&Rationals, &self.coeffs, &o.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, o: QPoly) -> QPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The unique polynomial of degree `< points.len()` through the given points.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<QPoly> {
    if points.is_empty() {
        return Err(Error::Argument("no interpolation points".into()));
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::Argument(format!("duplicate abscissa {x}")));
        }
    }
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPoly::one();
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &QPoly::new(vec![-xj.clone(), Rational::one()]);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    fn pts(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(x, y)| (r(x), r(y))).collect()
    }

    #[test]
    fn interpolation_examples() {
        let tri = lagrange_interpolate(&pts(&[(2, 3), (3, 6), (4, 10)])).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(tri, QPoly::new(vec![r(0), half.clone(), half]));
        assert_eq!(
            lagrange_interpolate(&pts(&[(0, 7)])).unwrap(),
            QPoly::from_int(7)
        );
        assert_eq!(
            lagrange_interpolate(&pts(&[(1, 1), (2, 4), (3, 9)])).unwrap(),
            QPoly::t_pow(2)
        );
        assert!(matches!(
            lagrange_interpolate(&pts(&[(1, 1), (1, 2)])),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn display_and_factoring() {
        let p = QPoly::from_ints(&[0, 0, -1, 0, 1]);
        assert_eq!(p.to_string(), "t^4 - t^2");
        assert_eq!(p.factored_string().unwrap(), "(t + 1)*t^2*(t - 1)");
        let half = lagrange_interpolate(&pts(&[(2, 3), (3, 6), (4, 10)])).unwrap();
        assert_eq!(half.to_string(), "1/2*t^2 + 1/2*t");
        assert_eq!(half.factored_string().unwrap(), "1/2*(t + 1)*t");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::from_ints(&[-2, 0, 1]).factored_string(), None);
    }

    #[test]
    fn integer_root_report() {
        let p = QPoly::from_ints(&[0, 0, -1, 0, 1]);
        let rep = p.integer_roots();
        assert_eq!(rep.roots, vec![(-1, 1), (0, 2), (1, 1)]);
        assert!(rep.all_integer());
        let q = QPoly::from_ints(&[-2, 0, 1]);
        assert!(!q.integer_roots().all_integer());
    }

    #[test]
    fn division() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        let b = QPoly::from_ints(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), QPoly::from_ints(&[-1, 1]));
        let (q, rem) = QPoly::from_ints(&[1, 0, 1]).div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &rem, QPoly::from_ints(&[1, 0, 1]));
        assert!(QPoly::one().div_rem(&QPoly::zero()).is_err());
    }
}
