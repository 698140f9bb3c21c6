use std::fmt;

use serde_json::{json, Value};

use super::{poly_mul, trim, Field, TruncSeries};
use crate::error::{Error, Result};

/// Monic polynomial `prod (u - r)` stored as its sorted multiset of roots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredPoly<F: Field> {
    field: F,
    roots: Vec<F::Elem>,
}

impl<F: Field> FactoredPoly<F> {
    pub fn from_roots(field: &F, mut roots: Vec<F::Elem>) -> Self {
        roots.sort();
        FactoredPoly {
            field: field.clone(),
            roots,
        }
    }

    pub fn one(field: &F) -> Self {
        Self::from_roots(field, Vec::new())
    }

    /// `u + a`.
    pub fn linear_plus(field: &F, a: &F::Elem) -> Self {
        Self::from_roots(field, vec![field.neg(a)])
    }

    /// Factors a polynomial with ascending coefficients; `None` if it does not
    /// split. The leading coefficient is discarded.
    pub fn from_coeffs(field: &F, coeffs: &[F::Elem]) -> Option<Self> {
        let c = trim(field, coeffs.to_vec());
        if c.is_empty() {
            return None;
        }
        if c.len() == 1 {
            return Some(Self::one(field));
        }
        let roots = field.split_roots(&c)?;
        Some(Self::from_roots(field, roots))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn roots(&self) -> &[F::Elem] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty()
    }

    /// Ascending coefficients of the expanded monic polynomial.
    pub fn expand(&self) -> Vec<F::Elem> {
        let f = &self.field;
        self.roots.iter().fold(vec![f.one()], |acc, r| {
            poly_mul(f, &acc, &[f.neg(r), f.one()])
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = self.roots.clone();
        r.extend(o.roots.iter().cloned());
        Self::from_roots(&self.field, r)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div_exact(&self, o: &Self) -> Result<Self> {
        let (a, b) = cancel_common(self, o);
        if !b.is_one() {
            return Err(Error::Domain(format!("{o} does not divide {self}")));
        }
        Ok(a)
    }

    /// `P(u + c)`.
    pub fn shift_argument(&self, c: &F::Elem) -> Self {
        let r = self.roots.iter().map(|x| self.field.sub(x, c)).collect();
        Self::from_roots(&self.field, r)
    }

    /// The monic polynomial `(-1)^deg P(-u)`.
    pub fn reflect(&self) -> Self {
        let r = self.roots.iter().map(|x| self.field.neg(x)).collect();
        Self::from_roots(&self.field, r)
    }

    /// `u^{-deg} P(u)` as a series in `u^{-1}`.
    pub fn to_series(&self, order: usize) -> TruncSeries<F> {
        let mut c = self.expand();
        c.reverse();
        c.truncate(order + 1);
        TruncSeries::new(&self.field, c, order)
    }

    pub fn to_json(&self) -> Value {
        json!({"roots": self.roots.iter().map(|r| self.field.encode(r)).collect::<Vec<_>>()})
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        let arr = v
            .get("roots")
            .and_then(Value::as_array)
            .or_else(|| v.as_array())
            .ok_or_else(|| Error::Parse(format!("expected {{\"roots\": [...]}}, got {v}")))?;
        let roots = arr.iter().map(|x| field.decode(x)).collect::<Result<_>>()?;
        Ok(Self::from_roots(field, roots))
    }
}

/// Removes the common part of two root multisets.
pub fn cancel_common<F: Field>(a: &FactoredPoly<F>, b: &FactoredPoly<F>) -> (FactoredPoly<F>, FactoredPoly<F>) {
    let (mut ra, mut rb) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < a.roots.len() && j < b.roots.len() {
        match a.roots[i].cmp(&b.roots[j]) {
            std::cmp::Ordering::Less => {
                ra.push(a.roots[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                rb.push(b.roots[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    ra.extend(a.roots[i..].iter().cloned());
    rb.extend(b.roots[j..].iter().cloned());
    (
        FactoredPoly::from_roots(&a.field, ra),
        FactoredPoly::from_roots(&b.field, rb),
    )
}

impl<F: Field> fmt::Debug for FactoredPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for FactoredPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roots.is_empty() {
            return write!(f, "1");
        }
        for r in &self.roots {
            if self.field.is_zero(r) {
                write!(f, "(u)")?;
            } else {
                write!(f, "(u - {})", self.field.format(r))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaloisField, Rational, Rationals};

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    #[test]
    fn expand_and_refactor_over_q() {
        let p = FactoredPoly::from_roots(&Rationals, vec![q(2), q(-1), q(0)]);
        let c = p.expand();
        assert_eq!(c, vec![q(0), q(-2), q(-1), q(1)]);
        assert_eq!(FactoredPoly::from_coeffs(&Rationals, &c).unwrap(), p);
    }

    #[test]
    fn refactor_over_extension_field() {
        let f = GaloisField::new(3, 2).unwrap();
        let g = f.generator();
        let p = FactoredPoly::from_roots(&f, vec![g, g, f.one(), f.add(&g, &f.one())]);
        assert_eq!(FactoredPoly::from_coeffs(&f, &p.expand()).unwrap(), p);
    }

    #[test]
    fn series_form() {
        // u(u+1) -> 1 + u^{-1}
        let p = FactoredPoly::from_roots(&Rationals, vec![q(0), q(-1)]);
        assert_eq!(
            p.to_series(3),
            TruncSeries::new(&Rationals, vec![q(1), q(1)], 3)
        );
    }

    #[test]
    fn shifts_and_cancellation() {
        let p = FactoredPoly::from_roots(&Rationals, vec![q(0), q(1)]);
        assert_eq!(p.shift_argument(&q(1)).roots(), &[q(-1), q(0)]);
        assert_eq!(p.reflect().roots(), &[q(-1), q(0)]);
        let (a, b) = cancel_common(&p, &p.shift_argument(&q(1)));
        assert_eq!(a.roots(), &[q(1)]);
        assert_eq!(b.roots(), &[q(-1)]);
        assert!(p.div_exact(&a).is_ok());
        assert!(a.div_exact(&p).is_err());
    }
}
