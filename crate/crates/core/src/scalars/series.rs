use std::fmt;

use serde_json::{json, Value};

use super::Field;
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 8;

/// Power series in `u^{-1}` known through `u^{-N}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> TruncSeries<F> {
    /// Coefficients of `u^0, u^{-1}, ...`; padded or cut to length `order + 1`.
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>, order: usize) -> Self {
        coeffs.resize(order + 1, field.zero());
        TruncSeries {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn one(field: &F, order: usize) -> Self {
        Self::new(field, vec![field.one()], order)
    }

    pub fn zero(field: &F, order: usize) -> Self {
        Self::new(field, Vec::new(), order)
    }

    /// `1 + a u^{-1}`.
    pub fn linear(field: &F, a: &F::Elem, order: usize) -> Self {
        Self::new(field, vec![field.one(), a.clone()], order)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(&self.field, self.coeffs.clone(), order.min(self.order()))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!(
                "{:?} vs {:?}",
                self.field, o.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.order().min(o.order());
        let c = (0..=n)
            .map(|k| self.field.add(&self.coeffs[k], &o.coeffs[k]))
            .collect();
        Ok(Self::new(&self.field, c, n))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let v = self.coeffs.iter().map(|x| self.field.mul(x, c)).collect();
        Self::new(&self.field, v, self.order())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.order().min(o.order());
        let f = &self.field;
        let mut c = vec![f.zero(); n + 1];
        for i in 0..=n {
            if f.is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..=n - i {
                c[i + j] = f.add(&c[i + j], &f.mul(&self.coeffs[i], &o.coeffs[j]));
            }
        }
        Ok(Self::new(f, c, n))
    }

    /// Multiplicative inverse; the constant term must be 1.
    pub fn inv(&self) -> Result<Self> {
        let f = &self.field;
        if self.coeffs[0] != f.one() {
            return Err(Error::Domain(
                "series inversion needs constant term 1".into(),
            ));
        }
        let n = self.order();
        let mut out = vec![f.zero(); n + 1];
        out[0] = f.one();
        for k in 1..=n {
            let mut s = f.zero();
            for j in 1..=k {
                s = f.add(&s, &f.mul(&self.coeffs[j], &out[k - j]));
            }
            out[k] = f.neg(&s);
        }
        Ok(Self::new(f, out, n))
    }

    /// Substitutes `u -> -u`.
    pub fn reflect(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, x)| if k % 2 == 1 { f.neg(x) } else { x.clone() })
            .collect();
        Self::new(f, c, self.order())
    }

    /// Re-expands `s(u - z)` in `u^{-1}`.
    pub fn shift(&self, z: &F::Elem) -> Self {
        series_shift_expand(self, z)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == self.field.one() && self.coeffs[1..].iter().all(|c| self.field.is_zero(c))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "truncation": self.order(),
            "coeffs": self.coeffs.iter().map(|c| self.field.encode(c)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: &F, v: &Value, default_order: usize) -> Result<Self> {
        let (arr, order) = match v {
            Value::Array(a) => (a, default_order.max(a.len().saturating_sub(1))),
            Value::Object(o) => {
                let a = o
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("series needs `coeffs`".into()))?;
                let n = o
                    .get("truncation")
                    .and_then(Value::as_u64)
                    .map(|n| n as usize)
                    .unwrap_or(default_order.max(a.len().saturating_sub(1)));
                (a, n)
            }
            other => return Err(Error::Parse(format!("expected a series, got {other}"))),
        };
        let c = arr.iter().map(|x| field.decode(x)).collect::<Result<Vec<_>>>()?;
        if c.len() > order + 1 {
            return Err(Error::Argument(format!(
                "{} coefficients exceed truncation {order}",
                c.len()
            )));
        }
        Ok(Self::new(field, c, order))
    }
}

impl<F: Field> fmt::Debug for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(k, c)| match k {
                0 => self.field.format(c),
                k => format!("({})u^-{k}", self.field.format(c)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        write!(f, " + O(u^-{})", self.order() + 1)
    }
}

/// `w[k][m]` is the coefficient of `u^{-m}` in `(u - z)^{-k}`, for `k, m <= order`.
pub fn shift_weights<F: Field>(field: &F, z: &F::Elem, order: usize) -> Vec<Vec<F::Elem>> {
    // binom[a][b] = C(a, b) computed in the field
    let mut binom = vec![vec![field.zero(); order + 1]; order + 1];
    for a in 0..=order {
        binom[a][0] = field.one();
        for b in 1..=a {
            binom[a][b] = field.add(&binom[a - 1][b - 1], &binom[a - 1][b]);
        }
    }
    let mut zp = vec![field.one(); order + 1];
    for j in 1..=order {
        zp[j] = field.mul(&zp[j - 1], z);
    }
    let mut w = vec![vec![field.zero(); order + 1]; order + 1];
    w[0][0] = field.one();
    for k in 1..=order {
        for m in k..=order {
            w[k][m] = field.mul(&binom[m - 1][m - k], &zp[m - k]);
        }
    }
    w
}

/// `s(u - z)` re-expanded as a series in `u^{-1}`, same truncation.
pub fn series_shift_expand<F: Field>(s: &TruncSeries<F>, z: &F::Elem) -> TruncSeries<F> {
    let f = s.field();
    let n = s.order();
    let w = shift_weights(f, z, n);
    let mut out = vec![f.zero(); n + 1];
    for (k, sk) in s.coeffs().iter().enumerate() {
        if f.is_zero(sk) {
            continue;
        }
        for m in k..=n {
            out[m] = f.add(&out[m], &f.mul(sk, &w[k][m]));
        }
    }
    TruncSeries::new(f, out, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaloisField, Rational, Rationals};

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    fn s(c: &[i64], n: usize) -> TruncSeries<Rationals> {
        TruncSeries::new(&Rationals, c.iter().map(|&k| q(k)).collect(), n)
    }

    #[test]
    fn shift_examples() {
        assert_eq!(series_shift_expand(&s(&[1, 1], 4), &q(0)), s(&[1, 1], 4));
        assert_eq!(series_shift_expand(&s(&[0, 1], 3), &q(1)), s(&[0, 1, 1, 1], 3));
        assert_eq!(series_shift_expand(&s(&[1], 5), &q(7)), s(&[1], 5));
    }

    #[test]
    fn shift_of_square_pole() {
        // (u-2)^{-2} = u^{-2} (1 + 4/u + 12/u^2 + ...)
        assert_eq!(
            series_shift_expand(&s(&[0, 0, 1], 4), &q(2)),
            s(&[0, 0, 1, 4, 12], 4)
        );
    }

    #[test]
    fn inverse_and_truncation() {
        let a = s(&[1, 3, -2], 6);
        let b = s(&[1, 1], 4);
        assert_eq!(a.mul(&b).unwrap().order(), 4);
        assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        assert!(s(&[2, 1], 3).inv().is_err());
    }

    #[test]
    fn reflect_is_involution() {
        let a = s(&[1, 3, -2, 5], 3);
        assert_eq!(a.reflect(), s(&[1, -3, -2, -5], 3));
        assert_eq!(a.reflect().reflect(), a);
    }

    #[test]
    fn modular_shift() {
        let f = GaloisField::prime(5).unwrap();
        let a = TruncSeries::new(&f, vec![f.one(), f.from_i64(2)], 4);
        let back = a.shift(&f.from_i64(3)).shift(&f.from_i64(-3));
        assert_eq!(back, a);
        let g = GaloisField::prime(7).unwrap();
        let b = TruncSeries::new(&g, vec![g.one()], 4);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_))));
    }
}
