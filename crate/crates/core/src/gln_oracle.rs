//! Finite-rank ground truth: invariant tensors of matchings, Hom dimensions
//! over `GL_n` and the Weyl dimension formula.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::diagram::{enumerate_matchings, Matching, ObjectWord};
use crate::error::{Error, Result};
use crate::gl_module::{verma_quotient, GlnModule};
use crate::scalars::{Field, Rational};

/// Default cap on the number of nonzero entries of a single tensor.
pub const TENSOR_ENTRY_LIMIT: u64 = 10_000_000;

/// Sparse multi-array over `n^(points)` indices. Source points are the most
/// significant digits, then target points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteTensor<F: Field> {
    field: F,
    n: usize,
    src: ObjectWord,
    dst: ObjectWord,
    entries: BTreeMap<u64, F::Elem>,
}

impl<F: Field> ConcreteTensor<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn src(&self) -> ObjectWord {
        self.src
    }

    pub fn dst(&self) -> ObjectWord {
        self.dst
    }

    pub fn entries(&self) -> &BTreeMap<u64, F::Elem> {
        &self.entries
    }

    /// Entry at a multi-index (one digit per point).
    pub fn get(&self, idx: &[usize]) -> F::Elem {
        let k = idx.iter().fold(0u64, |acc, &d| acc * self.n as u64 + d as u64);
        self.entries.get(&k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn ambient_size(&self) -> u64 {
        (self.n as u64).pow((self.src.len() + self.dst.len()) as u32)
    }

    /// Sum of all entries; for an endomorphism closed up this is its trace.
    pub fn full_sum(&self) -> F::Elem {
        self.entries
            .values()
            .fold(self.field.zero(), |a, b| self.field.add(&a, b))
    }

    /// Contraction over the shared middle row: `self ∘ f`.
    pub fn compose(&self, f: &ConcreteTensor<F>) -> Result<ConcreteTensor<F>> {
        if f.dst != self.src || f.n != self.n {
            return Err(Error::Composition(format!(
                "cannot contract {} -> {} after {} -> {}",
                self.src, self.dst, f.src, f.dst
            )));
        }
        let fld = &self.field;
        let n = self.n as u64;
        let mid = n.pow(self.src.len() as u32);
        let out_c = n.pow(self.dst.len() as u32);
        let mut by_mid: HashMap<u64, Vec<(u64, &F::Elem)>> = HashMap::new();
        for (k, v) in &self.entries {
            by_mid.entry(k / out_c).or_default().push((k % out_c, v));
        }
        let mut entries: BTreeMap<u64, F::Elem> = BTreeMap::new();
        for (k, v) in &f.entries {
            let (a, b) = (k / mid, k % mid);
            if let Some(row) = by_mid.get(&b) {
                for (c, w) in row {
                    let e = entries.entry(a * out_c + c).or_insert_with(|| fld.zero());
                    *e = fld.add(e, &fld.mul(v, w));
                }
            }
        }
        entries.retain(|_, v| !fld.is_zero(v));
        Ok(ConcreteTensor {
            field: fld.clone(),
            n: self.n,
            src: f.src,
            dst: self.dst,
            entries,
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = self.clone();
        out.entries = self
            .entries
            .iter()
            .map(|(k, v)| (*k, self.field.mul(v, c)))
            .filter(|(_, v)| !self.field.is_zero(v))
            .collect();
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if (self.n, self.src, self.dst) != (o.n, o.src, o.dst) {
            return Err(Error::Argument("tensor signatures differ".into()));
        }
        let mut out = self.clone();
        for (k, v) in &o.entries {
            let e = out.entries.entry(*k).or_insert_with(|| self.field.zero());
            *e = self.field.add(e, v);
        }
        out.entries.retain(|_, v| !self.field.is_zero(v));
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "src": self.src.to_json(),
            "dst": self.dst.to_json(),
            "nonzero": self.entries.iter().map(|(k, v)| {
                let mut idx = Vec::new();
                let mut x = *k;
                for _ in 0..self.src.len() + self.dst.len() {
                    idx.push(x % self.n as u64);
                    x /= self.n as u64;
                }
                idx.reverse();
                json!({"index": idx, "value": self.field.encode(v)})
            }).collect::<Vec<_>>(),
        })
    }
}

/// The invariant tensor equating indices along every pair of `m`.
pub fn matching_to_tensor<F: Field>(m: &Matching, n: usize, field: &F) -> Result<ConcreteTensor<F>> {
    if n == 0 {
        return Err(Error::Argument("rank must be at least 1".into()));
    }
    let total = m.src().len() + m.dst().len();
    let npairs = total / 2;
    let count = (n as u64)
        .checked_pow(npairs as u32)
        .filter(|&c| c <= TENSOR_ENTRY_LIMIT)
        .ok_or_else(|| Error::size("tensor entries", (n as u64).saturating_pow(npairs as u32), TENSOR_ENTRY_LIMIT))?;
    (n as u64)
        .checked_pow(total as u32)
        .ok_or_else(|| Error::size("tensor index space", u64::MAX, u64::MAX))?;
    let partner = m.partner();
    let firsts: Vec<usize> = (0..total).filter(|&k| k < partner[k]).collect();
    let mut entries = BTreeMap::new();
    let mut digits = vec![0usize; total];
    for code in 0..count {
        let mut x = code;
        for &k in &firsts {
            let d = (x % n as u64) as usize;
            x /= n as u64;
            digits[k] = d;
            digits[partner[k]] = d;
        }
        let key = digits.iter().fold(0u64, |acc, &d| acc * n as u64 + d as u64);
        entries.insert(key, field.one());
    }
    Ok(ConcreteTensor {
        field: field.clone(),
        n,
        src: m.src(),
        dst: m.dst(),
        entries,
    })
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank<F: Field>(field: &F, vectors: impl IntoIterator<Item = BTreeMap<u64, F::Elem>>) -> usize {
    let mut basis: HashMap<u64, BTreeMap<u64, F::Elem>> = HashMap::new();
    for mut v in vectors {
        loop {
            let Some((&k, lead)) = v.iter().next() else { break };
            let Some(b) = basis.get(&k) else {
                let inv = field.inv(lead).expect("nonzero");
                for x in v.values_mut() {
                    *x = field.mul(x, &inv);
                }
                basis.insert(k, v);
                break;
            };
            let c = lead.clone();
            for (j, y) in b {
                let e = v.entry(*j).or_insert_with(|| field.zero());
                *e = field.sub(e, &field.mul(&c, y));
            }
            v.retain(|_, x| !field.is_zero(x));
        }
    }
    basis.len()
}

/// Dimension of the span of the invariant tensors of all matchings `src -> dst`.
pub fn hom_dim_gln<F: Field>(n: usize, src: ObjectWord, dst: ObjectWord, field: &F) -> Result<usize> {
    let tensors = enumerate_matchings(src, dst)
        .iter()
        .map(|m| matching_to_tensor(m, n, field).map(|t| t.entries))
        .collect::<Result<Vec<_>>>()?;
    Ok(sparse_rank(field, tensors))
}

pub fn is_dominant(lambda: &[i64]) -> bool {
    lambda.windows(2).all(|w| w[0] >= w[1])
}

/// `prod_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_dim(lambda: &[i64]) -> Result<u64> {
    if !is_dominant(lambda) {
        return Err(Error::Argument(format!("weight {lambda:?} is not dominant")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            num *= lambda[i] - lambda[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let q = Rational::new(num, den);
    q.to_integer()
        .to_u64()
        .ok_or_else(|| Error::size("Weyl dimension", u64::MAX, u64::MAX))
}

/// The irreducible `gl_n`-module `V(λ)` (`n ≤ 3`) over a field of characteristic zero.
pub fn build_irreducible_gln<F: Field>(lambda: &[i64], field: &F, limit: u64) -> Result<GlnModule<F>> {
    if field.characteristic() != 0 {
        return Err(Error::Argument(format!(
            "characteristic-zero field required, got {}",
            field.tag()
        )));
    }
    let d = weyl_dim(lambda)?;
    if d > limit {
        return Err(Error::size("module dimension", d, limit));
    }
    verma_quotient(field, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rationals;

    fn w(r: usize, s: usize) -> ObjectWord {
        ObjectWord::new(r, s)
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim(&[1, 0]).unwrap(), 2);
        assert_eq!(weyl_dim(&[1, 0, -1]).unwrap(), 8);
        assert_eq!(weyl_dim(&[2, 0]).unwrap(), 3);
        assert_eq!(weyl_dim(&[2, 1, 0]).unwrap(), 8);
        assert!(weyl_dim(&[0, 1]).is_err());
    }

    #[test]
    fn hom_dimension_examples() {
        assert_eq!(hom_dim_gln(2, w(2, 0), w(2, 0), &Rationals).unwrap(), 2);
        assert_eq!(hom_dim_gln(1, w(1, 1), w(1, 1), &Rationals).unwrap(), 1);
        assert_eq!(hom_dim_gln(3, w(1, 1), w(1, 1), &Rationals).unwrap(), 2);
        assert_eq!(hom_dim_gln(2, w(3, 0), w(3, 0), &Rationals).unwrap(), 5);
        assert_eq!(hom_dim_gln(3, w(1, 0), w(0, 1), &Rationals).unwrap(), 0);
    }

    #[test]
    fn irreducible_examples() {
        let m = build_irreducible_gln(&[1, 0], &Rationals, 64).unwrap();
        assert_eq!(m.e(1, 0).to_dense()[1][0], Rational::one());
        let det = build_irreducible_gln(&[1, 1], &Rationals, 64).unwrap();
        assert_eq!(det.e(0, 0).scalar_value(), Some(Rational::one()));
        assert!(det.e(0, 1).is_zero());
        let m = build_irreducible_gln(&[2, 0], &Rationals, 64).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(m.satisfies_relations().unwrap());
        assert!(matches!(build_irreducible_gln(&[7, 3, 0], &Rationals, 64), Err(Error::Size { .. })));
        assert!(build_irreducible_gln(&[0, 1], &Rationals, 64).is_err());
    }

    #[test]
    fn tensor_examples() {
        let id = matching_to_tensor(&Matching::identity(w(1, 0)), 2, &Rationals).unwrap();
        assert_eq!(id.get(&[0, 0]), Rational::one());
        assert_eq!(id.get(&[0, 1]), Rational::from_integer(0.into()));
        let cap = matching_to_tensor(&Matching::evaluation(), 3, &Rationals).unwrap();
        assert_eq!(cap.entries().len(), 3);
        assert_eq!(cap.get(&[2, 2]), Rational::one());
        let cup = matching_to_tensor(&Matching::coevaluation(), 3, &Rationals).unwrap();
        let closed = cap.compose(&cup).unwrap();
        assert_eq!(closed.full_sum(), Rational::from_integer(3.into()));
    }
}
