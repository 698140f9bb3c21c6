use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::YangianModule;
use crate::error::{Error, Result};
use crate::linalg::{joint_kernel, Matrix, Span};
use crate::scalars::{Field, TruncSeries};

/// Eigen-series of `t_ii(u)` on a singular vector.
#[derive(Clone, Debug, PartialEq)]
pub struct YangianWeight<F: Field> {
    pub series: Vec<TruncSeries<F>>,
}

impl<F: Field> YangianWeight<F> {
    pub fn to_json(&self) -> Value {
        json!(self.series.iter().map(TruncSeries::to_json).collect::<Vec<_>>())
    }
}

impl<F: Field> YangianModule<F> {
    /// Basis of the joint kernel of all `t_ij^(m)` with `i < j`.
    pub fn singular_space(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let raising: Vec<&Matrix<F>> = self.generators().filter(|(i, j, _, _)| i < j).map(|g| g.3).collect();
        let mut grades: BTreeMap<&[i64], Vec<usize>> = BTreeMap::new();
        for (k, o) in self.offsets().iter().enumerate() {
            grades.entry(o.as_slice()).or_default().push(k);
        }
        let all: Vec<usize> = (0..self.dim()).collect();
        let mut out = Vec::new();
        for idx in grades.values() {
            let subs: Vec<Matrix<F>> = raising.iter().map(|m| m.submatrix(&all, idx)).collect();
            let refs: Vec<&Matrix<F>> = subs.iter().collect();
            for k in joint_kernel(f, &refs, idx.len()) {
                let mut v = vec![f.zero(); self.dim()];
                for (x, &i) in k.into_iter().zip(idx) {
                    v[i] = x;
                }
                out.push(v);
            }
        }
        out
    }

    /// Eigen-series of `t_ii(u)` on `v`, or an error if `v` is not an eigenvector.
    pub fn weight_on(&self, v: &[F::Elem]) -> Result<YangianWeight<F>> {
        self.weight_series(v, self.order())
    }

    /// As [`Self::weight_on`] through `u^{-order}`, capped at the truncation
    /// for inexact modules.
    pub fn weight_series(&self, v: &[F::Elem], order: usize) -> Result<YangianWeight<F>> {
        let order = if self.is_exact() { order } else { order.min(self.order()) };
        let f = self.field();
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return Err(Error::Argument("zero vector has no weight".into()));
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        let series = (0..self.n())
            .map(|i| {
                let coeffs = (0..=order)
                    .map(|m| {
                        let w = self.t(i, i, m).apply(v);
                        let c = f.mul(&w[p], &inv);
                        let ok = w.iter().zip(v).all(|(a, b)| f.sub(a, &f.mul(&c, b)) == f.zero());
                        if ok {
                            Ok(c)
                        } else {
                            Err(Error::Construction(format!("t_{0}{0}^({m}) does not preserve the line", i + 1)))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(TruncSeries::new(f, coeffs, order))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(YangianWeight { series })
    }

    /// The singular space and, when it is a line, the highest weight on it.
    pub fn singular_and_weight(&self) -> Result<(Vec<Vec<F::Elem>>, Option<YangianWeight<F>>)> {
        let sing = self.singular_space();
        let w = if sing.len() == 1 { Some(self.weight_on(&sing[0])?) } else { None };
        Ok((sing, w))
    }

    /// Dimension of the submodule generated by `v`.
    pub fn cyclic_dim(&self, v: Vec<F::Elem>) -> usize {
        let gens: Vec<&Matrix<F>> = self.generators().map(|g| g.3).filter(|m| !m.is_zero()).collect();
        let mut span = Span::new(self.field(), self.dim());
        let mut queue = Vec::new();
        if span.insert(v.clone()) {
            queue.push(v);
        }
        while let Some(w) = queue.pop() {
            if span.is_full() {
                break;
            }
            for m in &gens {
                let x = m.apply(&w);
                if span.insert(x.clone()) {
                    queue.push(x);
                }
            }
        }
        span.rank()
    }

    /// A unique singular line that generates the whole module.
    pub fn is_irreducible(&self) -> bool {
        let sing = self.singular_space();
        sing.len() == 1 && self.cyclic_dim(sing[0].clone()) == self.dim()
    }
}

/// `[α - β]`: the least nonnegative integer congruent to `α - β` when it lies
/// in the prime field (characteristic `p`), or `α - β` itself when it is a
/// nonnegative integer (characteristic 0).
pub fn bracket<F: Field>(field: &F, alpha: &F::Elem, beta: &F::Elem) -> Option<u64> {
    let d = field.integer_gap(beta, alpha)?;
    u64::try_from(d).ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renumeration<E> {
    pub reordered: Vec<(E, E)>,
    pub satisfied: bool,
}

/// Greedy re-pairing of the `α`'s and `β`'s by minimal bracket, and whether
/// the given order already has `[α_i - β_i] = min_{j,k >= i} [α_j - β_k]`
/// whenever some bracket with `j, k >= i` is defined.
pub fn renumeration_criterion<F: Field>(field: &F, pairs: &[(F::Elem, F::Elem)]) -> Renumeration<F::Elem> {
    let k = pairs.len();
    let satisfied = (0..k).all(|i| {
        let min = (i..k)
            .flat_map(|j| (i..k).map(move |l| (j, l)))
            .filter_map(|(j, l)| bracket(field, &pairs[j].0, &pairs[l].1))
            .min();
        match min {
            None => true,
            Some(m) => bracket(field, &pairs[i].0, &pairs[i].1) == Some(m),
        }
    });
    let mut alphas: Vec<F::Elem> = pairs.iter().map(|p| p.0.clone()).collect();
    let mut betas: Vec<F::Elem> = pairs.iter().map(|p| p.1.clone()).collect();
    let mut reordered = Vec::with_capacity(k);
    while !alphas.is_empty() {
        let best = (0..alphas.len())
            .flat_map(|i| (0..betas.len()).map(move |j| (i, j)))
            .filter_map(|(i, j)| bracket(field, &alphas[i], &betas[j]).map(|b| (b, i, j)))
            .min();
        let (i, j) = best.map_or((0, 0), |(_, i, j)| (i, j));
        reordered.push((alphas.remove(i), betas.remove(j)));
    }
    Renumeration { reordered, satisfied }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_weyl::gl2_irreducible_modp;
    use crate::scalars::GaloisField;
    use crate::yangian::EvalSpec;

    fn lmod(f: &GaloisField, a: i64, b: i64) -> YangianModule<GaloisField> {
        let m = gl2_irreducible_modp(&f.from_i64(a), &f.from_i64(b), f).unwrap();
        YangianModule::evaluation(&EvalSpec::plain(m)).unwrap()
    }

    #[test]
    fn singular_lines() {
        let f = GaloisField::prime(7).unwrap();
        let m = lmod(&f, 1, 0).tensor(&lmod(&f, 2, 0)).unwrap();
        assert_eq!(m.dim(), 6);
        assert_eq!(m.singular_space().len(), 1);
        assert!(m.is_irreducible());
        let (_, w) = lmod(&f, 3, 1).singular_and_weight().unwrap();
        let w = w.unwrap();
        assert_eq!(w.series[0].coeffs(), &[f.one(), f.from_i64(3)]);
        assert_eq!(w.series[1].coeffs(), &[f.one(), f.from_i64(1)]);
        let s = lmod(&f, 1, 0).direct_sum(&lmod(&f, 1, 0)).unwrap();
        assert_eq!(s.singular_space().len(), 2);
        assert!(!s.is_irreducible());
        assert!(s.singular_and_weight().unwrap().1.is_none());
    }

    #[test]
    fn renumeration_examples() {
        let f = GaloisField::prime(7).unwrap();
        let e = |a: i64, b: i64| (f.from_i64(a), f.from_i64(b));
        let r = renumeration_criterion(&f, &[e(1, 0), e(2, 0)]);
        assert!(r.satisfied);
        let r = renumeration_criterion(&f, &[e(2, 0), e(1, 0)]);
        assert!(!r.satisfied);
        assert_eq!(r.reordered, vec![e(1, 0), e(2, 0)]);
        let f49 = GaloisField::new(7, 2).unwrap();
        let x = f49.generator();
        let r = renumeration_criterion(&f49, &[(x.clone(), f49.zero()), (f49.add_int(&x, 3), f49.one())]);
        assert!(r.satisfied);
    }
}
