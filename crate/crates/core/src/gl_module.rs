//! Finite-dimensional `gl_n`-modules given by generator matrices, and their
//! construction as truncated Verma quotients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{joint_kernel, Matrix, Span};
use crate::scalars::Field;

/// Default bound on module dimension.
pub const MODULE_DIM_LIMIT: u64 = 64;

/// A `gl_n`-module with matrices `E_ij` acting on column vectors.
///
/// Every basis vector carries the integer offset of its weight from the
/// highest weight; basis vector 0 is the highest weight vector.
#[derive(Clone, Debug, PartialEq)]
pub struct GlnModule<F: Field> {
    field: F,
    n: usize,
    e: Vec<Matrix<F>>,
    highest_weight: Vec<F::Elem>,
    offsets: Vec<Vec<i64>>,
}

/// Joint kernels of the raising operators, one entry per weight space.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularReport<F: Field> {
    pub spaces: Vec<SingularSpace<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpace<F: Field> {
    pub offset: Vec<i64>,
    pub weight: Vec<F::Elem>,
    pub basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> SingularReport<F> {
    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.basis.len()).sum()
    }

    pub fn offsets(&self) -> Vec<Vec<i64>> {
        self.spaces.iter().map(|s| s.offset.clone()).collect()
    }
}

impl<F: Field> GlnModule<F> {
    pub fn new(
        field: &F,
        n: usize,
        e: Vec<Matrix<F>>,
        highest_weight: Vec<F::Elem>,
        offsets: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let dim = offsets.len();
        if e.len() != n * n || highest_weight.len() != n {
            return Err(Error::Construction(format!("expected {} matrices and a length-{n} weight", n * n)));
        }
        if e.iter().any(|m| m.nrows() != dim || m.ncols() != dim) || offsets.iter().any(|o| o.len() != n) {
            return Err(Error::Construction("matrix or offset shape mismatch".into()));
        }
        Ok(GlnModule {
            field: field.clone(),
            n,
            e,
            highest_weight,
            offsets,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.offsets.len()
    }

    /// `E_ij`, 0-based.
    pub fn e(&self, i: usize, j: usize) -> &Matrix<F> {
        &self.e[i * self.n + j]
    }

    pub fn highest_weight(&self) -> &[F::Elem] {
        &self.highest_weight
    }

    pub fn offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    pub fn weight_of(&self, offset: &[i64]) -> Vec<F::Elem> {
        self.highest_weight
            .iter()
            .zip(offset)
            .map(|(x, &d)| self.field.add_int(x, d))
            .collect()
    }

    /// Basis indices grouped by weight offset.
    pub fn weight_spaces(&self) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let mut out: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, o) in self.offsets.iter().enumerate() {
            out.entry(o.clone()).or_default().push(i);
        }
        out
    }

    /// Index tuples `(i,j,k,l)` whose commutator relation fails, plus `(i,i,i,i)`
    /// for any `E_ii` disagreeing with the weight labels.
    pub fn relation_defects(&self) -> Result<Vec<(usize, usize, usize, usize)>> {
        let n = self.n;
        let mut bad = Vec::new();
        for (i, j, k, l) in (0..4).map(|_| 0..n).multi_cartesian_product().map(|v| (v[0], v[1], v[2], v[3])) {
            let lhs = self.e(i, j).commutator(self.e(k, l))?;
            let mut rhs = Matrix::zeros(&self.field, self.dim(), self.dim());
            if j == k {
                rhs = rhs.add(self.e(i, l))?;
            }
            if l == i {
                rhs = rhs.sub(self.e(k, j))?;
            }
            if lhs != rhs {
                bad.push((i, j, k, l));
            }
        }
        for a in 0..n {
            let diag = Matrix::from_triplets(
                &self.field,
                self.dim(),
                self.dim(),
                self.offsets
                    .iter()
                    .enumerate()
                    .map(|(v, o)| (v, v, self.field.add_int(&self.highest_weight[a], o[a]))),
            );
            if &diag != self.e(a, a) {
                bad.push((a, a, a, a));
            }
        }
        Ok(bad)
    }

    pub fn satisfies_relations(&self) -> Result<bool> {
        Ok(self.relation_defects()?.is_empty())
    }

    fn raising(&self) -> Vec<&Matrix<F>> {
        (0..self.n.saturating_sub(1)).map(|i| self.e(i, i + 1)).collect()
    }

    fn lowering(&self) -> Vec<&Matrix<F>> {
        (0..self.n)
            .flat_map(|a| (0..a).map(move |b| (a, b)))
            .map(|(a, b)| self.e(a, b))
            .collect()
    }

    pub fn singular_vectors(&self) -> SingularReport<F> {
        let raising = self.raising();
        let mut spaces = Vec::new();
        for (offset, idx) in self.weight_spaces() {
            let all: Vec<usize> = (0..self.dim()).collect();
            let subs: Vec<Matrix<F>> = raising.iter().map(|m| m.submatrix(&all, &idx)).collect();
            let refs: Vec<&Matrix<F>> = subs.iter().collect();
            let kernel = joint_kernel(&self.field, &refs, idx.len());
            if kernel.is_empty() {
                continue;
            }
            let basis = kernel
                .into_iter()
                .map(|k| {
                    let mut v = vec![self.field.zero(); self.dim()];
                    for (x, &i) in k.into_iter().zip(&idx) {
                        v[i] = x;
                    }
                    v
                })
                .collect();
            spaces.push(SingularSpace {
                weight: self.weight_of(&offset),
                offset,
                basis,
            });
        }
        SingularReport { spaces }
    }

    /// Dimension of the span of `v` under repeated lowering operators.
    pub fn lowering_closure_dim(&self, v: Vec<F::Elem>) -> usize {
        let lowering = self.lowering();
        let mut span = Span::new(&self.field, self.dim());
        let mut queue = Vec::new();
        if span.insert(v.clone()) {
            queue.push(v);
        }
        while let Some(w) = queue.pop() {
            for m in &lowering {
                let x = m.apply(&w);
                if span.insert(x.clone()) {
                    queue.push(x);
                }
            }
        }
        span.rank()
    }

    pub fn highest_vector(&self) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        if !v.is_empty() {
            v[0] = self.field.one();
        }
        v
    }

    /// Exactly one singular line, and it generates the module.
    pub fn is_irreducible(&self) -> bool {
        self.dim() > 0
            && self.singular_vectors().total_dim() == 1
            && self.lowering_closure_dim(self.highest_vector()) == self.dim()
    }

    pub fn to_json(&self) -> Value {
        let mut e = Map::new();
        for i in 0..self.n {
            for j in 0..self.n {
                e.insert(format!("{},{}", i + 1, j + 1), self.e(i, j).to_json());
            }
        }
        json!({
            "n": self.n,
            "dim": self.dim(),
            "field": self.field.tag().to_string(),
            "highest_weight": self.highest_weight.iter().map(|x| self.field.encode(x)).collect::<Vec<_>>(),
            "weight_offsets": self.offsets,
            "E": e,
        })
    }
}

type Mono = Vec<u8>;
type SparseVec<E> = BTreeMap<Mono, E>;

/// PBW straightening in the Verma module `M(λ)` over a field.
struct Verma<'a, F: Field> {
    field: &'a F,
    n: usize,
    lambda: Vec<F::Elem>,
    lowering: Vec<(usize, usize)>,
    id: HashMap<(usize, usize), u8>,
    memo: HashMap<(usize, usize, Mono), Vec<(Mono, F::Elem)>>,
}

impl<'a, F: Field> Verma<'a, F> {
    fn new(field: &'a F, lambda: &[i64]) -> Self {
        let n = lambda.len();
        let lowering: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..a).map(move |b| (a, b))).collect();
        let id = lowering.iter().enumerate().map(|(k, &g)| (g, k as u8)).collect();
        Verma {
            field,
            n,
            lambda: lambda.iter().map(|&x| field.from_i64(x)).collect(),
            lowering,
            id,
            memo: HashMap::new(),
        }
    }

    fn offset(&self, w: &[u8]) -> Vec<i64> {
        let mut o = vec![0; self.n];
        for &y in w {
            let (c, d) = self.lowering[y as usize];
            o[c] += 1;
            o[d] -= 1;
        }
        o
    }

    fn act(&mut self, a: usize, b: usize, w: &[u8]) -> Vec<(Mono, F::Elem)> {
        let key = (a, b, w.to_vec());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let f = self.field;
        let res = if a == b {
            let c = f.add_int(&self.lambda[a], self.offset(w)[a]);
            if f.is_zero(&c) {
                vec![]
            } else {
                vec![(w.to_vec(), c)]
            }
        } else if w.is_empty() {
            if a > b {
                vec![(vec![self.id[&(a, b)]], f.one())]
            } else {
                vec![]
            }
        } else if a > b && self.id[&(a, b)] <= w[0] {
            let mut m = vec![self.id[&(a, b)]];
            m.extend_from_slice(w);
            vec![(m, f.one())]
        } else {
            let (c, d) = self.lowering[w[0] as usize];
            let rest = &w[1..];
            let mut out: SparseVec<F::Elem> = BTreeMap::new();
            for (m, x) in self.act(a, b, rest) {
                for (m2, z) in self.act(c, d, &m) {
                    accumulate(f, &mut out, m2, &f.mul(&x, &z));
                }
            }
            if b == c {
                for (m, x) in self.act(a, d, rest) {
                    accumulate(f, &mut out, m, &x);
                }
            }
            if d == a {
                for (m, x) in self.act(c, b, rest) {
                    accumulate(f, &mut out, m, &f.neg(&x));
                }
            }
            out.into_iter().collect()
        };
        self.memo.insert(key, res.clone());
        res
    }

    fn act_vec(&mut self, a: usize, b: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = self.field;
        let mut out = BTreeMap::new();
        for (m, x) in v {
            for (m2, z) in self.act(a, b, m) {
                accumulate(f, &mut out, m2, &f.mul(x, &z));
            }
        }
        out
    }

    /// PBW monomials whose weight lies `coeffs` simple roots below `λ`.
    fn monomials(&self, coeffs: &[i64]) -> Vec<Mono> {
        fn rec(gens: &[(usize, usize)], k: usize, rem: &mut Vec<i64>, cur: &mut Mono, out: &mut Vec<Mono>) {
            if rem.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            if k == gens.len() {
                return;
            }
            rec(gens, k + 1, rem, cur, out);
            let (a, b) = gens[k];
            let mut count = 0;
            while (b..a).all(|i| rem[i] > 0) {
                for c in rem[b..a].iter_mut() {
                    *c -= 1;
                }
                cur.push(k as u8);
                count += 1;
                rec(gens, k + 1, rem, cur, out);
            }
            for c in rem[b..a].iter_mut() {
                *c += count;
            }
            cur.truncate(cur.len() - count as usize);
        }
        let mut out = Vec::new();
        if coeffs.iter().any(|&c| c < 0) {
            return out;
        }
        rec(&self.lowering, 0, &mut coeffs.to_vec(), &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

fn accumulate<F: Field>(f: &F, out: &mut SparseVec<F::Elem>, m: Mono, x: &F::Elem) {
    match out.entry(m) {
        Entry::Occupied(mut o) => {
            let s = f.add(o.get(), x);
            if f.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
        Entry::Vacant(v) => {
            if !f.is_zero(x) {
                v.insert(x.clone());
            }
        }
    }
}

/// The `gl_2`-module with basis `f^k v`, `0 <= k <= l`, and highest weight
/// `(α, β)`, where `l = α - β` when this is a nonnegative integer (its least
/// representative in characteristic `p`) and `l = p - 1` otherwise.
pub fn gl2_module<F: Field>(field: &F, alpha: &F::Elem, beta: &F::Elem) -> Result<GlnModule<F>> {
    let p = field.characteristic();
    let l = match field.integer_gap(beta, alpha) {
        Some(d) if d >= 0 => d as u64,
        _ if p > 0 => p - 1,
        _ => {
            return Err(Error::Domain(format!(
                "α - β = {} is not a nonnegative integer",
                field.format(&field.sub(alpha, beta))
            )))
        }
    };
    if l + 1 > MODULE_DIM_LIMIT {
        return Err(Error::size("module dimension", l + 1, MODULE_DIM_LIMIT));
    }
    let dim = l as usize + 1;
    let d = field.sub(alpha, beta);
    let mut e = vec![Matrix::zeros(field, dim, dim); 4];
    for k in 0..dim {
        let ki = k as i64;
        e[0].set(k, k, &field.add_int(alpha, -ki));
        e[3].set(k, k, &field.add_int(beta, ki));
        if k + 1 < dim {
            e[2].set(k + 1, k, &field.one());
        }
        if k > 0 {
            let c = field.mul(&field.from_i64(ki), &field.add_int(&d, 1 - ki));
            e[1].set(k - 1, k, &c);
        }
    }
    let offsets = (0..dim as i64).map(|k| vec![-k, k]).collect();
    GlnModule::new(field, 2, e, vec![alpha.clone(), beta.clone()], offsets)
}

/// Simple-root coefficients of `λ - μ`, i.e. partial sums of the difference.
pub fn root_coefficients(lambda: &[i64], mu: &[i64]) -> Vec<i64> {
    let mut acc = 0;
    (0..lambda.len().saturating_sub(1))
        .map(|i| {
            acc += lambda[i] - mu[i];
            acc
        })
        .collect()
}

/// Weights of the characteristic-zero irreducible of highest weight `λ`:
/// those whose dominant rearrangement is dominated by `λ`.
pub fn dominated_weights(lambda: &[i64]) -> Vec<Vec<i64>> {
    let n = lambda.len();
    if n == 0 {
        return vec![vec![]];
    }
    let (lo, hi) = (lambda[n - 1], lambda[0]);
    let total: i64 = lambda.iter().sum();
    let mut out = Vec::new();
    for mu in (0..n).map(|_| lo..=hi).multi_cartesian_product() {
        if mu.iter().sum::<i64>() != total {
            continue;
        }
        let mut s = mu.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        if root_coefficients(lambda, &s).iter().all(|&c| c >= 0) {
            out.push(mu);
        }
    }
    out.sort_by_key(|mu| (root_coefficients(lambda, mu).iter().sum::<i64>(), std::cmp::Reverse(mu.clone())));
    out
}

struct WeightSpace<F: Field> {
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    quotient: Vec<usize>,
    relations: Span<F>,
}

/// The quotient of `M(λ)` by the submodule generated by `f_i^{λ_i - λ_{i+1} + 1} v`,
/// restricted to the weights of the characteristic-zero irreducible.
///
/// Fails with `TruncationExceeded` if some generator maps a quotient vector
/// to a weight outside that set with a nonzero image.
pub fn verma_quotient<F: Field>(field: &F, lambda: &[i64]) -> Result<GlnModule<F>> {
    let n = lambda.len();
    if n == 0 || n > 3 {
        return Err(Error::Argument(format!("rank {n} not supported (need 1..=3)")));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Argument(format!("weight {lambda:?} is not dominant")));
    }
    let mut verma = Verma::new(field, lambda);
    let singular: Vec<(Vec<i64>, SparseVec<F::Elem>)> = (0..n - 1)
        .map(|i| {
            let k = (lambda[i] - lambda[i + 1] + 1) as usize;
            let mono = vec![verma.id[&(i + 1, i)]; k];
            let mut coeffs = vec![0; n - 1];
            coeffs[i] = k as i64;
            (coeffs, BTreeMap::from([(mono, field.one())]))
        })
        .collect();

    let space = |verma: &mut Verma<F>, mu: &[i64]| -> WeightSpace<F> {
        let coeffs = root_coefficients(lambda, mu);
        let monos = verma.monomials(&coeffs);
        let index: HashMap<Mono, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Span::new(field, monos.len());
        for (sc, s) in &singular {
            let rest: Vec<i64> = coeffs.iter().zip(sc).map(|(a, b)| a - b).collect();
            for y in verma.monomials(&rest) {
                let mut v = s.clone();
                for &letter in y.iter().rev() {
                    let (a, b) = verma.lowering[letter as usize];
                    v = verma.act_vec(a, b, &v);
                }
                span.insert(dense(field, &v, &index));
            }
        }
        let pivots: Vec<usize> = span.pivots().collect();
        let quotient = (0..monos.len()).filter(|i| !pivots.contains(i)).collect();
        WeightSpace {
            monos,
            index,
            quotient,
            relations: span,
        }
    };

    let weights = dominated_weights(lambda);
    let mut spaces: BTreeMap<Vec<i64>, WeightSpace<F>> = BTreeMap::new();
    for mu in &weights {
        spaces.insert(mu.clone(), space(&mut verma, mu));
    }
    let mut basis: Vec<(Vec<i64>, usize)> = Vec::new();
    let mut global: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
    for mu in &weights {
        for &q in &spaces[mu].quotient {
            global.insert((mu.clone(), q), basis.len());
            basis.push((mu.clone(), q));
        }
    }
    let dim = basis.len();
    let mut triplets: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new(); n * n];
    let mut outside: HashMap<Vec<i64>, WeightSpace<F>> = HashMap::new();
    for (col, (mu, q)) in basis.iter().enumerate() {
        let mono = spaces[mu].monos[*q].clone();
        for a in 0..n {
            for b in 0..n {
                let image = verma.act(a, b, &mono);
                if image.is_empty() {
                    continue;
                }
                let mut target = mu.clone();
                target[a] += 1;
                target[b] -= 1;
                let v: SparseVec<F::Elem> = image.into_iter().collect();
                if let Some(ws) = spaces.get(&target) {
                    let r = ws.relations.reduce(&dense(field, &v, &ws.index));
                    for &p in &ws.quotient {
                        if !field.is_zero(&r[p]) {
                            triplets[a * n + b].push((global[&(target.clone(), p)], col, r[p].clone()));
                        }
                    }
                } else {
                    let ws = outside.entry(target.clone()).or_insert_with(|| space(&mut verma, &target));
                    let r = ws.relations.reduce(&dense(field, &v, &ws.index));
                    if r.iter().any(|x| !field.is_zero(x)) {
                        return Err(Error::TruncationExceeded(format!(
                            "E_{}{} maps weight {mu:?} to {target:?} outside the truncation",
                            a + 1,
                            b + 1
                        )));
                    }
                }
            }
        }
    }
    let e = triplets
        .into_iter()
        .map(|t| Matrix::from_triplets(field, dim, dim, t))
        .collect();
    let offsets = basis
        .iter()
        .map(|(mu, _)| mu.iter().zip(lambda).map(|(m, l)| m - l).collect())
        .collect();
    GlnModule::new(field, n, e, lambda.iter().map(|&x| field.from_i64(x)).collect(), offsets)
}

fn dense<F: Field>(field: &F, v: &SparseVec<F::Elem>, index: &HashMap<Mono, usize>) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); index.len()];
    for (m, x) in v {
        out[index[m]] = x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaloisField, Rationals};

    #[test]
    fn dominated_weight_sets() {
        assert_eq!(dominated_weights(&[1, 0]), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(dominated_weights(&[1, 0, -1]).len(), 7);
        assert_eq!(dominated_weights(&[2, 0]).len(), 3);
    }

    #[test]
    fn small_quotients() {
        let m = verma_quotient(&Rationals, &[2, 0]).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(m.satisfies_relations().unwrap());
        let m = verma_quotient(&Rationals, &[2, 1, 0]).unwrap();
        assert_eq!(m.dim(), 8);
        assert!(m.satisfies_relations().unwrap());
        assert!(m.is_irreducible());
        let m = verma_quotient(&Rationals, &[1, 1]).unwrap();
        assert_eq!(m.dim(), 1);
    }

    #[test]
    fn reducible_in_small_characteristic() {
        let f = GaloisField::prime(5).unwrap();
        let m = verma_quotient(&f, &[5, 0]).unwrap();
        assert_eq!(m.dim(), 6);
        assert!(m.satisfies_relations().unwrap());
        assert!(!m.is_irreducible());
        assert_eq!(m.singular_vectors().offsets(), vec![vec![-5, 5], vec![-1, 1], vec![0, 0]]);
    }
}
