//! Exact linear algebra over a [`Field`]: sparse-row matrices for module
//! actions and dense Gaussian elimination for kernels and spans.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalars::Field;

/// Sparse matrix, rows stored as column-sorted `(col, value)` lists without zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field: field.clone(),
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &F, n: usize, c: &F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        if !field.is_zero(c) {
            for i in 0..n {
                m.rows[i].push((i, c.clone()));
            }
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets(
        field: &F,
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Self {
        let mut m = Self::zeros(field, nrows, ncols);
        for (i, j, v) in entries {
            m.add_at(i, j, &v);
        }
        m
    }

    pub fn from_dense(field: &F, rows: &[Vec<F::Elem>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            m.rows[i] = r
                .iter()
                .enumerate()
                .filter(|(_, x)| !field.is_zero(x))
                .map(|(j, x)| (j, x.clone()))
                .collect();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, F::Elem)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &F::Elem) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        let f = &self.field;
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                let s = f.add(&row[k].1, v);
                if f.is_zero(&s) {
                    row.remove(k);
                } else {
                    row[k].1 = s;
                }
            }
            Err(k) => {
                if !f.is_zero(v) {
                    row.insert(k, (j, v.clone()));
                }
            }
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: &F::Elem) {
        let cur = self.get(i, j);
        let d = self.field.sub(v, &cur);
        self.add_at(i, j, &d);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut d = vec![vec![self.field.zero(); self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, o.field)));
        }
        if (self.nrows, self.ncols) != (o.nrows, o.ncols) {
            return Err(Error::Argument(format!(
                "shape {}x{} vs {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| merge_rows(f, a, b, false))
            .collect();
        Ok(Matrix { rows, ..self.clone_shape() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| merge_rows(f, a, b, true))
            .collect();
        Ok(Matrix { rows, ..self.clone_shape() })
    }

    fn clone_shape(&self) -> Self {
        Matrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            rows: Vec::new(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zeros(f, self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, f.mul(v, c))).collect())
            .collect();
        Matrix { rows, ..self.clone_shape() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, o.field)));
        }
        if self.ncols != o.nrows {
            return Err(Error::Argument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        let f = &self.field;
        let mut acc: Vec<Option<F::Elem>> = vec![None; o.ncols];
        let mut touched = Vec::new();
        let mut rows = Vec::with_capacity(self.nrows);
        for r in &self.rows {
            for (k, a) in r {
                for (j, b) in &o.rows[*k] {
                    let p = f.mul(a, b);
                    match &mut acc[*j] {
                        Some(x) => *x = f.add(x, &p),
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = acc[j].take().unwrap();
                if !f.is_zero(&v) {
                    out.push((j, v));
                }
            }
            touched.clear();
            rows.push(out);
        }
        Ok(Matrix {
            field: f.clone(),
            nrows: self.nrows,
            ncols: o.ncols,
            rows,
        })
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Kronecker product; basis index of `e_a (x) e_b` is `a * o.dim + b`.
    pub fn kron(&self, o: &Self) -> Self {
        let f = &self.field;
        let mut m = Self::zeros(f, self.nrows * o.nrows, self.ncols * o.ncols);
        for (i, ra) in self.rows.iter().enumerate() {
            for (k, rb) in o.rows.iter().enumerate() {
                let row = &mut m.rows[i * o.nrows + k];
                for (j, a) in ra {
                    for (l, b) in rb {
                        row.push((j * o.ncols + l, f.mul(a, b)));
                    }
                }
            }
        }
        m
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.nrows + o.nrows, self.ncols + o.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            m.rows[i] = r.clone();
        }
        for (i, r) in o.rows.iter().enumerate() {
            m.rows[self.nrows + i] = r.iter().map(|(j, v)| (j + self.ncols, v.clone())).collect();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.ncols, self.nrows);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                t.rows[*j].push((i, v.clone()));
            }
        }
        t
    }

    /// `Some(c)` when the matrix is `c` times the identity.
    pub fn scalar_value(&self) -> Option<F::Elem> {
        if self.nrows != self.ncols {
            return None;
        }
        if self.nrows == 0 {
            return Some(self.field.zero());
        }
        let c = self.get(0, 0);
        let ok = self.rows.iter().enumerate().all(|(i, r)| {
            if self.field.is_zero(&c) {
                r.is_empty()
            } else {
                r.len() == 1 && r[0].0 == i && r[0].1 == c
            }
        });
        ok.then_some(c)
    }

    /// `M v` for a column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .fold(f.zero(), |acc, (j, a)| f.add(&acc, &f.mul(a, &v[*j])))
            })
            .collect()
    }

    /// Restriction to the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let mut m = Self::zeros(&self.field, rows.len(), cols.len());
        for (k, &i) in rows.iter().enumerate() {
            m.rows[k] = self.rows[i]
                .iter()
                .filter(|(j, _)| pos[*j] != usize::MAX)
                .map(|(j, v)| (pos[*j], v.clone()))
                .collect();
            m.rows[k].sort_by_key(|e| e.0);
        }
        m
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.to_dense()
                .iter()
                .map(|r| Value::Array(r.iter().map(|x| self.field.encode(x)).collect()))
                .collect(),
        )
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(|x| field.decode(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let w = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != w) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        Ok(Self::from_dense(field, &rows))
    }
}

fn merge_rows<F: Field>(
    f: &F,
    a: &[(usize, F::Elem)],
    b: &[(usize, F::Elem)],
    negate_b: bool,
) -> Vec<(usize, F::Elem)> {
    let nb = |x: &F::Elem| if negate_b { f.neg(x) } else { x.clone() };
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, nb(&b[j].1)));
            j += 1;
        } else {
            let s = f.add(&a[i].1, &nb(&b[j].1));
            if !f.is_zero(&s) {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(fm, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for r in self.to_dense() {
            let s: Vec<String> = r.iter().map(|x| self.field.format(x)).collect();
            writeln!(fm, "  {}", s.join(" "))?;
        }
        write!(fm, "]")
    }
}

/// Row-reduces in place to reduced echelon form; returns pivot columns.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.sub(x, &field.mul(&k, y));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : M x = 0}` for a dense `M` with `ncols` columns.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Kernel of a vertical stack of sparse matrices with a common column count.
pub fn joint_kernel<F: Field>(field: &F, mats: &[&Matrix<F>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut span = Span::new(field, ncols);
    for m in mats {
        for i in 0..m.nrows() {
            if m.row(i).is_empty() {
                continue;
            }
            let mut v = vec![field.zero(); ncols];
            for (j, x) in m.row(i) {
                v[*j] = x.clone();
            }
            span.insert(v);
        }
    }
    span.orthogonal_kernel()
}

/// Incrementally maintained subspace in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Span<F: Field> {
    field: F,
    dim: usize,
    basis: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Span<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        Span {
            field: field.clone(),
            dim: ambient,
            basis: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|(p, _)| *p)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<F::Elem>> {
        self.basis.iter().map(|(_, v)| v)
    }

    /// Residual of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, b) in &self.basis {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let k = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).unwrap();
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, b) in self.basis.iter_mut() {
            if f.is_zero(&b[p]) {
                continue;
            }
            let k = b[p].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        self.basis.push((p, r));
        true
    }

    /// Basis of the vectors `x` with `b . x = 0` for every basis vector `b`.
    pub fn orthogonal_kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut is_pivot = vec![false; self.dim];
        for (p, _) in &self.basis {
            is_pivot[*p] = true;
        }
        (0..self.dim)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.dim];
                v[free] = f.one();
                for (p, b) in &self.basis {
                    v[*p] = f.neg(&b[free]);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaloisField, Rational, Rationals};

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rationals> {
        let d: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&k| q(k)).collect()).collect();
        Matrix::from_dense(&Rationals, &d)
    }

    #[test]
    fn products_and_commutators() {
        let e12 = m(&[&[0, 1], &[0, 0]]);
        let e21 = m(&[&[0, 0], &[1, 0]]);
        let h = m(&[&[1, 0], &[0, -1]]);
        assert_eq!(e12.commutator(&e21).unwrap(), h);
        assert_eq!(h.commutator(&e12).unwrap(), e12.scale(&q(2)));
        assert!(e12.mul(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn kron_ordering() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(&Rationals, 2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), q(3));
        assert_eq!(k.get(1, 3), q(2));
        assert_eq!(k.nnz(), 8);
        let left = a.kron(&i).mul(&i.kron(&a)).unwrap();
        assert_eq!(left, a.kron(&a));
    }

    #[test]
    fn kernels_over_small_field() {
        let f = GaloisField::prime(3).unwrap();
        let rows = vec![vec![f.one(), f.one(), f.one()]];
        let ker = nullspace(&f, &rows, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let s = v.iter().fold(f.zero(), |a, b| f.add(&a, b));
            assert!(f.is_zero(&s));
        }
        let a = Matrix::from_dense(&f, &rows);
        assert_eq!(joint_kernel(&f, &[&a, &a], 3).len(), 2);
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new(&Rationals, 3);
        assert!(s.insert(vec![q(1), q(2), q(0)]));
        assert!(s.insert(vec![q(0), q(1), q(1)]));
        assert!(!s.insert(vec![q(1), q(3), q(1)]));
        assert!(s.contains(&[q(2), q(5), q(1)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.orthogonal_kernel().len(), 1);
        assert_eq!(rank(&Rationals, &[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(Matrix::scalar(&Rationals, 3, &q(5)).scalar_value(), Some(q(5)));
        assert_eq!(m(&[&[1, 0], &[0, 2]]).scalar_value(), None);
        assert_eq!(Matrix::zeros(&Rationals, 2, 2).scalar_value(), Some(q(0)));
    }
}
