//! Walled Brauer algebras `End((r,s))`: trace forms, Young symmetrizers and
//! dimension polynomials of simple objects.

use itertools::Itertools;
use serde_json::{json, Value};

use crate::diagram::{enumerate_matchings, DiagramLC, Matching, ObjectWord};
use crate::error::{Error, Result};
use crate::gln_oracle::weyl_dim;
use crate::partition::{perm_sign, Bipartition, Partition};
use crate::scalars::{lagrange_interpolate, IntegerRootReport, QPoly, Rational};

pub const GRAM_BASIS_LIMIT: u64 = 24;
pub const YOUNG_SIZE_LIMIT: usize = 5;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Trace form `(b_i, b_j) = tr(b_i ∘ b_j)` on the matching basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub basis: Vec<Matching>,
    pub entries: Vec<Vec<QPoly>>,
}

pub fn gram_matrix(r: usize, s: usize, limit: u64) -> Result<GramMatrix> {
    let dim = factorial(r + s);
    if dim > limit {
        return Err(Error::size("walled Brauer dimension", dim, limit));
    }
    let obj = ObjectWord::new(r, s);
    let basis = enumerate_matchings(obj, obj);
    let mut entries = vec![vec![QPoly::zero(); basis.len()]; basis.len()];
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate().skip(i) {
            let (m, loops) = bi.compose_with(bj)?;
            let tr = QPoly::t_pow(loops + m.closure_loops()?);
            entries[i][j] = tr.clone();
            entries[j][i] = tr;
        }
    }
    Ok(GramMatrix { basis, entries })
}

/// Fraction-free (Bareiss) determinant over `Q[t]`.
pub fn determinant(m: &[Vec<QPoly>]) -> QPoly {
    let n = m.len();
    if n == 0 {
        return QPoly::one();
    }
    let mut a = m.to_vec();
    let mut prev = QPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return QPoly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

pub fn gram_determinant(r: usize, s: usize, limit: u64) -> Result<QPoly> {
    Ok(determinant(&gram_matrix(r, s, limit)?.entries))
}

/// Outcome of checking that the Gram determinant vanishes only at integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessVerdict {
    /// Every root is an integer.
    Integral,
    /// Some root could not be shown to be an integer.
    WitnessFailure,
}

#[derive(Clone, Debug)]
pub struct SemisimplicityWitness {
    pub r: usize,
    pub s: usize,
    pub determinant: QPoly,
    pub roots: IntegerRootReport,
    pub verdict: WitnessVerdict,
}

pub fn semisimplicity_witness(r: usize, s: usize, limit: u64) -> Result<SemisimplicityWitness> {
    let determinant = gram_determinant(r, s, limit)?;
    let roots = determinant.integer_roots();
    let verdict = if !determinant.is_zero() && roots.all_integer() {
        WitnessVerdict::Integral
    } else {
        WitnessVerdict::WitnessFailure
    };
    Ok(SemisimplicityWitness {
        r,
        s,
        determinant,
        roots,
        verdict,
    })
}

impl SemisimplicityWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "s": self.s,
            "det": self.determinant.to_json(),
            "det_string": self.determinant.to_string(),
            "factored": self.determinant.factored_string(),
            "integer_roots": self.roots.roots.iter().map(|(x, k)| json!([x, k])).collect::<Vec<_>>(),
            "verdict": match self.verdict {
                WitnessVerdict::Integral => "integral_roots",
                WitnessVerdict::WitnessFailure => "witness_failure",
            },
        })
    }
}

/// Permutations of `0..n` preserving each block of consecutive positions.
fn block_group(blocks: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    for b in blocks {
        let mut next = Vec::new();
        for p in &out {
            for img in b.iter().copied().permutations(b.len()) {
                let mut q = p.clone();
                for (&src, &dst) in b.iter().zip(&img) {
                    q[src] = dst;
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Rows and columns of the row-filled tableau of shape `λ`.
fn canonical_tableau(lambda: &Partition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut rows = Vec::new();
    let mut next = 0;
    for &len in lambda.parts() {
        rows.push((next..next + len as usize).collect::<Vec<_>>());
        next += len as usize;
    }
    let width = lambda.part(0) as usize;
    let cols = (0..width)
        .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
        .collect();
    (rows, cols)
}

/// `(sum of row permutations) ∘ (signed sum of column permutations)` in `End((|λ|,0))`.
pub fn young_symmetrizer(lambda: &Partition) -> Result<DiagramLC> {
    let n = lambda.size();
    if n > YOUNG_SIZE_LIMIT {
        return Err(Error::size("partition size", n as u64, YOUNG_SIZE_LIMIT as u64));
    }
    let (rows, cols) = canonical_tableau(lambda);
    let obj = ObjectWord::new(n, 0);
    let mut a = DiagramLC::zero(obj, obj);
    for p in block_group(&rows, n) {
        a = a.add(&DiagramLC::basis(Matching::permutation(&p)))?;
    }
    let mut b = DiagramLC::zero(obj, obj);
    for q in block_group(&cols, n) {
        let sgn = QPoly::from_int(perm_sign(&q));
        b = b.add(&DiagramLC::term(Matching::permutation(&q), sgn))?;
    }
    a.compose(&b)
}

/// `tr(c_λ) / h_λ` with `h_λ` the hook product.
pub fn young_symmetrizer_dimension(lambda: &Partition) -> Result<QPoly> {
    let c = young_symmetrizer(lambda)?;
    let h = Rational::from_integer(lambda.hook_product().into());
    Ok(c.closure_trace()?.scale(&h.recip()))
}

pub fn interpolation_start(lambda: &Bipartition) -> usize {
    lambda.size() + lambda.len() + 1
}

/// Interpolates `n -> dim V(λ|_n)` through `|λ| + 1` Weyl dimensions.
pub fn dimension_poly_interpolated(lambda: &Bipartition, limit: usize) -> Result<QPoly> {
    let k = lambda.size();
    if k > limit {
        return Err(Error::size("bipartition size", k as u64, limit as u64));
    }
    let n0 = interpolation_start(lambda);
    let points = (n0..=n0 + k)
        .map(|n| {
            let d = weyl_dim(&lambda.restrict(n)?)?;
            Ok((
                Rational::from_integer((n as i64).into()),
                Rational::from_integer(d.into()),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    lagrange_interpolate(&points)
}

/// Checks `c ∘ c = h c` for the Young symmetrizer of `λ`.
pub fn symmetrizer_is_quasi_idempotent(lambda: &Partition) -> Result<bool> {
    let c = young_symmetrizer(lambda)?;
    let h = QPoly::from_int(lambda.hook_product() as i64);
    Ok(c.compose(&c)? == c.scale(&h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram_determinant(1, 0, 24).unwrap(), QPoly::t_pow(1));
        assert_eq!(gram_determinant(1, 1, 24).unwrap(), QPoly::from_ints(&[0, 0, -1, 0, 1]));
        assert_eq!(gram_determinant(0, 0, 24).unwrap(), QPoly::one());
        assert!(matches!(gram_determinant(3, 2, 24), Err(Error::Size { .. })));
        let g = gram_matrix(1, 1, 24).unwrap();
        assert_eq!(g.entries[0][1], QPoly::t_pow(1));
    }

    #[test]
    fn young_examples() {
        assert_eq!(young_symmetrizer_dimension(&part(&[1])).unwrap(), QPoly::t_pow(1));
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(
            young_symmetrizer_dimension(&part(&[2])).unwrap(),
            QPoly::new(vec![Rational::zero(), half.clone(), half.clone()])
        );
        assert_eq!(
            young_symmetrizer_dimension(&part(&[1, 1])).unwrap(),
            QPoly::new(vec![Rational::zero(), -half.clone(), half])
        );
        assert!(symmetrizer_is_quasi_idempotent(&part(&[2, 1])).unwrap());
    }

    #[test]
    fn interpolation_examples() {
        let b = |x: &[u32], y: &[u32]| Bipartition::from_parts(x, y).unwrap();
        assert_eq!(dimension_poly_interpolated(&b(&[1], &[]), 5).unwrap(), QPoly::t_pow(1));
        assert_eq!(
            dimension_poly_interpolated(&b(&[1], &[1]), 5).unwrap(),
            QPoly::from_ints(&[-1, 0, 1])
        );
        assert_eq!(
            dimension_poly_interpolated(&b(&[2], &[]), 5).unwrap(),
            young_symmetrizer_dimension(&part(&[2])).unwrap()
        );
    }
}
