use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Argument(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let w = self.part(0) as usize;
        Partition((0..w).map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32).collect())
    }

    pub fn hook_product(&self) -> u64 {
        let c = self.conjugate();
        let mut h = 1u64;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = c.part(j) as usize - i - 1;
                h *= (arm + leg + 1) as u64;
            }
        }
        h
    }

    /// Number of standard tableaux, `n! / hook product`.
    pub fn num_standard_tableaux(&self) -> u64 {
        (1..=self.size() as u64).product::<u64>() / self.hook_product()
    }

    /// All partitions of `n`, reverse lexicographic.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        json!(self.0)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("partition must be an array, got {v}")))?;
        let parts = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|k| k as u32)
                    .ok_or_else(|| Error::Parse(format!("bad part {x}")))
            })
            .collect::<Result<_>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A pair of partitions `(λ•, λ∘)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bipartition {
    pub bullet: Partition,
    pub circ: Partition,
}

impl Bipartition {
    pub fn new(bullet: Partition, circ: Partition) -> Self {
        Bipartition { bullet, circ }
    }

    pub fn from_parts(bullet: &[u32], circ: &[u32]) -> Result<Self> {
        Ok(Bipartition {
            bullet: Partition::new(bullet.to_vec())?,
            circ: Partition::new(circ.to_vec())?,
        })
    }

    pub fn size(&self) -> usize {
        self.bullet.size() + self.circ.size()
    }

    pub fn len(&self) -> usize {
        self.bullet.len() + self.circ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bullet.is_empty() && self.circ.is_empty()
    }

    /// The `GL_n` weight `(λ•_1, ..., 0, ..., -λ∘_1)`.
    pub fn restrict(&self, n: usize) -> Result<Vec<i64>> {
        if n < self.len() {
            return Err(Error::Domain(format!(
                "restriction of {self} to rank {n} needs n >= {}",
                self.len()
            )));
        }
        Ok((0..n)
            .map(|i| self.bullet.part(i) as i64 - self.circ.part(n - 1 - i) as i64)
            .collect())
    }

    pub fn to_json(&self) -> Value {
        json!({"lambda_bullet": self.bullet.to_json(), "lambda_circ": self.circ.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| match v.get(k) {
            Some(x) => Partition::from_json(x),
            None => Ok(Partition::empty()),
        };
        if v.get("lambda_bullet").is_none() && v.get("lambda_circ").is_none() {
            return Err(Error::Parse(format!(
                "bipartition needs `lambda_bullet` or `lambda_circ`, got {v}"
            )));
        }
        Ok(Bipartition::new(get("lambda_bullet")?, get("lambda_circ")?))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.bullet, self.circ)
    }
}

/// The `n!` permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

/// Sign of a permutation given in one-line notation.
pub fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_examples() {
        let l = Bipartition::from_parts(&[2, 1], &[1]).unwrap();
        assert_eq!(l.restrict(5).unwrap(), vec![2, 1, 0, 0, -1]);
        assert_eq!(Bipartition::from_parts(&[1], &[]).unwrap().restrict(3).unwrap(), vec![1, 0, 0]);
        assert_eq!(Bipartition::from_parts(&[], &[1]).unwrap().restrict(2).unwrap(), vec![0, -1]);
        assert!(matches!(l.restrict(2), Err(Error::Domain(_))));
    }

    #[test]
    fn hooks_and_counts() {
        let l = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(l.hook_product(), 3);
        assert_eq!(l.num_standard_tableaux(), 2);
        assert_eq!(Partition::all_of_size(4).len(), 5);
        let total: u64 = Partition::all_of_size(5)
            .iter()
            .map(|p| p.num_standard_tableaux().pow(2))
            .sum();
        assert_eq!(total, 120);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(perm_sign(&[0, 1, 2]), 1);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(perm_sign(&[1, 2, 0]), 1);
    }
}
