//! Modules in positive characteristic: `gl_2` modules `L(α, β)`, truncated
//! Weyl modules for `n ≤ 3`, the linkage condition and parameter scans.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gl_module::{gl2_module, verma_quotient, GlnModule};
use crate::gln_oracle::weyl_dim;
use crate::partition::permutations;
use crate::scalars::{bracket_lift, Field, GaloisField, GfElem};

pub type ModpModule = GlnModule<GaloisField>;

fn require_odd(p: u64) -> Result<()> {
    if p % 2 == 0 {
        return Err(Error::Argument(format!("odd characteristic required, got {p}")));
    }
    Ok(())
}

/// `l` in the basis `f^k v, k = 0..=l` of `L(α, β)`.
pub fn gl2_top_degree(field: &GaloisField, alpha: &GfElem, beta: &GfElem) -> u64 {
    let d = field.sub(alpha, beta);
    bracket_lift(field, &d).unwrap_or(field.p() - 1)
}

/// The `gl_2`-module with basis `f^k v` and highest weight `(α, β)`.
pub fn gl2_irreducible_modp(alpha: &GfElem, beta: &GfElem, field: &GaloisField) -> Result<ModpModule> {
    require_odd(field.p())?;
    gl2_module(field, alpha, beta)
}

/// `V(λ, p)` over `F_p`: the Verma quotient truncated to the characteristic-zero weights.
pub fn weyl_module_modp(lambda: &[i64], p: u64, limit: u64) -> Result<ModpModule> {
    require_odd(p)?;
    weyl_module_over(&GaloisField::prime(p)?, lambda, limit)
}

pub fn weyl_module_over(field: &GaloisField, lambda: &[i64], limit: u64) -> Result<ModpModule> {
    let d = weyl_dim(lambda)?;
    if d > limit {
        return Err(Error::size("module dimension", d, limit));
    }
    verma_quotient(field, lambda)
}

/// Whether `w(λ + ρ) ≡ μ + ρ (mod p)` for some permutation `w`, with
/// `ρ = (n-1, ..., 0)`. `p = 0` asks for exact equality.
pub fn linkage_condition(lambda: &[i64], mu: &[i64], p: u64) -> bool {
    let n = lambda.len();
    if mu.len() != n {
        return false;
    }
    let shift = |v: &[i64]| -> Vec<i64> {
        v.iter()
            .enumerate()
            .map(|(i, &x)| {
                let y = x + (n - 1 - i) as i64;
                if p == 0 {
                    y
                } else {
                    y.rem_euclid(p as i64)
                }
            })
            .collect()
    };
    let (a, b) = (shift(lambda), shift(mu));
    permutations(n).iter().any(|w| (0..n).all(|i| a[w[i]] == b[i]))
}

/// Integer weights of the singular lines of a module with integral highest weight.
pub fn singular_weights(module: &ModpModule, lambda: &[i64]) -> Vec<Vec<i64>> {
    module
        .singular_vectors()
        .spaces
        .iter()
        .map(|s| lambda.iter().zip(&s.offset).map(|(l, o)| l + o).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub lambda: Vec<i64>,
    pub p: u64,
    /// `None` when the truncation leaked.
    pub irreducible: Option<bool>,
    pub bound_satisfied: bool,
    pub singular_weights: Vec<Vec<i64>>,
    /// Every singular weight other than `λ` is linked to `λ`.
    pub linkage_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub n: usize,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    /// Rows above the bound that are not irreducible.
    pub fn violations(&self) -> Vec<&ScanRow> {
        self.rows
            .iter()
            .filter(|r| r.bound_satisfied && r.irreducible != Some(true))
            .collect()
    }

    pub fn reducible_below_bound(&self) -> Vec<&ScanRow> {
        self.rows
            .iter()
            .filter(|r| !r.bound_satisfied && r.irreducible == Some(false))
            .collect()
    }

    pub fn linkage_failures(&self) -> Vec<&ScanRow> {
        self.rows
            .iter()
            .filter(|r| r.irreducible == Some(false) && !r.linkage_ok)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    json!({
                        "lambda": r.lambda,
                        "p": r.p,
                        "irreducible": r.irreducible,
                        "outcome": match r.irreducible {
                            Some(true) => "irreducible",
                            Some(false) => "reducible",
                            None => "truncation_exceeded",
                        },
                        "bound_satisfied": r.bound_satisfied,
                        "singular_weights": r.singular_weights,
                        "linkage_ok": r.linkage_ok,
                    })
                })
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(";");
        let mut out = String::from("lambda,p,irreducible,bound_satisfied,singular_weights,linkage_ok\n");
        for r in &self.rows {
            let irr = match r.irreducible {
                Some(b) => b.to_string(),
                None => "truncation_exceeded".into(),
            };
            let sw: Vec<String> = r.singular_weights.iter().map(|w| join(w)).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                join(&r.lambda),
                r.p,
                irr,
                r.bound_satisfied,
                sw.join("|"),
                r.linkage_ok
            ));
        }
        out
    }
}

/// Dominant weights with last entry 0 and `λ_1 ≤ max_spread`.
pub fn scan_weights(n: usize, max_spread: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n - 1 {
            let mut w = cur.clone();
            w.push(0);
            out.push(w);
            return;
        }
        for x in 0..=hi {
            cur.push(x);
            rec(n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        rec(n, max_spread, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

pub fn scan_cell(lambda: &[i64], p: u64, limit: u64) -> Result<ScanRow> {
    let n = lambda.len();
    let bound_satisfied = p as i64 > lambda[0] - lambda[n - 1] + n as i64;
    let (irreducible, singular) = match weyl_module_modp(lambda, p, limit) {
        Ok(m) => (Some(m.is_irreducible()), singular_weights(&m, lambda)),
        Err(Error::TruncationExceeded(_)) => (None, Vec::new()),
        Err(e) => return Err(e),
    };
    let linkage_ok = singular
        .iter()
        .filter(|mu| mu.as_slice() != lambda)
        .all(|mu| linkage_condition(lambda, mu, p));
    Ok(ScanRow {
        lambda: lambda.to_vec(),
        p,
        irreducible,
        bound_satisfied,
        singular_weights: singular,
        linkage_ok,
    })
}

/// Scans every `(λ, p)` with `λ` from [`scan_weights`] and `p` from `primes`.
pub fn bound_scan(n: usize, max_spread: i64, primes: &[u64], limit: u64) -> Result<ScanReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::Argument(format!("rank {n} not supported (need 2 or 3)")));
    }
    let mut rows = Vec::new();
    for lambda in scan_weights(n, max_spread) {
        for &p in primes {
            rows.push(scan_cell(&lambda, p, limit)?);
        }
    }
    Ok(ScanReport { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_dimensions() {
        let f = GaloisField::prime(7).unwrap();
        let m = gl2_irreducible_modp(&f.from_i64(3), &f.from_i64(0), &f).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(m.satisfies_relations().unwrap());
        assert!(m.is_irreducible());
        let f49 = GaloisField::new(7, 2).unwrap();
        let m = gl2_irreducible_modp(&f49.generator(), &f49.zero(), &f49).unwrap();
        assert_eq!(m.dim(), 7);
        assert!(m.satisfies_relations().unwrap());
        let m = gl2_irreducible_modp(&f.zero(), &f.zero(), &f).unwrap();
        assert_eq!(m.dim(), 1);
    }

    #[test]
    fn weyl_examples() {
        let m = weyl_module_modp(&[3, 0], 7, 64).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(m.is_irreducible());
        assert_eq!(singular_weights(&m, &[3, 0]), vec![vec![3, 0]]);
        let m = weyl_module_modp(&[5, 0], 5, 64).unwrap();
        assert!(!m.is_irreducible());
        assert!(weyl_module_modp(&[2, 1, 0], 7, 64).unwrap().is_irreducible());
        assert!(weyl_module_modp(&[1, 0, 0], 5, 64).unwrap().is_irreducible());
        assert!(weyl_module_modp(&[1, 0], 2, 64).is_err());
    }

    #[test]
    fn linkage_examples() {
        assert!(linkage_condition(&[2, 1], &[2, 1], 7));
        assert!(linkage_condition(&[0, 0], &[-1, 1], 7));
        assert!(linkage_condition(&[0, 0], &[-1, 1], 0));
        assert!(!linkage_condition(&[1, 0], &[0, 0], 7));
    }

    #[test]
    fn scan_weight_ranges() {
        assert_eq!(scan_weights(2, 2), vec![vec![0, 0], vec![1, 0], vec![2, 0]]);
        assert_eq!(scan_weights(3, 1).len(), 3);
        let r = bound_scan(2, 6, &[7, 11, 13], 64).unwrap();
        assert!(r.violations().is_empty());
        assert!(r.to_csv().starts_with("lambda,p"));
    }
}
