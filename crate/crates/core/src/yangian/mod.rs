//! Finite-dimensional modules over the Yangian `Y(gl_n)` in the RTT
//! presentation, given by the matrices of the generators `t_ij^(m)`.

mod drinfeld;
mod irreducible;
mod qdet;

use serde_json::{json, Map, Value};

pub use drinfeld::{drinfeld_of_module, gl2_explicit_drinfeld, pade_ratio, weight_rational_functions};
pub use irreducible::{bracket, renumeration_criterion, Renumeration, YangianWeight};
pub use qdet::{qdet_action, QdetReport};

use crate::error::{Error, Result};
use crate::gl_module::GlnModule;
use crate::linalg::Matrix;
use crate::scalars::{shift_weights, Field, TruncSeries};

/// `R(u) = 1 + sign * σ / u`. The relations hold for `sign = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub sign: i64,
}

impl RMatrix {
    pub const STANDARD: RMatrix = RMatrix { sign: -1 };
    pub const FLIPPED: RMatrix = RMatrix { sign: 1 };
}

impl Default for RMatrix {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Input to [`YangianModule::evaluation`]: a `gl_n`-module twisted by the
/// character `c * trace`, then shifted by `z` and multiplied by `f(u)`.
#[derive(Clone, Debug)]
pub struct EvalSpec<F: Field> {
    pub module: GlnModule<F>,
    pub character: F::Elem,
    pub shift: F::Elem,
    pub twist: Option<TruncSeries<F>>,
    /// Truncation used when the result is not polynomial in `u^{-1}`.
    pub order: usize,
}

impl<F: Field> EvalSpec<F> {
    pub fn plain(module: GlnModule<F>) -> Self {
        let f = module.field().clone();
        EvalSpec {
            module,
            character: f.zero(),
            shift: f.zero(),
            twist: None,
            order: crate::scalars::DEFAULT_TRUNCATION,
        }
    }

    pub fn with_character(mut self, c: F::Elem) -> Self {
        self.character = c;
        self
    }
}

/// Matrices of `t_ij^(m)` for `0 <= m <= order`, with `t_ij^(0) = δ_ij`.
///
/// An *exact* module has `T(u)` polynomial in `u^{-1}` of degree at most
/// `order`; otherwise coefficients past `order` are unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct YangianModule<F: Field> {
    field: F,
    n: usize,
    order: usize,
    exact: bool,
    t: Vec<Vec<Matrix<F>>>,
    offsets: Vec<Vec<i64>>,
    zero: Matrix<F>,
    provenance: Vec<String>,
}

impl<F: Field> YangianModule<F> {
    fn from_parts(
        field: &F,
        n: usize,
        order: usize,
        exact: bool,
        t: Vec<Vec<Matrix<F>>>,
        offsets: Vec<Vec<i64>>,
        provenance: Vec<String>,
    ) -> Self {
        let d = offsets.len();
        YangianModule {
            field: field.clone(),
            n,
            order,
            exact,
            t,
            offsets,
            zero: Matrix::zeros(field, d, d),
            provenance,
        }
    }

    /// The one-dimensional module with `T(u) = 1`.
    pub fn trivial(field: &F, n: usize) -> Self {
        let t = (0..n * n)
            .map(|k| {
                let c = if k / n == k % n { field.one() } else { field.zero() };
                vec![Matrix::scalar(field, 1, &c)]
            })
            .collect();
        Self::from_parts(field, n, 0, true, t, vec![vec![0; n]], vec!["trivial".into()])
    }

    /// `T(u) = f(u) (1 + (E + c)/(u - z))`.
    pub fn evaluation(spec: &EvalSpec<F>) -> Result<Self> {
        let m = &spec.module;
        let f = m.field();
        let n = m.n();
        let d = m.dim();
        let t = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let delta = if i == j { f.one() } else { f.zero() };
                let e = m.e(i, j).add(&Matrix::scalar(f, d, &f.mul(&delta, &spec.character)));
                e.map(|e| vec![Matrix::scalar(f, d, &delta), e])
            })
            .collect::<Result<Vec<_>>>()?;
        let label = format!(
            "ev(highest_weight={:?}, c={})",
            m.highest_weight().iter().map(|x| f.format(x)).collect::<Vec<_>>(),
            f.format(&spec.character)
        );
        let mut out = Self::from_parts(f, n, 1, true, t, m.offsets().to_vec(), vec![label]);
        if !f.is_zero(&spec.shift) {
            out = out.shifted(&spec.shift, spec.order);
        }
        if let Some(tw) = &spec.twist {
            out = out.twisted(tw)?;
        }
        Ok(out)
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

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// `t_ij^(m)`, 0-based indices; zero past the order of an exact module.
    ///
    /// # Panics
    /// If `m` exceeds the order of a truncated module.
    pub fn t(&self, i: usize, j: usize, m: usize) -> &Matrix<F> {
        match self.t[i * self.n + j].get(m) {
            Some(x) => x,
            None if self.exact => &self.zero,
            None => panic!("t^({m}) unknown past truncation {}", self.order),
        }
    }

    /// Generators `t_ij^(m)`, `m >= 1`, that are known.
    pub fn generators(&self) -> impl Iterator<Item = (usize, usize, usize, &Matrix<F>)> + '_ {
        let n = self.n;
        (1..=self.order).flat_map(move |m| {
            (0..n).flat_map(move |i| (0..n).map(move |j| (i, j, m, self.t(i, j, m))))
        })
    }

    /// `T(u) -> T(u - z)`, truncated at `order` (or the current order if smaller).
    pub fn shifted(&self, z: &F::Elem, order: usize) -> Self {
        let f = &self.field;
        if f.is_zero(z) {
            return self.clone();
        }
        let new_order = if self.exact { order } else { order.min(self.order) };
        let w = shift_weights(f, z, new_order);
        let t = (0..self.n * self.n)
            .map(|k| {
                let (i, j) = (k / self.n, k % self.n);
                (0..=new_order)
                    .map(|m| {
                        let mut acc = self.t(i, j, 0).clone();
                        if m > 0 {
                            acc = self.zero.clone();
                            for (kk, wk) in w.iter().enumerate().take(m + 1).skip(1) {
                                acc = acc.add(&self.t(i, j, kk).scale(&wk[m])).expect("shape");
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut prov = self.provenance.clone();
        prov.push(format!("shift(z={})", f.format(z)));
        Self::from_parts(f, self.n, new_order, false, t, self.offsets.clone(), prov)
    }

    /// `T(u) -> f(u) T(u)`.
    pub fn twisted(&self, g: &TruncSeries<F>) -> Result<Self> {
        let f = &self.field;
        if g.field() != f {
            return Err(Error::FieldMismatch("twist series field differs from module field".into()));
        }
        if g.coeff(0) != f.one() {
            return Err(Error::Argument("twist series must have constant term 1".into()));
        }
        if g.is_one() {
            return Ok(self.clone());
        }
        let new_order = if self.exact { g.order() } else { g.order().min(self.order) };
        let t = (0..self.n * self.n)
            .map(|k| {
                let (i, j) = (k / self.n, k % self.n);
                (0..=new_order)
                    .map(|m| {
                        let mut acc = self.zero.clone();
                        for a in 0..=m {
                            if a > self.order && self.exact {
                                break;
                            }
                            acc = acc.add(&self.t(i, j, a).scale(&g.coeff(m - a))).expect("shape");
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut prov = self.provenance.clone();
        prov.push(format!("twist(f={g})"));
        Ok(Self::from_parts(f, self.n, new_order, false, t, self.offsets.clone(), prov))
    }

    /// Module via the coproduct `Δ t_ij(u) = Σ_k t_ik(u) ⊗ t_kj(u)`.
    pub fn tensor(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::Argument(format!("rank mismatch: {} vs {}", self.n, o.n)));
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, o.field)));
        }
        let (exact, order) = match (self.exact, o.exact) {
            (true, true) => (true, self.order + o.order),
            (true, false) => (false, o.order),
            (false, true) => (false, self.order),
            (false, false) => (false, self.order.min(o.order)),
        };
        let n = self.n;
        let d = self.dim() * o.dim();
        let t = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..=order)
                    .map(|m| {
                        let mut acc = Matrix::zeros(&self.field, d, d);
                        for a in 0..=m {
                            let b = m - a;
                            if (self.exact && a > self.order) || (o.exact && b > o.order) {
                                continue;
                            }
                            for l in 0..n {
                                let x = self.t(i, l, a);
                                let y = o.t(l, j, b);
                                if x.is_zero() || y.is_zero() {
                                    continue;
                                }
                                acc = acc.add(&x.kron(y)).expect("shape");
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let offsets = self
            .offsets
            .iter()
            .flat_map(|a| o.offsets.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        let mut prov = vec![format!("tensor[{}]", self.provenance.join(", "))];
        prov.push(format!("[{}]", o.provenance.join(", ")));
        Ok(Self::from_parts(&self.field, n, order, exact, t, offsets, prov))
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.n != o.n || self.field != o.field {
            return Err(Error::Argument("direct sum needs equal rank and field".into()));
        }
        let (exact, order) = match (self.exact, o.exact) {
            (true, true) => (true, self.order.max(o.order)),
            (true, false) => (false, o.order),
            (false, true) => (false, self.order),
            (false, false) => (false, self.order.min(o.order)),
        };
        let n = self.n;
        let t = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..=order).map(|m| self.t(i, j, m).direct_sum(o.t(i, j, m))).collect()
            })
            .collect();
        let mut offsets = self.offsets.clone();
        offsets.extend(o.offsets.iter().cloned());
        let prov = vec![format!("sum[{}] + [{}]", self.provenance.join(", "), o.provenance.join(", "))];
        Ok(Self::from_parts(&self.field, n, order, exact, t, offsets, prov))
    }

    /// Copy with `value` added to entry `(row, col)` of `t_ij^(m)`.
    pub fn perturbed(&self, i: usize, j: usize, m: usize, row: usize, col: usize, value: &F::Elem) -> Result<Self> {
        if i >= self.n || j >= self.n || m == 0 || m > self.order || row >= self.dim() || col >= self.dim() {
            return Err(Error::Argument("perturbation index out of range".into()));
        }
        let mut out = self.clone();
        out.t[i * self.n + j][m].add_at(row, col, value);
        out.provenance.push(format!("perturbed(t_{}{}^({m}))", i + 1, j + 1));
        Ok(out)
    }

    /// Failing component relations
    /// `[t_ij^(r+1), t_kl^(s)] - [t_ij^(r), t_kl^(s+1)] = -sign (t_kj^(r) t_il^(s) - t_kj^(s) t_il^(r))`,
    /// as `(i, j, k, l, r, s)`.
    pub fn rtt_defects(&self, rm: RMatrix) -> Result<Vec<[usize; 6]>> {
        let n = self.n;
        let top = if self.exact { self.order } else { self.order.saturating_sub(1) };
        if !self.exact && self.order == 0 {
            return Ok(Vec::new());
        }
        let coeff = self.field.from_i64(-rm.sign);
        let mut bad = Vec::new();
        for r in 0..=top {
            for s in 0..=top {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for l in 0..n {
                                let lhs = self
                                    .t(i, j, r + 1)
                                    .commutator(self.t(k, l, s))?
                                    .sub(&self.t(i, j, r).commutator(self.t(k, l, s + 1))?)?;
                                let rhs = self
                                    .t(k, j, r)
                                    .mul(self.t(i, l, s))?
                                    .sub(&self.t(k, j, s).mul(self.t(i, l, r))?)?
                                    .scale(&coeff);
                                if lhs != rhs {
                                    bad.push([i, j, k, l, r, s]);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Whether the RTT relation holds in every coefficient the truncation determines.
    pub fn verify_rtt(&self) -> bool {
        self.verify_rtt_with(RMatrix::STANDARD)
    }

    pub fn verify_rtt_with(&self, rm: RMatrix) -> bool {
        self.rtt_defects(rm).map(|d| d.is_empty()).unwrap_or(false)
    }

    /// Whether `E_ij -> t_ij^(1)` satisfies the `gl_n` relations.
    pub fn satisfies_gl_embedding(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (0..n).all(|l| {
                        let lhs = self.t(i, j, 1).commutator(self.t(k, l, 1)).expect("shape");
                        let mut rhs = self.zero.clone();
                        if j == k {
                            rhs = rhs.add(self.t(i, l, 1)).expect("shape");
                        }
                        if l == i {
                            rhs = rhs.sub(self.t(k, j, 1)).expect("shape");
                        }
                        lhs == rhs
                    })
                })
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let mut t = Map::new();
        for m in 1..=self.order {
            for i in 0..self.n {
                for j in 0..self.n {
                    t.insert(format!("{},{},{}", i + 1, j + 1, m), self.t(i, j, m).to_json());
                }
            }
        }
        json!({
            "n": self.n,
            "field": self.field.tag().to_string(),
            "truncation": self.order,
            "exact": self.exact,
            "dim": self.dim(),
            "weight_offsets": self.offsets,
            "T": t,
            "provenance": self.provenance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gln_oracle::build_irreducible_gln;
    use crate::modular_weyl::gl2_irreducible_modp;
    use crate::scalars::{GaloisField, Rational, Rationals};

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    fn ev(lambda: &[i64]) -> YangianModule<Rationals> {
        let m = build_irreducible_gln(lambda, &Rationals, 64).unwrap();
        YangianModule::evaluation(&EvalSpec::plain(m)).unwrap()
    }

    #[test]
    fn fundamental_evaluation() {
        let m = ev(&[1, 0]);
        assert_eq!(m.dim(), 2);
        assert_eq!(m.t(0, 1, 1).to_dense(), vec![vec![q(0), q(1)], vec![q(0), q(0)]]);
        assert!(m.t(0, 1, 2).is_zero());
        assert!(m.verify_rtt());
        assert!(!m.verify_rtt_with(RMatrix::FLIPPED));
        let trivial = ev(&[0, 0]);
        assert!(trivial.t(0, 0, 1).is_zero());
    }

    #[test]
    fn shifted_coefficients_are_geometric() {
        let base = build_irreducible_gln(&[1, 0], &Rationals, 64).unwrap();
        let spec = EvalSpec {
            shift: q(1),
            order: 3,
            ..EvalSpec::plain(base)
        };
        let m = YangianModule::evaluation(&spec).unwrap();
        for k in 1..=3 {
            assert_eq!(m.t(0, 0, k), m.t(0, 0, 1));
        }
        assert!(m.verify_rtt());
    }

    #[test]
    fn tensor_products_satisfy_rtt() {
        let a = ev(&[1, 0]);
        let b = ev(&[2, 0]);
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.dim(), 6);
        assert_eq!(ab.order(), 2);
        assert!(ab.verify_rtt());
        let at = a.tensor(&YangianModule::trivial(&Rationals, 2)).unwrap();
        assert_eq!(at.t(0, 1, 1), a.t(0, 1, 1));
        let f = GaloisField::prime(7).unwrap();
        let l1 = gl2_irreducible_modp(&f.from_i64(1), &f.zero(), &f).unwrap();
        let l2 = gl2_irreducible_modp(&f.from_i64(2), &f.zero(), &f).unwrap();
        let m = YangianModule::evaluation(&EvalSpec::plain(l1))
            .unwrap()
            .tensor(&YangianModule::evaluation(&EvalSpec::plain(l2)).unwrap())
            .unwrap();
        assert!(m.verify_rtt());
        let bad = m.perturbed(0, 0, 1, 0, 1, &f.one()).unwrap();
        assert!(!bad.verify_rtt());
    }

    #[test]
    fn intertwining_with_character_twist() {
        let z = q(3);
        let base = build_irreducible_gln(&[2, 1], &Rationals, 64).unwrap();
        let f = TruncSeries::new(&Rationals, vec![q(1), -z.clone()], 4);
        let spec = EvalSpec {
            shift: z.clone(),
            twist: Some(f),
            order: 4,
            ..EvalSpec::plain(base.clone())
        };
        let lhs = YangianModule::evaluation(&spec).unwrap();
        let rhs = YangianModule::evaluation(&EvalSpec::plain(base).with_character(-z)).unwrap();
        for m in 0..=4 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(lhs.t(i, j, m), rhs.t(i, j, m));
                }
            }
        }
    }
}
