//! Highest weights and Drinfeld polynomials in complex rank: evaluation data,
//! the weight/polynomial correspondence, strings of roots and `q_p`-reduction.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::Bipartition;
use crate::scalars::{
    find_rational_root, parse_rational, rational_to_string, Field, FactoredPoly, Rational, TruncSeries,
};

/// Factors `(η_k, c_k)` of a tensor product of evaluation modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationData {
    factors: Vec<(Bipartition, Rational)>,
    standard_gl_action: bool,
}

impl EvaluationData {
    /// With `standard_gl_action` the parameters must sum to zero.
    pub fn new(factors: Vec<(Bipartition, Rational)>, standard_gl_action: bool) -> Result<Self> {
        if factors.iter().any(|(eta, _)| eta.is_empty()) {
            return Err(Error::Argument("evaluation factors need nonempty bipartitions".into()));
        }
        if standard_gl_action {
            let s: Rational = factors.iter().map(|(_, c)| c.clone()).sum();
            if s != Rational::from_integer(0.into()) {
                return Err(Error::Argument(format!(
                    "parameters sum to {} but the standard action needs 0",
                    rational_to_string(&s)
                )));
            }
        }
        Ok(EvaluationData {
            factors,
            standard_gl_action,
        })
    }

    pub fn factors(&self) -> &[(Bipartition, Rational)] {
        &self.factors
    }

    pub fn standard_gl_action(&self) -> bool {
        self.standard_gl_action
    }

    pub fn to_json(&self) -> Value {
        json!({
            "factors": self.factors.iter().map(|(eta, c)| json!({
                "eta": eta.to_json(),
                "c": rational_to_string(c),
            })).collect::<Vec<_>>(),
            "standard_gl_action": self.standard_gl_action,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("evaluation data needs a `factors` array".into()))?;
        let factors = arr
            .iter()
            .map(|f| {
                let eta = Bipartition::from_json(
                    f.get("eta").ok_or_else(|| Error::Parse("factor needs `eta`".into()))?,
                )?;
                let c = match f.get("c") {
                    None => Rational::from_integer(0.into()),
                    Some(Value::String(s)) => parse_rational(s)?,
                    Some(Value::Number(n)) => parse_rational(&n.to_string())?,
                    Some(x) => return Err(Error::Parse(format!("bad parameter {x}"))),
                };
                Ok((eta, c))
            })
            .collect::<Result<Vec<_>>>()?;
        let flag = v.get("standard_gl_action").and_then(Value::as_bool).unwrap_or(false);
        Self::new(factors, flag)
    }
}

/// Highest weight `(λ•_i(u), λ∘_i(u), λ^m(u))`, each entry `u^{-deg} P(u)`
/// stored as the monic `P`. Entries past the stored lists are `λ^m` (bullet)
/// and `λ^m(-u)` (circle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightCR<F: Field> {
    pub bullet: Vec<FactoredPoly<F>>,
    pub circ: Vec<FactoredPoly<F>>,
    pub middle: FactoredPoly<F>,
}

impl<F: Field> HighestWeightCR<F> {
    pub fn trivial(field: &F) -> Self {
        HighestWeightCR {
            bullet: Vec::new(),
            circ: Vec::new(),
            middle: FactoredPoly::one(field),
        }
    }

    pub fn field(&self) -> &F {
        self.middle.field()
    }

    pub fn l_bullet(&self) -> usize {
        self.bullet.len()
    }

    pub fn l_circ(&self) -> usize {
        self.circ.len()
    }

    /// `λ•_i`, 1-based.
    pub fn bullet_at(&self, i: usize) -> FactoredPoly<F> {
        self.bullet.get(i - 1).cloned().unwrap_or_else(|| self.middle.clone())
    }

    /// `λ∘_i`, 1-based.
    pub fn circ_at(&self, i: usize) -> FactoredPoly<F> {
        self.circ.get(i - 1).cloned().unwrap_or_else(|| self.middle.reflect())
    }

    fn entries_mut(&mut self) -> impl Iterator<Item = &mut FactoredPoly<F>> {
        self.bullet.iter_mut().chain(self.circ.iter_mut()).chain(std::iter::once(&mut self.middle))
    }

    /// All entries brought to a common degree by factors of `u`.
    pub fn padded(&self) -> Self {
        let mut out = self.clone();
        let d = out.entries_mut().map(|p| p.degree()).max().unwrap_or(0);
        let f = self.field().clone();
        for p in out.entries_mut() {
            let pad = FactoredPoly::from_roots(&f, vec![f.zero(); d - p.degree()]);
            *p = p.mul(&pad);
        }
        out
    }

    /// Padded, with roots common to every entry removed and trailing
    /// stabilized entries dropped. Two weights differ by a series factor iff
    /// their canonical forms agree.
    pub fn canonical(&self) -> Self {
        let mut out = self.padded();
        let refl = out.middle.reflect();
        while out.bullet.last() == Some(&out.middle) {
            out.bullet.pop();
        }
        while out.circ.last() == Some(&refl) {
            out.circ.pop();
        }
        // in restricted form every entry is λ•_i, λ^m or λ∘_i(-u)
        let mut common = out.middle.clone();
        for p in &out.bullet {
            common = common_part(&common, p);
        }
        for p in &out.circ {
            common = common_part(&common, &p.reflect());
        }
        if common.is_one() {
            return out;
        }
        let refl_common = common.reflect();
        for p in out.bullet.iter_mut() {
            *p = p.div_exact(&common).expect("common factor");
        }
        for p in out.circ.iter_mut() {
            *p = p.div_exact(&refl_common).expect("common factor");
        }
        out.middle = out.middle.div_exact(&common).expect("common factor");
        out
    }

    /// `(λ|_n)_i`: `λ•_i` for `i <= l•`, `λ∘_{n-i+1}(-u)` for the last `l∘`
    /// positions, `λ^m` elsewhere.
    pub fn restrict(&self, n: usize) -> Result<Vec<FactoredPoly<F>>> {
        let (lb, lc) = (self.l_bullet(), self.l_circ());
        if n < lb + lc {
            return Err(Error::Domain(format!("restriction to rank {n} needs n >= {}", lb + lc)));
        }
        Ok((1..=n)
            .map(|i| {
                if i <= lb {
                    self.bullet[i - 1].clone()
                } else if i > n - lc {
                    self.circ[n - i].reflect()
                } else {
                    self.middle.clone()
                }
            })
            .collect())
    }

    /// The restricted weight as eigen-series `u^{-deg} P(u)`.
    pub fn restrict_series(&self, n: usize, order: usize) -> Result<Vec<TruncSeries<F>>> {
        Ok(self.restrict(n)?.iter().map(|p| p.to_series(order)).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda_bullet": self.bullet.iter().map(FactoredPoly::to_json).collect::<Vec<_>>(),
            "lambda_circ": self.circ.iter().map(FactoredPoly::to_json).collect::<Vec<_>>(),
            "lambda_m": self.middle.to_json(),
            "l_bullet": self.l_bullet(),
            "l_circ": self.l_circ(),
        })
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        let list = |k: &str| -> Result<Vec<FactoredPoly<F>>> {
            match v.get(k) {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => a.iter().map(|x| FactoredPoly::from_json(field, x)).collect(),
                Some(x) => Err(Error::Parse(format!("`{k}` must be an array, got {x}"))),
            }
        };
        let middle = match v.get("lambda_m") {
            None => FactoredPoly::one(field),
            Some(x) => FactoredPoly::from_json(field, x)?,
        };
        Ok(HighestWeightCR {
            bullet: list("lambda_bullet")?,
            circ: list("lambda_circ")?,
            middle,
        })
    }
}

fn common_part<F: Field>(a: &FactoredPoly<F>, b: &FactoredPoly<F>) -> FactoredPoly<F> {
    let mut rest = b.roots().to_vec();
    let mut out = Vec::new();
    for r in a.roots() {
        if let Some(k) = rest.iter().position(|x| x == r) {
            rest.remove(k);
            out.push(r.clone());
        }
    }
    FactoredPoly::from_roots(a.field(), out)
}

/// Drinfeld polynomials `(P•_i, P∘_i)`, trailing 1s trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldDataCR<F: Field> {
    pub bullet: Vec<FactoredPoly<F>>,
    pub circ: Vec<FactoredPoly<F>>,
}

impl<F: Field> DrinfeldDataCR<F> {
    pub fn new(mut bullet: Vec<FactoredPoly<F>>, mut circ: Vec<FactoredPoly<F>>) -> Self {
        while bullet.last().is_some_and(FactoredPoly::is_one) {
            bullet.pop();
        }
        while circ.last().is_some_and(FactoredPoly::is_one) {
            circ.pop();
        }
        DrinfeldDataCR { bullet, circ }
    }

    pub fn is_trivial(&self) -> bool {
        self.bullet.is_empty() && self.circ.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.bullet.iter().chain(&self.circ).map(FactoredPoly::degree).sum()
    }

    /// Each polynomial replaced by its `q_p`-reduced representative.
    pub fn normalized(&self) -> Self {
        Self::new(
            self.bullet.iter().map(qp_normalize).collect(),
            self.circ.iter().map(qp_normalize).collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "P_bullet": self.bullet.iter().map(FactoredPoly::to_json).collect::<Vec<_>>(),
            "P_circ": self.circ.iter().map(FactoredPoly::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: &F, v: &Value) -> Result<Self> {
        let list = |k: &str| -> Result<Vec<FactoredPoly<F>>> {
            match v.get(k) {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => a.iter().map(|x| FactoredPoly::from_json(field, x)).collect(),
                Some(x) => Err(Error::Parse(format!("`{k}` must be an array, got {x}"))),
            }
        };
        let bullet = list("P_bullet")?;
        let circ = list("P_circ")?;
        Ok(Self::new(bullet, circ))
    }
}

/// `λ•_i = Π_k (u + (η•_k)_i + c_k)`, `λ∘_i = Π_k (u + (η∘_k)_i - c_k)`,
/// `λ^m = Π_k (u + c_k)`.
pub fn weight_from_evaluation<F: Field>(data: &EvaluationData, field: &F) -> Result<HighestWeightCR<F>> {
    let lb = data.factors.iter().map(|(e, _)| e.bullet.len()).max().unwrap_or(0);
    let lc = data.factors.iter().map(|(e, _)| e.circ.len()).max().unwrap_or(0);
    let cs = data
        .factors
        .iter()
        .map(|(_, c)| field.from_rational(c))
        .collect::<Result<Vec<_>>>()?;
    let bullet = (0..lb)
        .map(|i| {
            let roots = data
                .factors
                .iter()
                .zip(&cs)
                .map(|((e, _), c)| field.neg(&field.add_int(c, e.bullet.part(i) as i64)))
                .collect();
            FactoredPoly::from_roots(field, roots)
        })
        .collect();
    let circ = (0..lc)
        .map(|i| {
            let roots = data
                .factors
                .iter()
                .zip(&cs)
                .map(|((e, _), c)| field.add_int(c, -(e.circ.part(i) as i64)))
                .collect();
            FactoredPoly::from_roots(field, roots)
        })
        .collect();
    let middle = FactoredPoly::from_roots(field, cs.iter().map(|c| field.neg(c)).collect());
    Ok(HighestWeightCR { bullet, circ, middle })
}

/// A run of roots `start, start + 1, ..., start + len - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootString<E> {
    pub start: E,
    pub len: usize,
}

impl<E: Clone> RootString<E> {
    pub fn end<F: Field<Elem = E>>(&self, field: &F) -> E {
        field.add_int(&self.start, self.len as i64 - 1)
    }
}

/// Greedy decomposition into maximal strings: repeatedly take the least root
/// whose predecessor is absent and extend it as far as possible.
pub fn string_decompose<F: Field>(field: &F, roots: &[F::Elem]) -> Result<Vec<RootString<F::Elem>>> {
    let p = field.characteristic();
    if p > 0 && roots.len() as u64 + 1 >= p {
        return Err(Error::size("string decomposition input", roots.len() as u64, p.saturating_sub(2)));
    }
    let mut left: BTreeMap<F::Elem, usize> = BTreeMap::new();
    for r in roots {
        *left.entry(r.clone()).or_default() += 1;
    }
    let mut out = Vec::new();
    while !left.is_empty() {
        let start = left
            .keys()
            .find(|r| !left.contains_key(&field.add_int(r, -1)))
            .cloned()
            .expect("some root has no predecessor");
        let mut cur = start.clone();
        let mut len = 0;
        while let Some(c) = left.get_mut(&cur) {
            *c -= 1;
            if *c == 0 {
                left.remove(&cur);
            }
            len += 1;
            cur = field.add_int(&cur, 1);
        }
        out.push(RootString { start, len });
    }
    Ok(out)
}

/// The polynomial `Π_{s} Π_{r in s} (u - r)` of a string list.
pub fn strings_to_poly<F: Field>(field: &F, strings: &[RootString<F::Elem>]) -> FactoredPoly<F> {
    let roots = strings
        .iter()
        .flat_map(|s| (0..s.len).map(move |k| field.add_int(&s.start, k as i64)))
        .collect();
    FactoredPoly::from_roots(field, roots)
}

/// Whether `P(u+1)/P(u) = num/den` as rational functions.
pub fn satisfies_ratio<F: Field>(p: &FactoredPoly<F>, num: &FactoredPoly<F>, den: &FactoredPoly<F>) -> bool {
    p.shift_argument(&p.field().one()).mul(den) == p.mul(num)
}

/// The monic `P` with `P(u+1)/P(u) = num/den`: equal-degree numerator root
/// `a` and denominator root `b` in one integer coset with `b - a > 0`
/// contribute the roots `a + 1, ..., b`.
pub fn ratio_to_drinfeld<F: Field>(num: &FactoredPoly<F>, den: &FactoredPoly<F>) -> Result<FactoredPoly<F>> {
    let field = num.field();
    let (a, b) = crate::scalars::cancel_common(num, den);
    if a.degree() != b.degree() {
        return Err(Error::Classification(format!(
            "ratio {a} / {b} has unequal degrees"
        )));
    }
    let p = field.characteristic();
    let mut cosets: BTreeMap<F::Elem, (Vec<i64>, Vec<i64>)> = BTreeMap::new();
    for r in a.roots() {
        let (res, k) = field.coset_split(r);
        cosets.entry(res).or_default().0.push(k);
    }
    for r in b.roots() {
        let (res, k) = field.coset_split(r);
        cosets.entry(res).or_default().1.push(k);
    }
    let mut roots = Vec::new();
    for (res, (mut ka, mut kb)) in cosets {
        if ka.len() != kb.len() {
            return Err(Error::Classification(format!(
                "roots of {a} / {b} do not pair within integer cosets"
            )));
        }
        let mut pairs = Vec::new();
        if p == 0 {
            ka.sort_unstable();
            kb.sort_unstable();
            for (x, y) in ka.iter().zip(&kb) {
                if y <= x {
                    return Err(Error::Classification(format!(
                        "ratio {a} / {b} admits no positive integer gaps"
                    )));
                }
                pairs.push((*x, *y));
            }
        } else {
            while !ka.is_empty() {
                let (_, i, j) = (0..ka.len())
                    .flat_map(|i| (0..kb.len()).map(move |j| (i, j)))
                    .map(|(i, j)| ((kb[j] - ka[i]).rem_euclid(p as i64), i, j))
                    .min()
                    .expect("nonempty");
                let x = ka.remove(i);
                let y = kb.remove(j);
                pairs.push((x, x + (y - x).rem_euclid(p as i64)));
            }
        }
        for (x, y) in pairs {
            for k in x + 1..=y {
                roots.push(field.add_int(&res, k));
            }
        }
    }
    let out = qp_normalize(&FactoredPoly::from_roots(field, roots));
    if !satisfies_ratio(&out, &a, &b) {
        return Err(Error::Construction(format!("telescoping failed for {a} / {b}")));
    }
    Ok(out)
}

/// Drinfeld polynomials of a highest weight.
pub fn drinfeld_from_weight<F: Field>(hw: &HighestWeightCR<F>) -> Result<DrinfeldDataCR<F>> {
    let w = hw.padded();
    let (lb, lc) = (w.l_bullet(), w.l_circ());
    let bullet = (0..lb)
        .map(|i| {
            let next = if i + 1 < lb { &w.bullet[i + 1] } else { &w.middle };
            ratio_to_drinfeld(&w.bullet[i], next)
        })
        .collect::<Result<Vec<_>>>()?;
    let mu: Vec<FactoredPoly<F>> = w.circ.iter().map(FactoredPoly::reflect).collect();
    let circ = (0..lc)
        .map(|i| {
            let next = if i + 1 < lc { &mu[i + 1] } else { &w.middle };
            ratio_to_drinfeld(next, &mu[i])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DrinfeldDataCR::new(bullet, circ))
}

/// Whether `hw` and `p` satisfy the ratio identities linking weights to
/// Drinfeld polynomials.
pub fn check_weight_ratios<F: Field>(hw: &HighestWeightCR<F>, p: &DrinfeldDataCR<F>) -> bool {
    let w = hw.padded();
    let one = FactoredPoly::one(hw.field());
    let lb = w.l_bullet().max(p.bullet.len());
    let lc = w.l_circ().max(p.circ.len());
    let bullet_ok = (1..=lb).all(|i| {
        let pi = p.bullet.get(i - 1).unwrap_or(&one);
        satisfies_ratio(pi, &w.bullet_at(i), &w.bullet_at(i + 1))
    });
    let circ_ok = (1..=lc).all(|i| {
        let pi = p.circ.get(i - 1).unwrap_or(&one);
        satisfies_ratio(pi, &w.circ_at(i + 1).reflect(), &w.circ_at(i).reflect())
    });
    bullet_ok && circ_ok
}

/// A highest weight with the given Drinfeld polynomials:
/// `λ•_i = Π_{j<i} P•_j(u) Π_{j>=i} P•_j(u+1) Π_j P∘_j(u+1)`,
/// `λ^m = Π_j P•_j(u) Π_j P∘_j(u+1)`,
/// `λ∘_i(-u) = Π_j P•_j(u) Π_{j>=i} P∘_j(u) Π_{j<i} P∘_j(u+1)`.
pub fn weight_from_drinfeld<F: Field>(p: &DrinfeldDataCR<F>) -> Result<HighestWeightCR<F>> {
    let f = match p.bullet.first().or(p.circ.first()) {
        Some(x) => x.field().clone(),
        None => return Err(Error::Argument("use HighestWeightCR::trivial for empty data".into())),
    };
    let one = f.one();
    let prod = |it: &mut dyn Iterator<Item = FactoredPoly<F>>| it.fold(FactoredPoly::one(&f), |a, b| a.mul(&b));
    let (nb, nc) = (p.bullet.len(), p.circ.len());
    let up = |x: &FactoredPoly<F>| x.shift_argument(&one);
    let bullet = (0..nb)
        .map(|i| {
            prod(&mut p.bullet[..i].iter().cloned())
                .mul(&prod(&mut p.bullet[i..].iter().map(up)))
                .mul(&prod(&mut p.circ.iter().map(up)))
        })
        .collect();
    let middle = prod(&mut p.bullet.iter().cloned()).mul(&prod(&mut p.circ.iter().map(up)));
    let circ = (0..nc)
        .map(|i| {
            prod(&mut p.bullet.iter().cloned())
                .mul(&prod(&mut p.circ[i..].iter().cloned()))
                .mul(&prod(&mut p.circ[..i].iter().map(up)))
                .reflect()
        })
        .collect();
    let hw = HighestWeightCR { bullet, circ, middle };
    let back = drinfeld_from_weight(&hw)?;
    if back.normalized() != p.normalized() || !check_weight_ratios(&hw, p) {
        return Err(Error::Construction("weight reconstruction failed the ratio round trip".into()));
    }
    Ok(hw)
}

/// Removes complete residue classes `{c, c+1, ..., c+p-1}` (the roots of
/// `q_p(u - c) = (u-c)^p - (u-c)`) from the roots, as often as possible.
pub fn qp_normalize<F: Field>(poly: &FactoredPoly<F>) -> FactoredPoly<F> {
    let field = poly.field();
    let p = field.characteristic();
    if p == 0 {
        return poly.clone();
    }
    let mut cosets: BTreeMap<F::Elem, Vec<usize>> = BTreeMap::new();
    for r in poly.roots() {
        let (res, k) = field.coset_split(r);
        cosets.entry(res).or_insert_with(|| vec![0; p as usize])[k.rem_euclid(p as i64) as usize] += 1;
    }
    let mut roots = Vec::new();
    for (res, counts) in cosets {
        let full = counts.iter().copied().min().unwrap_or(0);
        for (k, &c) in counts.iter().enumerate() {
            for _ in full..c {
                roots.push(field.add_int(&res, k as i64));
            }
        }
    }
    FactoredPoly::from_roots(field, roots)
}

/// Residues `t` with `q(t) ≡ 0 (mod p)` for primes `p <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specializations {
    pub pairs: Vec<(u64, u64)>,
}

impl Specializations {
    /// `p - t` for each pair.
    pub fn gaps(&self) -> Vec<u64> {
        self.pairs.iter().map(|(t, p)| p - t).collect()
    }

    /// Odd primes carrying at least one root, ascending.
    pub fn odd_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.pairs.iter().map(|x| x.1).filter(|p| p % 2 == 1).collect();
        ps.dedup();
        ps
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs.iter().map(|(t, p)| json!([t, p])).collect::<Vec<_>>(),
            "gaps": self.gaps(),
        })
    }
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// All `(t, p)` with `p <= bound` prime, `0 <= t < p` and `q(t) ≡ 0 mod p`,
/// for an integer polynomial `q` (ascending coefficients) with no rational root.
pub fn find_modular_specializations(q: &[i64], bound: u64) -> Result<Specializations> {
    let mut c = q.to_vec();
    while c.last() == Some(&0) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::Argument("polynomial must be nonconstant".into()));
    }
    let rat: Vec<Rational> = c.iter().map(|&x| Rational::from_integer(x.into())).collect();
    if let Some(r) = find_rational_root(&rat) {
        return Err(Error::Argument(format!("polynomial has the rational root {}", rational_to_string(&r))));
    }
    let mut pairs = Vec::new();
    for p in primes_up_to(bound) {
        let pi = p as i128;
        for t in 0..p {
            let v = c.iter().rev().fold(0i128, |acc, &x| (acc * t as i128 + x as i128).rem_euclid(pi));
            if v == 0 {
                pairs.push((t, p));
            }
        }
    }
    Ok(Specializations { pairs })
}

/// A pair `(P, f)` labelling an irreducible object, compared after
/// `q_p`-reduction of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlTLabel<F: Field> {
    pub drinfeld: DrinfeldDataCR<F>,
    pub twist: TruncSeries<F>,
}

/// Validates `f ∈ 1 + u^{-2}(...)`, or `1 + u^{-1}(...)` when `nonstandard` is set.
pub fn gl_t_label<F: Field>(p: &DrinfeldDataCR<F>, f: &TruncSeries<F>, nonstandard: bool) -> Result<GlTLabel<F>> {
    let field = f.field();
    if f.coeff(0) != field.one() {
        return Err(Error::Argument("twist series must have constant term 1".into()));
    }
    if !nonstandard && !field.is_zero(&f.coeff(1)) {
        return Err(Error::Argument(
            "twist series must have zero u^-1 coefficient unless the nonstandard action flag is set".into(),
        ));
    }
    Ok(GlTLabel {
        drinfeld: p.normalized(),
        twist: f.clone(),
    })
}

impl<F: Field> GlTLabel<F> {
    pub fn to_json(&self) -> Value {
        json!({"drinfeld": self.drinfeld.to_json(), "twist": self.twist.to_json()})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaloisField, Rationals};

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    fn fp(roots: &[i64]) -> FactoredPoly<Rationals> {
        FactoredPoly::from_roots(&Rationals, roots.iter().map(|&r| q(r)).collect())
    }

    fn bip(b: &[u32], c: &[u32]) -> Bipartition {
        Bipartition::from_parts(b, c).unwrap()
    }

    #[test]
    fn evaluation_weights() {
        let d = EvaluationData::new(vec![(bip(&[1], &[]), q(0))], true).unwrap();
        let w = weight_from_evaluation(&d, &Rationals).unwrap();
        assert_eq!(w.bullet, vec![fp(&[-1])]);
        assert_eq!(w.middle, fp(&[0]));
        assert!(w.circ.is_empty());
        let d = EvaluationData::new(vec![(bip(&[1], &[]), q(1)), (bip(&[1], &[]), q(-1))], true).unwrap();
        let w = weight_from_evaluation(&d, &Rationals).unwrap();
        assert_eq!(w.bullet, vec![fp(&[-2, 0])]);
        assert_eq!(w.middle, fp(&[-1, 1]));
        let d = EvaluationData::new(vec![(bip(&[], &[1]), q(0))], false).unwrap();
        let w = weight_from_evaluation(&d, &Rationals).unwrap();
        assert_eq!(w.circ, vec![fp(&[-1])]);
        assert!(EvaluationData::new(vec![(bip(&[1], &[]), q(1))], true).is_err());
        assert!(EvaluationData::new(vec![(bip(&[], &[]), q(0))], false).is_err());
    }

    #[test]
    fn strings() {
        let s = string_decompose(&Rationals, &[q(0), q(1), q(2), q(5), q(6)]).unwrap();
        assert_eq!(s, vec![RootString { start: q(0), len: 3 }, RootString { start: q(5), len: 2 }]);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(string_decompose(&Rationals, &[q(0), half]).unwrap().len(), 2);
        let f = GaloisField::prime(5).unwrap();
        assert!(string_decompose(&f, &[f.zero(), f.one(), f.from_i64(2), f.from_i64(3)]).is_err());
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio_to_drinfeld(&fp(&[-2]), &fp(&[0])).unwrap(), fp(&[-1, 0]));
        assert_eq!(ratio_to_drinfeld(&fp(&[-1]), &fp(&[0])).unwrap(), fp(&[0]));
        assert_eq!(ratio_to_drinfeld(&fp(&[3]), &fp(&[3])).unwrap(), fp(&[]));
        assert!(matches!(ratio_to_drinfeld(&fp(&[0]), &fp(&[-1])), Err(Error::Classification(_))));
    }

    #[test]
    fn drinfeld_round_trips() {
        let p = DrinfeldDataCR::new(vec![fp(&[0])], vec![]);
        let w = weight_from_drinfeld(&p).unwrap();
        let (a, b) = crate::scalars::cancel_common(&w.padded().bullet[0], &w.padded().middle);
        assert_eq!((a, b), (fp(&[-1]), fp(&[0])));
        let p = DrinfeldDataCR::new(vec![fp(&[-1, 0]), fp(&[3])], vec![fp(&[1]), fp(&[]), fp(&[2, 5])]);
        let w = weight_from_drinfeld(&p).unwrap();
        assert_eq!(drinfeld_from_weight(&w).unwrap(), p);
        assert!(drinfeld_from_weight(&HighestWeightCR::trivial(&Rationals)).unwrap().is_trivial());
    }

    #[test]
    fn qp_examples() {
        let f = GaloisField::prime(3).unwrap();
        let p = FactoredPoly::from_roots(&f, vec![f.from_i64(0), f.from_i64(1), f.from_i64(2), f.from_i64(-5)]);
        assert_eq!(qp_normalize(&p), FactoredPoly::from_roots(&f, vec![f.from_i64(1)]));
        let f7 = GaloisField::prime(7).unwrap();
        let p = FactoredPoly::from_roots(&f7, (0..6).map(|k| f7.from_i64(k)).collect());
        assert_eq!(qp_normalize(&p), p);
    }

    #[test]
    fn specializations() {
        let s = find_modular_specializations(&[-2, 0, 1], 7).unwrap();
        assert_eq!(s.pairs, vec![(0, 2), (3, 7), (4, 7)]);
        let s = find_modular_specializations(&[1, 0, 1], 5).unwrap();
        assert!(s.pairs.contains(&(2, 5)) && s.pairs.contains(&(3, 5)));
        let s = find_modular_specializations(&[-2, 0, 1], 3).unwrap();
        assert!(!s.pairs.iter().any(|x| x.1 == 3));
        assert_eq!(
            find_modular_specializations(&[-2, 0, 1], 50).unwrap().odd_primes(),
            vec![7, 17, 23, 31, 41, 47]
        );
        assert!(find_modular_specializations(&[-1, 0, 1], 10).is_err());
    }

    #[test]
    fn labels() {
        let f1 = TruncSeries::one(&Rationals, 4);
        let triv = DrinfeldDataCR::new(vec![], vec![]);
        assert!(gl_t_label(&triv, &f1, false).is_ok());
        let lin = TruncSeries::linear(&Rationals, &q(1), 4);
        assert!(gl_t_label(&triv, &lin, false).is_err());
        assert!(gl_t_label(&triv, &lin, true).is_ok());
    }
}
