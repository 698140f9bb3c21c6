//! The skeletal diagram category: objects are words `•^r ∘^s`, morphisms are
//! formal combinations of colored matchings with coefficients in `Q[t]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::QPoly;

/// `r` black points followed by `s` white points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObjectWord {
    pub r: usize,
    pub s: usize,
}

impl ObjectWord {
    pub const fn new(r: usize, s: usize) -> Self {
        ObjectWord { r, s }
    }

    pub fn len(&self) -> usize {
        self.r + self.s
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn color(&self, i: usize) -> Color {
        if i < self.r {
            Color::Black
        } else {
            Color::White
        }
    }

    pub fn dual(&self) -> Self {
        ObjectWord::new(self.s, self.r)
    }

    pub fn tensor(&self, o: &Self) -> Self {
        ObjectWord::new(self.r + o.r, self.s + o.s)
    }

    pub fn to_json(&self) -> Value {
        json!([self.r, self.s])
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(|a| a.as_slice()) {
            Some([r, s]) => match (r.as_u64(), s.as_u64()) {
                (Some(r), Some(s)) => Ok(ObjectWord::new(r as usize, s as usize)),
                _ => Err(Error::Parse(format!("bad object word {v}"))),
            },
            _ => Err(Error::Parse(format!("object word must be [r, s], got {v}"))),
        }
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Src,
    Dst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub row: Row,
    pub index: usize,
}

impl Point {
    pub const fn src(index: usize) -> Self {
        Point { row: Row::Src, index }
    }

    pub const fn dst(index: usize) -> Self {
        Point { row: Row::Dst, index }
    }
}

/// A perfect pairing of the points of two rows obeying the color rules.
/// Pairs are stored with the smaller point first, sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    src: ObjectWord,
    dst: ObjectWord,
    pairs: Vec<(Point, Point)>,
}

impl Matching {
    /// Validates and canonicalizes a list of pairs.
    pub fn new(src: ObjectWord, dst: ObjectWord, pairs: Vec<(Point, Point)>) -> Result<Self> {
        let total = src.len() + dst.len();
        let mut seen = vec![false; total];
        let slot = |p: &Point| match p.row {
            Row::Src => (p.index < src.len()).then_some(p.index),
            Row::Dst => (p.index < dst.len()).then_some(src.len() + p.index),
        };
        let color = |p: &Point| match p.row {
            Row::Src => src.color(p.index),
            Row::Dst => dst.color(p.index),
        };
        let mut canon = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            for p in [&a, &b] {
                let k = slot(p)
                    .ok_or_else(|| Error::Argument(format!("point {p:?} out of range")))?;
                if std::mem::replace(&mut seen[k], true) {
                    return Err(Error::Argument(format!("point {p:?} used twice")));
                }
            }
            let legal = if a.row == b.row {
                color(&a) != color(&b)
            } else {
                color(&a) == color(&b)
            };
            if !legal {
                return Err(Error::Argument(format!(
                    "pair {a:?}-{b:?} violates the color rule"
                )));
            }
            canon.push(if a <= b { (a, b) } else { (b, a) });
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Argument("matching is not perfect".into()));
        }
        canon.sort();
        Ok(Matching {
            src,
            dst,
            pairs: canon,
        })
    }

    fn from_partner(src: ObjectWord, dst: ObjectWord, partner: &[usize]) -> Self {
        let n = src.len();
        let pt = |k: usize| {
            if k < n {
                Point::src(k)
            } else {
                Point::dst(k - n)
            }
        };
        let pairs = (0..partner.len())
            .filter(|&k| k < partner[k])
            .map(|k| (pt(k), pt(partner[k])))
            .collect();
        Matching { src, dst, pairs }
    }

    /// Partner of every point; source points come first, then target points.
    pub fn partner(&self) -> Vec<usize> {
        let n = self.src.len();
        let idx = |p: &Point| match p.row {
            Row::Src => p.index,
            Row::Dst => n + p.index,
        };
        let mut out = vec![0; n + self.dst.len()];
        for (a, b) in &self.pairs {
            out[idx(a)] = idx(b);
            out[idx(b)] = idx(a);
        }
        out
    }

    pub fn src(&self) -> ObjectWord {
        self.src
    }

    pub fn dst(&self) -> ObjectWord {
        self.dst
    }

    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.pairs
    }

    pub fn identity(obj: ObjectWord) -> Self {
        let n = obj.len();
        let partner: Vec<usize> = (0..2 * n).map(|k| if k < n { k + n } else { k - n }).collect();
        Self::from_partner(obj, obj, &partner)
    }

    /// The permutation diagram on `(n, 0)` sending source `i` to target `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let obj = ObjectWord::new(n, 0);
        let mut partner = vec![0; 2 * n];
        for (i, &j) in perm.iter().enumerate() {
            partner[i] = n + j;
            partner[n + j] = i;
        }
        Self::from_partner(obj, obj, &partner)
    }

    /// The pairing `(1,1) -> (0,0)`.
    pub fn evaluation() -> Self {
        Self::from_partner(ObjectWord::new(1, 1), ObjectWord::new(0, 0), &[1, 0])
    }

    /// The pairing `(0,0) -> (1,1)`.
    pub fn coevaluation() -> Self {
        Self::from_partner(ObjectWord::new(0, 0), ObjectWord::new(1, 1), &[1, 0])
    }

    /// 180 degree rotation: `A -> B` becomes `B* -> A*`.
    pub fn dual(&self) -> Self {
        let (a, b) = (self.src, self.dst);
        let rot = |p: &Point| match p.row {
            Row::Src => Point::dst(a.len() - 1 - p.index),
            Row::Dst => Point::src(b.len() - 1 - p.index),
        };
        let pairs = self.pairs.iter().map(|(x, y)| (rot(x), rot(y))).collect();
        Matching::new(b.dual(), a.dual(), pairs).expect("rotation preserves the color rules")
    }

    /// Horizontal juxtaposition, reindexed so black points precede white ones.
    pub fn tensor(&self, o: &Self) -> Self {
        let place = |w1: ObjectWord, w2: ObjectWord, first: bool, i: usize| -> usize {
            if first {
                if i < w1.r {
                    i
                } else {
                    w2.r + i
                }
            } else if i < w2.r {
                w1.r + i
            } else {
                w1.len() + i
            }
        };
        let (s1, d1, s2, d2) = (self.src, self.dst, o.src, o.dst);
        let map = |p: &Point, first: bool| match p.row {
            Row::Src => Point::src(place(s1, s2, first, p.index)),
            Row::Dst => Point::dst(place(d1, d2, first, p.index)),
        };
        let pairs = self
            .pairs
            .iter()
            .map(|(x, y)| (map(x, true), map(y, true)))
            .chain(o.pairs.iter().map(|(x, y)| (map(x, false), map(y, false))))
            .collect();
        Matching::new(s1.tensor(&s2), d1.tensor(&d2), pairs).expect("juxtaposition is a matching")
    }

    /// Stacks `self` on top of `f` (first `f`, then `self`); returns the
    /// composite matching and the number of closed loops.
    pub fn compose_with(&self, f: &Matching) -> Result<(Matching, usize)> {
        if f.dst != self.src {
            return Err(Error::Composition(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.src, self.dst, f.src, f.dst
            )));
        }
        let (a, b, c) = (f.src.len(), f.dst.len(), self.dst.len());
        let pf = f.partner();
        let pg = self.partner();
        // outer points: A then C, indexed 0..a+c; middle points 0..b
        enum Hit {
            Outer(usize),
            Middle(usize),
        }
        let via_f = |k: usize| if pf[k] < a { Hit::Outer(pf[k]) } else { Hit::Middle(pf[k] - a) };
        let via_g = |k: usize| if pg[k] < b { Hit::Middle(pg[k]) } else { Hit::Outer(a + pg[k] - b) };
        let mut partner = vec![usize::MAX; a + c];
        let mut used = vec![false; b];
        for start in 0..a + c {
            if partner[start] != usize::MAX {
                continue;
            }
            let (mut hit, mut next_is_g) = if start < a {
                (via_f(start), true)
            } else {
                (via_g(b + start - a), false)
            };
            let end = loop {
                match hit {
                    Hit::Outer(k) => break k,
                    Hit::Middle(m) => {
                        used[m] = true;
                        hit = if next_is_g { via_g(m) } else { via_f(a + m) };
                        next_is_g = !next_is_g;
                    }
                }
            };
            partner[start] = end;
            partner[end] = start;
        }
        let mut loops = 0;
        for m0 in 0..b {
            if used[m0] {
                continue;
            }
            loops += 1;
            let mut m = m0;
            loop {
                used[m] = true;
                let Hit::Middle(m1) = via_f(a + m) else { unreachable!("closed loop") };
                used[m1] = true;
                let Hit::Middle(m2) = via_g(m1) else { unreachable!("closed loop") };
                if m2 == m0 {
                    break;
                }
                m = m2;
            }
        }
        Ok((Matching::from_partner(f.src, self.dst, &partner), loops))
    }

    /// Loops formed by joining source `i` to target `i` for every `i`.
    pub fn closure_loops(&self) -> Result<usize> {
        if self.src != self.dst {
            return Err(Error::Argument(format!(
                "closure trace of a non-endomorphism {} -> {}",
                self.src, self.dst
            )));
        }
        let n = self.src.len();
        let p = self.partner();
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut k = s;
            loop {
                seen[k] = true;
                let j = p[k];
                seen[j] = true;
                k = if j < n { j + n } else { j - n };
                if k == s {
                    break;
                }
            }
        }
        Ok(loops)
    }

    pub fn to_json(&self) -> Value {
        let pt = |p: &Point| {
            json!([
                match p.row {
                    Row::Src => "src",
                    Row::Dst => "dst",
                },
                p.index
            ])
        };
        json!({
            "src": self.src.to_json(),
            "dst": self.dst.to_json(),
            "pairs": self.pairs.iter().map(|(a, b)| json!([pt(a), pt(b)])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let src = ObjectWord::from_json(v.get("src").unwrap_or(&Value::Null))?;
        let dst = ObjectWord::from_json(v.get("dst").unwrap_or(&Value::Null))?;
        let pt = |p: &Value| -> Result<Point> {
            let bad = || Error::Parse(format!("bad point {p}"));
            let a = p.as_array().ok_or_else(bad)?;
            let idx = a.get(1).and_then(Value::as_u64).ok_or_else(bad)? as usize;
            match a.first().and_then(Value::as_str) {
                Some("src") => Ok(Point::src(idx)),
                Some("dst") => Ok(Point::dst(idx)),
                _ => Err(bad()),
            }
        };
        let pairs = v
            .get("pairs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matching needs `pairs`".into()))?
            .iter()
            .map(|pr| match pr.as_array().map(|a| a.as_slice()) {
                Some([x, y]) => Ok((pt(x)?, pt(y)?)),
                _ => Err(Error::Parse(format!("bad pair {pr}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Matching::new(src, dst, pairs)
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} ", self.src, self.dst)?;
        let pt = |p: &Point| match p.row {
            Row::Src => format!("s{}", p.index),
            Row::Dst => format!("d{}", p.index),
        };
        let s = self.pairs.iter().map(|(a, b)| format!("{}-{}", pt(a), pt(b))).join(" ");
        write!(f, "[{s}]")
    }
}

/// All matchings `src -> dst` in canonical order. There are `(src.r + dst.s)!`
/// of them when `src.r + dst.s = dst.r + src.s`, otherwise none.
pub fn enumerate_matchings(src: ObjectWord, dst: ObjectWord) -> Vec<Matching> {
    if src.r + dst.s != dst.r + src.s {
        return Vec::new();
    }
    let n = src.len();
    // sources: black source points and white target points; sinks: the rest
    let sources: Vec<usize> = (0..src.r).chain((0..dst.s).map(|j| n + dst.r + j)).collect();
    let sinks: Vec<usize> = (0..dst.r).map(|j| n + j).chain(src.r..n).collect();
    let k = sources.len();
    let mut out: Vec<Matching> = (0..k)
        .permutations(k)
        .map(|perm| {
            let mut partner = vec![0; n + dst.len()];
            for (i, &j) in perm.iter().enumerate() {
                partner[sources[i]] = sinks[j];
                partner[sinks[j]] = sources[i];
            }
            Matching::from_partner(src, dst, &partner)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A morphism: finite combination of matchings with coefficients in `Q[t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramLC {
    src: ObjectWord,
    dst: ObjectWord,
    terms: BTreeMap<Matching, QPoly>,
}

impl DiagramLC {
    pub fn zero(src: ObjectWord, dst: ObjectWord) -> Self {
        DiagramLC {
            src,
            dst,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(m: Matching) -> Self {
        Self::term(m, QPoly::one())
    }

    pub fn term(m: Matching, c: QPoly) -> Self {
        let mut d = Self::zero(m.src, m.dst);
        d.add_term(m, c);
        d
    }

    pub fn identity(obj: ObjectWord) -> Self {
        Self::basis(Matching::identity(obj))
    }

    pub fn src(&self) -> ObjectWord {
        self.src
    }

    pub fn dst(&self) -> ObjectWord {
        self.dst
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &QPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Matching) -> QPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Matching, c: QPoly) {
        debug_assert!(m.src == self.src && m.dst == self.dst);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if (self.src, self.dst) != (o.src, o.dst) {
            return Err(Error::Composition(format!(
                "cannot add {} -> {} and {} -> {}",
                self.src, self.dst, o.src, o.dst
            )));
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        let mut out = Self::zero(self.src, self.dst);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn compose(&self, f: &DiagramLC) -> Result<Self> {
        if f.dst != self.src {
            return Err(Error::Composition(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.src, self.dst, f.src, f.dst
            )));
        }
        let mut out = Self::zero(f.src, self.dst);
        for (mg, cg) in &self.terms {
            for (mf, cf) in &f.terms {
                let (m, loops) = mg.compose_with(mf)?;
                out.add_term(m, &(cg * cf) * &QPoly::t_pow(loops));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.src.tensor(&o.src), self.dst.tensor(&o.dst));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.tensor(m2), c1 * c2);
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        let mut out = Self::zero(self.dst.dual(), self.src.dual());
        for (m, c) in &self.terms {
            out.add_term(m.dual(), c.clone());
        }
        out
    }

    /// Categorical trace: sum of `coeff * t^loops` over the closed-up terms.
    pub fn closure_trace(&self) -> Result<QPoly> {
        if self.src != self.dst {
            return Err(Error::Argument(format!(
                "closure trace of a non-endomorphism {} -> {}",
                self.src, self.dst
            )));
        }
        let mut acc = QPoly::zero();
        for (m, c) in &self.terms {
            acc = &acc + &(c * &QPoly::t_pow(m.closure_loops()?));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "src": self.src.to_json(),
            "dst": self.dst.to_json(),
            "terms": self.terms.iter().map(|(m, c)| json!({
                "matching": m.to_json(),
                "coeff": c.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Accepts a DiagramLC object or a bare matching.
    pub fn from_json(v: &Value) -> Result<Self> {
        let Some(terms) = v.get("terms") else {
            return Ok(Self::basis(Matching::from_json(v)?));
        };
        let src = ObjectWord::from_json(v.get("src").unwrap_or(&Value::Null))?;
        let dst = ObjectWord::from_json(v.get("dst").unwrap_or(&Value::Null))?;
        let mut out = Self::zero(src, dst);
        for t in terms
            .as_array()
            .ok_or_else(|| Error::Parse("`terms` must be an array".into()))?
        {
            let m = Matching::from_json(t.get("matching").unwrap_or(&Value::Null))?;
            if (m.src, m.dst) != (src, dst) {
                return Err(Error::Argument("term has the wrong source or target".into()));
            }
            let c = match t.get("coeff") {
                Some(c) => QPoly::from_json(c)?,
                None => QPoly::one(),
            };
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl fmt::Debug for DiagramLC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0[{}->{}]", self.src, self.dst);
        }
        let s = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m:?}"))
            .join(" + ");
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(r: usize, s: usize) -> ObjectWord {
        ObjectWord::new(r, s)
    }

    #[test]
    fn matching_counts() {
        assert_eq!(enumerate_matchings(w(1, 1), w(1, 1)).len(), 2);
        assert_eq!(enumerate_matchings(w(1, 1), w(0, 0)).len(), 1);
        assert!(enumerate_matchings(w(1, 0), w(0, 1)).is_empty());
        assert_eq!(enumerate_matchings(w(2, 1), w(1, 0)).len(), 2);
        assert_eq!(enumerate_matchings(w(2, 2), w(2, 2)).len(), 24);
    }

    #[test]
    fn loop_factor() {
        let ev = DiagramLC::basis(Matching::evaluation());
        let coev = DiagramLC::basis(Matching::coevaluation());
        let loop_ = ev.compose(&coev).unwrap();
        assert_eq!(loop_, DiagramLC::identity(w(0, 0)).scale(&QPoly::t_pow(1)));
        let e = coev.compose(&ev).unwrap();
        assert_eq!(e.compose(&e).unwrap(), e.scale(&QPoly::t_pow(1)));
        let id = DiagramLC::identity(w(1, 0));
        assert_eq!(id.compose(&id).unwrap(), id);
        assert!(matches!(ev.compose(&ev), Err(Error::Composition(_))));
    }

    #[test]
    fn tensor_and_dual() {
        let a = DiagramLC::identity(w(1, 0)).tensor(&DiagramLC::identity(w(0, 1)));
        assert_eq!(a, DiagramLC::identity(w(1, 1)));
        assert_eq!(Matching::evaluation().dual(), Matching::coevaluation());
        for m in enumerate_matchings(w(2, 1), w(1, 0)) {
            assert_eq!(m.dual().dual(), m);
            assert_eq!(m.dual().src(), w(0, 1));
        }
    }

    #[test]
    fn closure_traces() {
        assert_eq!(DiagramLC::identity(w(1, 0)).closure_trace().unwrap(), QPoly::t_pow(1));
        assert_eq!(DiagramLC::identity(w(0, 0)).closure_trace().unwrap(), QPoly::one());
        assert_eq!(DiagramLC::identity(w(1, 1)).closure_trace().unwrap(), QPoly::t_pow(2));
        let swap = DiagramLC::basis(Matching::permutation(&[1, 0]));
        assert_eq!(swap.closure_trace().unwrap(), QPoly::t_pow(1));
        assert!(DiagramLC::basis(Matching::evaluation()).closure_trace().is_err());
    }

    #[test]
    fn validation_rejects_bad_colors() {
        let bad = Matching::new(w(1, 0), w(0, 1), vec![(Point::src(0), Point::dst(0))]);
        assert!(bad.is_err());
        let m = Matching::evaluation();
        assert_eq!(Matching::from_json(&m.to_json()).unwrap(), m);
    }
}
