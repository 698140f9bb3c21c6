//! The acceptance suite: eleven deterministic checks, each with a runtime budget.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::diagram::{enumerate_matchings, DiagramLC, ObjectWord};
use crate::drinfeld::{
    check_weight_ratios, drinfeld_from_weight, find_modular_specializations, qp_normalize, satisfies_ratio,
    weight_from_drinfeld, weight_from_evaluation, DrinfeldDataCR, EvaluationData, HighestWeightCR,
};
use crate::gl_module::GlnModule;
use crate::gln_oracle::{build_irreducible_gln, hom_dim_gln, matching_to_tensor};
use crate::linalg::Matrix;
use crate::modular_weyl::{bound_scan, gl2_irreducible_modp, weyl_module_over, ScanReport};
use crate::partition::{Bipartition, Partition};
use crate::scalars::{FactoredPoly, Field, GaloisField, QPoly, Rational, Rationals, TruncSeries};
use crate::walled_brauer::{
    dimension_poly_interpolated, gram_determinant, semisimplicity_witness, young_symmetrizer_dimension,
    WitnessVerdict, GRAM_BASIS_LIMIT, YOUNG_SIZE_LIMIT,
};
use crate::yangian::{
    bracket, drinfeld_of_module, gl2_explicit_drinfeld, qdet_action, renumeration_criterion, EvalSpec, RMatrix,
    YangianModule,
};
use crate::error::Result;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trunc: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20240601,
            trunc: crate::scalars::DEFAULT_TRUNCATION,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} {:>8.2}s / {:>3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "elapsed_s": self.elapsed.as_secs_f64(),
            "budget_s": self.budget.as_secs(),
        })
    }
}

type Runner = fn(&SuiteConfig) -> Check;

pub const CRITERIA: [(u32, &str, u64, Runner); 11] = [
    (1, "hom-dimension law", 30, hom_dimension_law),
    (2, "loop specialization", 1, loop_specialization),
    (3, "semisimplicity witness", 10, semisimplicity),
    (4, "dimension polynomials", 60, dimension_polynomials),
    (5, "RTT verification", 60, rtt_verification),
    (6, "modular bound", 120, modular_bound),
    (7, "gl2 dimension rule", 10, gl2_dimension_rule),
    (8, "tensor irreducibility", 120, tensor_irreducibility),
    (9, "Drinfeld correspondence", 60, drinfeld_correspondence),
    (10, "specialization coherence", 120, specialization_coherence),
    (11, "quantum determinant", 30, quantum_determinant),
];

pub fn run_criterion(id: u32, cfg: &SuiteConfig) -> Option<CriterionOutcome> {
    let &(id, name, budget, run) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = run(cfg);
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget);
    let (ok, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let passed = ok && elapsed < budget;
    if ok && !passed {
        detail = format!("over budget; {detail}");
    }
    Some(CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed,
        budget,
    })
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, cfg)).collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn objects(max_points: usize) -> Vec<ObjectWord> {
    (0..=max_points)
        .flat_map(|r| (0..=max_points - r).map(move |s| ObjectWord::new(r, s)))
        .collect()
}

fn hom_dimension_law(_: &SuiteConfig) -> Check {
    let mut compared = 0;
    let mut strict_drop = 0;
    for src in objects(4) {
        for dst in objects(4) {
            let balanced = src.r + dst.s == src.s + dst.r;
            let k = src.r + dst.s;
            let diagrams = enumerate_matchings(src, dst).len();
            let expected = if balanced { factorial(k) } else { 0 };
            ensure(diagrams == expected, || format!("Hom({src},{dst}) has {diagrams} diagrams, expected {expected}"))?;
            if !balanced {
                continue;
            }
            for n in 1..=5 {
                let rank = lift(hom_dim_gln(n, src, dst, &Rationals))?;
                compared += 1;
                if n > k {
                    ensure(rank == diagrams, || format!("Hom({src},{dst}) at n={n}: rank {rank} != {diagrams}"))?;
                } else {
                    ensure(rank <= diagrams, || format!("Hom({src},{dst}) at n={n}: rank {rank} > {diagrams}"))?;
                    if rank < diagrams {
                        strict_drop += 1;
                    }
                }
            }
        }
    }
    ensure(strict_drop > 0, || "no rank drop at n <= r+q".into())?;
    Ok(format!("{compared} rank comparisons, {strict_drop} strict drops"))
}

fn loop_specialization(_: &SuiteConfig) -> Check {
    let obj = ObjectWord::new(1, 0);
    let tr = lift(DiagramLC::identity(obj).closure_trace())?;
    ensure(tr == QPoly::t_pow(1), || format!("closure trace {tr} != t"))?;
    let id = crate::diagram::Matching::identity(obj);
    for n in 1..=5usize {
        let tensor = lift(matching_to_tensor(&id, n, &Rationals))?;
        let contraction = tensor.full_sum();
        let at_n = tr.eval(&Rational::from_integer((n as i64).into()));
        ensure(contraction == at_n, || format!("n={n}: contraction {contraction} != trace {at_n}"))?;
    }
    Ok("tr(id) = t; matches contraction for n = 1..5".into())
}

fn semisimplicity(_: &SuiteConfig) -> Check {
    let mut count = 0;
    for r in 0..=3 {
        for s in 0..=3 - r {
            let w = lift(semisimplicity_witness(r, s, GRAM_BASIS_LIMIT))?;
            ensure(w.verdict == WitnessVerdict::Integral, || {
                format!("gram determinant of ({r},{s}) = {} lacks an integral witness", w.determinant)
            })?;
            count += 1;
        }
    }
    let d = lift(gram_determinant(1, 1, GRAM_BASIS_LIMIT))?;
    let expected = QPoly::from_ints(&[0, 0, -1, 0, 1]);
    ensure(d == expected, || format!("det(1,1) = {d}"))?;
    Ok(format!("{count} walls integral; det(1,1) = {d}"))
}

fn dimension_polynomials(_: &SuiteConfig) -> Check {
    let mut count = 0;
    for k in 0..=4 {
        for lambda in Partition::all_of_size(k) {
            let a = lift(young_symmetrizer_dimension(&lambda))?;
            let b = lift(dimension_poly_interpolated(
                &Bipartition::new(lambda.clone(), Partition::empty()),
                YOUNG_SIZE_LIMIT,
            ))?;
            ensure(a == b, || format!("λ = {lambda}: symmetrizer {a} vs interpolation {b}"))?;
            count += 1;
        }
    }
    let one = Partition::new(vec![1]).map_err(|e| e.to_string())?;
    let mixed = lift(dimension_poly_interpolated(&Bipartition::new(one.clone(), one), YOUNG_SIZE_LIMIT))?;
    let expected = QPoly::from_ints(&[-1, 0, 1]);
    ensure(mixed == expected, || format!("((1),(1)) interpolates to {mixed}"))?;
    Ok(format!("{count} partitions agree; ((1),(1)) -> {mixed}"))
}

fn gl_weights(n: usize) -> Vec<Vec<i64>> {
    match n {
        2 => vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![3, 1], vec![1, -1]],
        _ => vec![vec![1, 0, 0], vec![1, 1, 0], vec![2, 1, 0], vec![1, 0, -1]],
    }
}

fn eval_modules<F: Field>(field: &F, n: usize, build: impl Fn(&[i64]) -> Result<GlnModule<F>>) -> Result<Vec<YangianModule<F>>> {
    gl_weights(n)
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let spec = EvalSpec::plain(build(w)?).with_character(field.from_i64(k as i64 - 1));
            YangianModule::evaluation(&spec)
        })
        .collect()
}

/// Evaluation modules, their pairwise tensor products, one shifted and one
/// twisted module, for gl_2 and gl_3 over `field`.
fn module_suite<F: Field>(
    field: &F,
    trunc: usize,
    build: impl Fn(&[i64]) -> Result<GlnModule<F>>,
) -> Result<Vec<YangianModule<F>>> {
    let mut out = Vec::new();
    for n in [2, 3] {
        let evs = eval_modules(field, n, &build)?;
        for (i, a) in evs.iter().enumerate() {
            for b in evs.iter().skip(i) {
                if a.dim() * b.dim() <= 64 {
                    out.push(a.tensor(b)?);
                }
            }
        }
        out.push(evs[1].shifted(&field.from_i64(2), trunc));
        let g = TruncSeries::new(field, vec![field.one(), field.zero(), field.from_i64(3)], trunc);
        out.push(evs[2].twisted(&g)?);
        out.push(evs[1].tensor(&evs[2].shifted(&field.from_i64(-1), trunc))?);
        out.extend(evs);
    }
    Ok(out)
}

fn rational_suite(trunc: usize) -> Result<Vec<YangianModule<Rationals>>> {
    module_suite(&Rationals, trunc, |w| build_irreducible_gln(w, &Rationals, 64))
}

fn modp_suite(p: u64, trunc: usize) -> Result<Vec<YangianModule<GaloisField>>> {
    let f = GaloisField::prime(p)?;
    module_suite(&f, trunc, |w| weyl_module_over(&f, w, 64))
}

fn rtt_verification(cfg: &SuiteConfig) -> Check {
    let q = lift(rational_suite(cfg.trunc))?;
    let mut checked = 0;
    for (k, m) in q.iter().enumerate() {
        ensure(m.verify_rtt(), || format!("rational module {k} fails RTT"))?;
        checked += 1;
    }
    for p in [5, 7, 11] {
        for (k, m) in lift(modp_suite(p, cfg.trunc))?.iter().enumerate() {
            ensure(m.verify_rtt(), || format!("module {k} over F_{p} fails RTT"))?;
            checked += 1;
        }
    }
    let target = q.iter().find(|m| m.n() == 2 && m.dim() > 2 && m.is_exact()).ok_or("no target module")?;
    let bad = lift(target.perturbed(0, 1, 1, 0, target.dim() - 1, &Rational::from_integer(1.into())))?;
    ensure(!bad.verify_rtt(), || "perturbed module passes RTT".into())?;
    ensure(!target.verify_rtt_with(RMatrix::FLIPPED), || "opposite R-matrix sign passes".into())?;
    Ok(format!("{checked} modules pass; perturbed control fails"))
}

fn modular_bound(_: &SuiteConfig) -> Check {
    let primes = [3, 5, 7, 11, 13];
    let mut rows = 0;
    for (n, spread) in [(2, 6), (3, 3)] {
        let report: ScanReport = lift(bound_scan(n, spread, &primes, 64))?;
        rows += report.rows.len();
        let v = report.violations();
        ensure(v.is_empty(), || format!("sl_{n}: {} violations, first {:?}", v.len(), v[0]))?;
        let l = report.linkage_failures();
        ensure(l.is_empty(), || format!("sl_{n}: linkage fails at {:?}", l[0]))?;
        if n == 2 {
            let hit = report
                .reducible_below_bound()
                .iter()
                .any(|r| r.lambda == vec![r.p as i64, 0]);
            ensure(hit, || "no reducible V((p,0), p) found".into())?;
        }
    }
    Ok(format!("{rows} cells, no violations, linkage holds"))
}

/// Top degree of `L(α, β)` computed from coordinates.
fn expected_top(field: &GaloisField, d: &crate::scalars::GfElem) -> u64 {
    let c = field.coords(d);
    if c.iter().skip(1).all(|&x| x == 0) {
        c[0]
    } else {
        field.p() - 1
    }
}

fn gl2_dimension_rule(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 7);
    let mut count = 0;
    for p in [3, 5, 7] {
        for m in [1, 2] {
            let f = lift(GaloisField::new(p, m))?;
            let elems = f.elements().expect("finite");
            let pairs: Vec<_> = if m == 1 {
                elems.iter().flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone()))).collect()
            } else {
                (0..60)
                    .map(|_| (elems[rng.gen_range(0..elems.len())].clone(), elems[rng.gen_range(0..elems.len())].clone()))
                    .collect()
            };
            for (a, b) in pairs {
                let d = f.sub(&a, &b);
                let l = expected_top(&f, &d);
                let module = lift(gl2_irreducible_modp(&a, &b, &f))?;
                ensure(module.dim() as u64 == l + 1, || format!("F_{p}^{m}: dim {} != {}", module.dim(), l + 1))?;
                // e f^k v = k(α - β - k + 1) f^{k-1} v vanishes exactly at k = l + 1
                let coeff = |k: u64| f.mul(&f.from_i64(k as i64), &f.add_int(&d, 1 - k as i64));
                ensure((1..=l).all(|k| !f.is_zero(&coeff(k))), || "premature singular vector".into())?;
                ensure(f.is_zero(&coeff(l + 1)), || "f^(l+1) v is not singular".into())?;
                ensure(lift(module.satisfies_relations())?, || "relations fail".into())?;
                ensure(module.is_irreducible(), || "module is reducible".into())?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} modules match the rule"))
}

type Gl2Factor = (crate::scalars::GfElem, crate::scalars::GfElem);

struct Gl2Case {
    field: GaloisField,
    factors: Vec<Gl2Factor>,
    module: YangianModule<GaloisField>,
}

fn gl2_top(f: &GaloisField, x: &Gl2Factor) -> usize {
    crate::modular_weyl::gl2_top_degree(f, &x.0, &x.1) as usize
}

struct Gl2Cache {
    field: GaloisField,
    modules: HashMap<Gl2Factor, YangianModule<GaloisField>>,
}

impl Gl2Cache {
    fn new(field: GaloisField) -> Self {
        Gl2Cache {
            field,
            modules: HashMap::new(),
        }
    }

    fn get(&mut self, x: &Gl2Factor) -> Result<YangianModule<GaloisField>> {
        if let Some(m) = self.modules.get(x) {
            return Ok(m.clone());
        }
        let base = gl2_irreducible_modp(&x.0, &x.1, &self.field)?;
        let m = YangianModule::evaluation(&EvalSpec::plain(base))?;
        self.modules.insert(x.clone(), m.clone());
        Ok(m)
    }

    fn tensor(&mut self, factors: &[Gl2Factor]) -> Result<YangianModule<GaloisField>> {
        let mut m = self.get(&factors[0])?;
        for x in &factors[1..] {
            m = m.tensor(&self.get(x)?)?;
        }
        Ok(m)
    }
}

/// All configurations over `F_p` with `β_1 = 0` and dimension at most `max_dim`.
fn gl2_configs(f: &GaloisField, k: usize, max_dim: usize) -> Vec<Vec<Gl2Factor>> {
    let elems = f.elements().expect("finite");
    let mut out: Vec<Vec<Gl2Factor>> = elems.iter().map(|a| vec![(a.clone(), f.zero())]).collect();
    for _ in 1..k {
        out = out
            .into_iter()
            .flat_map(|c| {
                let elems = &elems;
                elems.iter().flat_map(move |a| {
                    let c = c.clone();
                    elems.iter().map(move |b| {
                        let mut d = c.clone();
                        d.push((a.clone(), b.clone()));
                        d
                    })
                })
            })
            .collect();
    }
    out.retain(|c| c.iter().map(|x| gl2_top(f, x) + 1).product::<usize>() <= max_dim);
    out
}

fn gl2_cases(seed: u64, max_dim: usize) -> Result<Vec<Gl2Case>> {
    let mut out = Vec::new();
    for p in [5, 7] {
        let f = GaloisField::prime(p)?;
        let mut cache = Gl2Cache::new(f.clone());
        for k in [2, 3] {
            for factors in gl2_configs(&f, k, max_dim) {
                let module = cache.tensor(&factors)?;
                out.push(Gl2Case {
                    field: f.clone(),
                    factors,
                    module,
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in [5, 7] {
        let f = GaloisField::new(p, 2)?;
        let elems = f.elements().expect("finite");
        let mut cache = Gl2Cache::new(f.clone());
        let mut made = 0;
        while made < 25 {
            let k = rng.gen_range(2..=3);
            let factors: Vec<Gl2Factor> = (0..k)
                .map(|_| (elems[rng.gen_range(0..elems.len())].clone(), elems[rng.gen_range(0..elems.len())].clone()))
                .collect();
            if factors.iter().map(|x| gl2_top(&f, x) + 1).product::<usize>() > max_dim {
                continue;
            }
            let module = cache.tensor(&factors)?;
            out.push(Gl2Case {
                field: f.clone(),
                factors,
                module,
            });
            made += 1;
        }
    }
    Ok(out)
}

fn tensor_irreducibility(cfg: &SuiteConfig) -> Check {
    let cases = lift(gl2_cases(cfg.seed, 36))?;
    let (mut ordered, mut witnesses) = (0, 0);
    for c in &cases {
        let r = renumeration_criterion(&c.field, &c.factors);
        if r.satisfied {
            ensure(c.module.is_irreducible(), || {
                format!("criterion-ordered product {:?} over {} is reducible", c.factors, c.field.tag())
            })?;
            ordered += 1;
        } else if c.module.singular_space().len() > 1 || !c.module.is_irreducible() {
            witnesses += 1;
        }
    }
    ensure(witnesses > 0, || "no order-violating product is reducible".into())?;
    Ok(format!("{} products, {ordered} ordered all irreducible, {witnesses} violating witnesses", cases.len()))
}

fn random_roots<F: Field>(rng: &mut ChaCha8Rng, field: &F, max: usize) -> FactoredPoly<F> {
    let k = rng.gen_range(0..=max);
    let roots = (0..k)
        .map(|_| {
            let a = rng.gen_range(-4i64..=4);
            if field.characteristic() == 0 && rng.gen_bool(0.25) {
                field.from_rational(&Rational::new(a.into(), 2.into())).expect("char 0")
            } else {
                field.from_i64(a)
            }
        })
        .collect();
    FactoredPoly::from_roots(field, roots)
}

fn random_drinfeld<F: Field>(rng: &mut ChaCha8Rng, field: &F) -> DrinfeldDataCR<F> {
    loop {
        let nb = rng.gen_range(0..=2);
        let nc = rng.gen_range(0..=2);
        let d = DrinfeldDataCR::new(
            (0..nb).map(|_| random_roots(rng, field, 3)).collect(),
            (0..nc).map(|_| random_roots(rng, field, 3)).collect(),
        );
        if !d.is_trivial() {
            return d;
        }
    }
}

fn round_trip<F: Field>(rng: &mut ChaCha8Rng, field: &F, count: usize) -> std::result::Result<(), String> {
    for _ in 0..count {
        let p = random_drinfeld(rng, field);
        let hw = lift(weight_from_drinfeld(&p))?;
        ensure(check_weight_ratios(&hw, &p), || format!("ratio identities fail for {:?}", p))?;
        let back = lift(drinfeld_from_weight(&hw))?;
        ensure(back == p.normalized(), || format!("round trip {:?} -> {:?}", p, back))?;
    }
    Ok(())
}

fn gl2_rational_cases() -> Result<Vec<(Vec<(Rational, Rational)>, YangianModule<Rationals>)>> {
    let q = |k: i64| Rational::from_integer(k.into());
    let weights = [(0, 0), (1, 0), (2, 0), (3, 1), (1, -1)];
    let mut out = Vec::new();
    for &(a1, b1) in &weights {
        for &(a2, b2) in &weights {
            for c in -2..=2 {
                let m1 = YangianModule::evaluation(&EvalSpec::plain(build_irreducible_gln(&[a1, b1], &Rationals, 64)?))?;
                let base = build_irreducible_gln(&[a2, b2], &Rationals, 64)?;
                let m2 = YangianModule::evaluation(&EvalSpec::plain(base).with_character(q(c)))?;
                out.push((vec![(q(a1), q(b1)), (q(a2 + c), q(b2 + c))], m1.tensor(&m2)?));
            }
        }
    }
    Ok(out)
}

fn drinfeld_correspondence(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 9);
    round_trip(&mut rng, &Rationals, 200)?;
    round_trip(&mut rng, &GaloisField::prime(7).map_err(|e| e.to_string())?, 100)?;

    let mut matched = 0;
    for c in lift(gl2_cases(cfg.seed, 36))? {
        let integral = c.factors.iter().all(|(a, b)| bracket(&c.field, a, b).is_some());
        if !integral || c.module.singular_space().len() != 1 {
            continue;
        }
        let p = lift(drinfeld_of_module(&c.module))?;
        let e = lift(gl2_explicit_drinfeld(&c.field, &c.factors))?;
        ensure(qp_normalize(&p[0]) == e, || format!("{:?}: module {} vs explicit {}", c.factors, p[0], e))?;
        matched += 1;
    }
    for (pairs, m) in lift(gl2_rational_cases())? {
        if m.singular_space().len() != 1 {
            continue;
        }
        let p = lift(drinfeld_of_module(&m))?;
        let e = lift(gl2_explicit_drinfeld(&Rationals, &pairs))?;
        ensure(p[0] == e, || format!("{:?}: module {} vs explicit {}", pairs, p[0], e))?;
        matched += 1;
    }

    let mut normalized = 0;
    for p in [3, 5, 7] {
        let f = lift(GaloisField::prime(p))?;
        for _ in 0..50 {
            let base = random_roots(&mut rng, &f, 4);
            let c = f.from_i64(rng.gen_range(0..p as i64));
            let period = FactoredPoly::from_roots(&f, (0..p as i64).map(|k| f.add_int(&c, k)).collect());
            let fat = base.mul(&period);
            let n = qp_normalize(&fat);
            ensure(n.degree() < p as usize || base.degree() >= p as usize, || "q_p factor survived".into())?;
            // same ratio P(u+1)/P(u)
            let s = |x: &FactoredPoly<GaloisField>| x.shift_argument(&f.one());
            ensure(satisfies_ratio(&n, &s(&fat), &fat), || format!("ratio changed for {fat}"))?;
            ensure(n == qp_normalize(&base), || format!("{fat} and {base} normalize differently"))?;
            normalized += 1;
        }
    }
    Ok(format!("300 round trips; {matched} modules match the explicit formula; {normalized} normalizations exact"))
}

fn random_evaluation_data(rng: &mut ChaCha8Rng, n: usize) -> EvaluationData {
    loop {
        let nb = rng.gen_range(0..=n);
        let nc = rng.gen_range(0..=n - nb);
        let k = rng.gen_range(1..=3);
        let mut part = |len: usize| -> Vec<u32> {
            let l = rng.gen_range(0..=len);
            let mut v: Vec<u32> = (0..l).map(|_| rng.gen_range(1..=2)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        let factors: Vec<(Bipartition, Rational)> = (0..k)
            .map(|_| {
                let b = part(nb);
                let c = part(nc);
                (b, c)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .map(|(b, c)| {
                let eta = Bipartition::from_parts(&b, &c).expect("sorted parts");
                (eta, Rational::from_integer(rng.gen_range(-3i64..=3).into()))
            })
            .collect();
        if factors.iter().any(|(e, _)| e.is_empty()) {
            continue;
        }
        let dim: u64 = factors
            .iter()
            .map(|(e, _)| crate::gln_oracle::weyl_dim(&e.restrict(n).expect("fits")).expect("dominant"))
            .product();
        if dim > 128 {
            continue;
        }
        return EvaluationData::new(factors, false).expect("nonempty");
    }
}

/// Eigen-series of `t_ii(u)` on the tensor product of highest vectors.
fn built_weight<F: Field>(
    field: &F,
    data: &EvaluationData,
    n: usize,
    order: usize,
    build: &dyn Fn(&[i64]) -> Result<GlnModule<F>>,
) -> Result<Vec<TruncSeries<F>>> {
    let mut total: Option<YangianModule<F>> = None;
    for (eta, c) in data.factors() {
        let base = build(&eta.restrict(n)?)?;
        let m = YangianModule::evaluation(&EvalSpec::plain(base).with_character(field.from_rational(c)?))?;
        total = Some(match total {
            None => m,
            Some(t) => t.tensor(&m)?,
        });
    }
    let m = total.expect("nonempty data");
    let mut v = vec![field.zero(); m.dim()];
    v[0] = field.one();
    Ok(m.weight_series(&v, order)?.series)
}

fn specialization_coherence(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 10);
    let witnesses = lift(find_modular_specializations(&[-2, 0, 1], 50))?.odd_primes();
    ensure(witnesses == vec![7, 17, 23, 31, 41, 47], || format!("witness primes {:?}", witnesses))?;
    let order = cfg.trunc;
    let mut checks = 0;
    for k in 0..20 {
        let n = if k % 2 == 0 { 2 } else { 3 };
        let data = random_evaluation_data(&mut rng, n);
        let hw: HighestWeightCR<Rationals> = lift(weight_from_evaluation(&data, &Rationals))?;
        let expected = lift(hw.restrict_series(n, order))?;
        let got = lift(built_weight(&Rationals, &data, n, order, &|w| build_irreducible_gln(w, &Rationals, 64)))?;
        ensure(expected == got, || format!("instance {k} over Q: {:?} vs {:?}", expected, got))?;
        checks += 1;
        for &p in witnesses.iter().take(3) {
            let f = lift(GaloisField::prime(p))?;
            let hw = lift(weight_from_evaluation(&data, &f))?;
            let expected = lift(hw.restrict_series(n, order))?;
            let got = lift(built_weight(&f, &data, n, order, &|w| weyl_module_over(&f, w, 64)))?;
            ensure(expected == got, || format!("instance {k} over F_{p} differs"))?;
            checks += 1;
        }
    }
    Ok(format!("20 instances, {checks} weight comparisons"))
}

/// `u^2 qdet T(u) (1 - u^{-1})` for `T(u) = 1 + E/u`, from the matrices directly.
fn direct_gl2_qdet<F: Field>(m: &GlnModule<F>) -> Result<[Matrix<F>; 3]> {
    let f = m.field();
    let d = m.dim();
    let id = Matrix::identity(f, d);
    let c1 = m.e(0, 0).add(m.e(1, 1))?.sub(&id)?;
    let c2 = m.e(0, 0).sub(&id)?.mul(m.e(1, 1))?.sub(&m.e(0, 1).mul(m.e(1, 0))?)?;
    Ok([id, c1, c2])
}

fn quantum_determinant(cfg: &SuiteConfig) -> Check {
    let order = cfg.trunc.min(6);
    let mut central = 0;
    let mut scalar = 0;
    let q = lift(rational_suite(order))?;
    for (k, m) in q.iter().enumerate() {
        let r = lift(qdet_action(m, order))?;
        ensure(r.central, || format!("qdet not central on rational module {k}"))?;
        central += 1;
        if m.is_irreducible() {
            ensure(r.scalar.is_some(), || format!("qdet not scalar on irreducible module {k}"))?;
            scalar += 1;
        }
    }
    for (k, m) in lift(modp_suite(7, order))?.iter().enumerate() {
        let r = lift(qdet_action(m, order))?;
        ensure(r.central, || format!("qdet not central on module {k} over F_7"))?;
        central += 1;
        if m.is_irreducible() {
            ensure(r.scalar.is_some(), || format!("qdet not scalar on irreducible module {k} over F_7"))?;
            scalar += 1;
        }
    }
    let mut direct = 0;
    for w in gl_weights(2) {
        let base = lift(build_irreducible_gln(&w, &Rationals, 64))?;
        let expect = lift(direct_gl2_qdet(&base))?;
        let ev = lift(YangianModule::evaluation(&EvalSpec::plain(base)))?;
        let r = lift(qdet_action(&ev, order))?;
        let c = &r.coeffs;
        for (i, e) in expect.iter().enumerate() {
            let lhs = if i == 0 { c[0].clone() } else { lift(c[i].sub(&c[i - 1]))? };
            ensure(&lhs == e, || format!("λ = {:?}: coefficient {i} differs from the direct product", w))?;
        }
        for i in 3..=order {
            ensure(lift(c[i].sub(&c[i - 1]))?.is_zero(), || format!("λ = {:?}: tail coefficient {i}", w))?;
        }
        let s = r.scalar.ok_or("gl2 evaluation qdet not scalar")?;
        let (a, b) = (Rational::from_integer(w[0].into()), Rational::from_integer(w[1].into()));
        let closed = lift(
            TruncSeries::linear(&Rationals, &a, order)
                .mul(&TruncSeries::linear(&Rationals, &b, order).shift(&Rational::from_integer(1.into()))),
        )?;
        ensure(s == closed, || format!("λ = {:?}: scalar {s} vs (1 + α/u)(1 + β/(u-1))", w))?;
        direct += 1;
    }
    Ok(format!("{central} modules central, {scalar} irreducibles scalar, {direct} gl2 scalars match"))
}
