use serde_json::{json, Map, Value};
use thiserror::Error;

use glt_core::acceptance::{run_criterion, SuiteConfig, CRITERIA};
use glt_core::diagram::{enumerate_matchings, DiagramLC, ObjectWord};
use glt_core::drinfeld::{
    drinfeld_from_weight, find_modular_specializations, gl_t_label, qp_normalize, string_decompose,
    weight_from_drinfeld, weight_from_evaluation, DrinfeldDataCR, EvaluationData, HighestWeightCR,
};
use glt_core::gl_module::{gl2_module, verma_quotient, GlnModule, MODULE_DIM_LIMIT};
use glt_core::gln_oracle::{hom_dim_gln, weyl_dim};
use glt_core::modular_weyl::{bound_scan, linkage_condition};
use glt_core::partition::{Bipartition, Partition};
use glt_core::scalars::{FactoredPoly, Field, GaloisField, TruncSeries};
use glt_core::walled_brauer::{
    dimension_poly_interpolated, semisimplicity_witness, young_symmetrizer_dimension, GRAM_BASIS_LIMIT,
    YOUNG_SIZE_LIMIT,
};
use glt_core::yangian::{
    drinfeld_of_module, gl2_explicit_drinfeld, qdet_action, renumeration_criterion, EvalSpec, RMatrix,
    YangianModule,
};
use glt_core::Error;

use crate::{Command, DrinfeldOp, YangianOp};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("unknown subcommand: {0}")]
    UnknownCommand(String),
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage_error",
            CliError::UnknownCommand(_) => "unknown_subcommand",
            CliError::MalformedJson(_) => "malformed_json",
            CliError::Lib(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Parse(_)) | CliError::Lib(Error::FieldMismatch(_)) => 2,
            CliError::Lib(_) => 1,
            _ => 2,
        }
    }
}

type Out = Result<Value, CliError>;

pub struct Context {
    pub trunc: usize,
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing `{key}`")))
}

fn usize_of(v: &Value, key: &str) -> Result<usize, Error> {
    field_of(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("`{key}` must be a nonnegative integer")))
}

fn opt_usize(v: &Value, key: &str, default: usize) -> Result<usize, Error> {
    match v.get(key) {
        None => Ok(default),
        Some(_) => usize_of(v, key),
    }
}

fn ints_of(v: &Value, key: &str) -> Result<Vec<i64>, Error> {
    field_of(v, key)?
        .as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Error::Parse(format!("`{key}` must be an array of integers")))
}

fn elem_of<F: Field>(field: &F, v: &Value, key: &str) -> Result<F::Elem, Error> {
    match v.get(key) {
        None => Ok(field.zero()),
        Some(x) => field.decode(x),
    }
}

fn with_schema(name: &str, mut payload: Value) -> Value {
    if let Value::Object(m) = &mut payload {
        m.insert("schema".into(), Value::String(format!("glt.{name}.v1")));
    }
    payload
}

pub fn run<F: Field>(field: &F, cmd: &Command, input: &Value, ctx: &Context) -> Out {
    let payload = match cmd {
        Command::HomDim { .. } => hom_dim(field, input)?,
        Command::Compose { .. } => compose(input)?,
        Command::Trace { .. } => trace(input)?,
        Command::GramDet { .. } => gram_det(input)?,
        Command::DimPoly { .. } => dim_poly(input)?,
        Command::WeylMod { .. } => match input.get("p") {
            Some(p) => {
                let p = p.as_u64().ok_or_else(|| Error::Parse("`p` must be a prime".into()))?;
                weyl_mod(&GaloisField::prime(p)?, input)?
            }
            None => weyl_mod(field, input)?,
        },
        Command::BoundScan { .. } => bound(input)?,
        Command::WitnessPrimes { .. } => witness_primes(input)?,
        Command::Yangian { op } => yangian(field, op, input, ctx)?,
        Command::Drinfeld { op } => drinfeld(field, op, input, ctx)?,
        Command::Selftest { .. } => unreachable!("selftest reads no input"),
    };
    Ok(with_schema(&cmd.name(), payload))
}

fn hom_dim<F: Field>(field: &F, v: &Value) -> Out {
    let src = ObjectWord::from_json(field_of(v, "src")?)?;
    let dst = ObjectWord::from_json(field_of(v, "dst")?)?;
    let diagrammatic = enumerate_matchings(src, dst).len();
    let balanced = src.r + dst.s == src.s + dst.r;
    let expected: u64 = if balanced { (1..=(src.r + dst.s) as u64).product() } else { 0 };
    let mut out = json!({
        "src": src.to_json(),
        "dst": dst.to_json(),
        "diagrammatic": diagrammatic,
        "expected": expected,
    });
    if let Some(n) = v.get("n") {
        let n = n.as_u64().ok_or_else(|| Error::Parse("`n` must be a positive integer".into()))? as usize;
        out["n"] = json!(n);
        out["oracle"] = json!(hom_dim_gln(n, src, dst, field)?);
    }
    Ok(out)
}

fn compose(v: &Value) -> Out {
    let g = DiagramLC::from_json(field_of(v, "g")?)?;
    let f = DiagramLC::from_json(field_of(v, "f")?)?;
    Ok(json!({"result": g.compose(&f)?.to_json()}))
}

fn trace(v: &Value) -> Out {
    let m = DiagramLC::from_json(v.get("morphism").unwrap_or(v))?;
    let t = m.closure_trace()?;
    let mut out = json!({"trace": t.to_string(), "coeffs": t.to_json()});
    if let Some(n) = v.get("n") {
        let n = n.as_i64().ok_or_else(|| Error::Parse("`n` must be an integer".into()))?;
        out["at_n"] = json!(t.eval(&glt_core::scalars::Rational::from_integer(n.into())).to_string());
    }
    Ok(out)
}

fn gram_det(v: &Value) -> Out {
    let r = usize_of(v, "r")?;
    let s = usize_of(v, "s")?;
    let limit = opt_usize(v, "limit", GRAM_BASIS_LIMIT as usize)?;
    Ok(semisimplicity_witness(r, s, limit as u64)?.to_json())
}

fn dim_poly(v: &Value) -> Out {
    let lambda = Bipartition::from_json(v.get("lambda").unwrap_or(v))?;
    let limit = opt_usize(v, "limit", YOUNG_SIZE_LIMIT)?;
    let interpolated = dimension_poly_interpolated(&lambda, limit)?;
    let one_sided: Option<&Partition> = if lambda.circ.is_empty() {
        Some(&lambda.bullet)
    } else if lambda.bullet.is_empty() {
        Some(&lambda.circ)
    } else {
        None
    };
    let symmetrizer = one_sided.map(young_symmetrizer_dimension).transpose()?;
    Ok(json!({
        "lambda": lambda.to_json(),
        "poly": interpolated.to_string(),
        "coeffs": interpolated.to_json(),
        "interpolated": interpolated.to_string(),
        "symmetrizer": symmetrizer.as_ref().map(|p| p.to_string()),
        "methods_agree": symmetrizer.map(|p| p == interpolated),
    }))
}

fn build_base<F: Field>(field: &F, v: &Value) -> Result<GlnModule<F>, Error> {
    if v.get("lambda").is_some() {
        let lambda = ints_of(v, "lambda")?;
        let d = weyl_dim(&lambda)?;
        if d > MODULE_DIM_LIMIT {
            return Err(Error::Size {
                what: "module dimension".into(),
                value: d,
                limit: MODULE_DIM_LIMIT,
            });
        }
        verma_quotient(field, &lambda)
    } else if v.get("alpha").is_some() {
        gl2_module(field, &elem_of(field, v, "alpha")?, &elem_of(field, v, "beta")?)
    } else {
        Err(Error::Parse("module needs `lambda` or `alpha`/`beta`".into()))
    }
}

fn weyl_mod<F: Field>(field: &F, v: &Value) -> Out {
    let m = build_base(field, v)?;
    let sing = m.singular_vectors();
    let mut out = json!({
        "field": field.tag().to_string(),
        "dim": m.dim(),
        "relations_ok": m.satisfies_relations()?,
        "irreducible": m.is_irreducible(),
        "singular": sing.spaces.iter().map(|s| json!({
            "offset": s.offset,
            "weight": s.weight.iter().map(|x| field.format(x)).collect::<Vec<_>>(),
            "dim": s.basis.len(),
        })).collect::<Vec<_>>(),
    });
    if let Some(Value::Array(_)) = v.get("lambda") {
        let lambda = ints_of(v, "lambda")?;
        let weights: Vec<Vec<i64>> = sing
            .spaces
            .iter()
            .map(|s| lambda.iter().zip(&s.offset).map(|(l, o)| l + o).collect())
            .collect();
        let p = field.characteristic();
        let linked = weights
            .iter()
            .filter(|w| **w != lambda)
            .all(|w| linkage_condition(&lambda, w, p));
        out["singular_weights"] = json!(weights);
        out["linkage_ok"] = json!(linked);
    }
    if v.get("include_module").and_then(Value::as_bool).unwrap_or(false) {
        out["module"] = m.to_json();
    }
    Ok(out)
}

fn bound(v: &Value) -> Out {
    let n = usize_of(v, "n")?;
    let spread = field_of(v, "max_spread")?
        .as_i64()
        .ok_or_else(|| Error::Parse("`max_spread` must be an integer".into()))?;
    let primes: Vec<u64> = match v.get("primes") {
        None => vec![3, 5, 7, 11, 13],
        Some(_) => ints_of(v, "primes")?.into_iter().map(|p| p as u64).collect(),
    };
    let limit = opt_usize(v, "limit", MODULE_DIM_LIMIT as usize)? as u64;
    let r = bound_scan(n, spread, &primes, limit)?;
    let summary = json!({
        "cells": r.rows.len(),
        "violations": r.violations().len(),
        "reducible_below_bound": r.reducible_below_bound().len(),
        "linkage_failures": r.linkage_failures().len(),
    });
    if v.get("format").and_then(Value::as_str) == Some("csv") {
        Ok(json!({"summary": summary, "csv": r.to_csv()}))
    } else {
        Ok(json!({"summary": summary, "rows": r.to_json()}))
    }
}

fn witness_primes(v: &Value) -> Out {
    let q = ints_of(v, "q")?;
    let b = usize_of(v, "bound")? as u64;
    let s = find_modular_specializations(&q, b)?;
    let mut out = s.to_json();
    out["odd_primes"] = json!(s.odd_primes());
    Ok(out)
}

/// A Yangian module read from JSON, with the `gl_2` pairs `(α + c, β + c)`
/// of its evaluation factors when all of them are plain.
struct ParsedModule<F: Field> {
    module: YangianModule<F>,
    gl2_pairs: Option<Vec<(F::Elem, F::Elem)>>,
}

fn parse_factor<F: Field>(field: &F, v: &Value, trunc: usize) -> Result<(YangianModule<F>, Option<(F::Elem, F::Elem)>), Error> {
    let base = build_base(field, v)?;
    let c = elem_of(field, v, "character")?;
    let shift = elem_of(field, v, "shift")?;
    let twist = v.get("twist").map(|t| TruncSeries::from_json(field, t, trunc)).transpose()?;
    let plain = field.is_zero(&shift) && twist.is_none();
    let pair = (base.n() == 2 && plain).then(|| {
        let hw = base.highest_weight();
        (field.add(&hw[0], &c), field.add(&hw[1], &c))
    });
    let spec = EvalSpec {
        module: base,
        character: c,
        shift,
        twist,
        order: opt_usize(v, "order", trunc)?,
    };
    Ok((YangianModule::evaluation(&spec)?, pair))
}

fn parse_module<F: Field>(field: &F, v: &Value, trunc: usize) -> Result<ParsedModule<F>, Error> {
    let single = [v.clone()];
    let factors: &[Value] = match v.get("factors") {
        Some(Value::Array(a)) if !a.is_empty() => a,
        Some(_) => return Err(Error::Parse("`factors` must be a nonempty array".into())),
        None => &single,
    };
    let mut module: Option<YangianModule<F>> = None;
    let mut pairs = Some(Vec::new());
    for f in factors {
        let (m, pair) = parse_factor(field, f, trunc)?;
        pairs = match (pairs, pair) {
            (Some(mut ps), Some(p)) => {
                ps.push(p);
                Some(ps)
            }
            _ => None,
        };
        module = Some(match module {
            None => m,
            Some(acc) => acc.tensor(&m)?,
        });
    }
    let mut module = module.expect("nonempty factors");
    if let Some(p) = v.get("perturb") {
        let idx = |k: &str| usize_of(p, k);
        let (i, j) = (idx("i")?, idx("j")?);
        if i == 0 || j == 0 {
            return Err(Error::Argument("perturbation indices are 1-based".into()));
        }
        module = module.perturbed(i - 1, j - 1, idx("m")?, idx("row")?, idx("col")?, &elem_of(field, p, "value")?)?;
        pairs = None;
    }
    Ok(ParsedModule {
        module,
        gl2_pairs: pairs,
    })
}

fn yangian<F: Field>(field: &F, op: &YangianOp, v: &Value, ctx: &Context) -> Out {
    let parsed = parse_module(field, v, ctx.trunc)?;
    let m = &parsed.module;
    match op {
        YangianOp::Build { .. } => Ok(json!({"module": m.to_json()})),
        YangianOp::Tensor { .. } => {
            if !matches!(v.get("factors"), Some(Value::Array(a)) if a.len() >= 2) {
                return Err(Error::Parse("tensor needs at least two `factors`".into()).into());
            }
            Ok(json!({"module": m.to_json()}))
        }
        YangianOp::Verify { .. } => {
            let rm = match v.get("sign").and_then(Value::as_str) {
                None | Some("standard") => RMatrix::STANDARD,
                Some("flipped") => RMatrix::FLIPPED,
                Some(s) => return Err(Error::Parse(format!("unknown sign `{s}`")).into()),
            };
            let defects = m.rtt_defects(rm)?;
            let shown: Vec<Value> = defects
                .iter()
                .take(10)
                .map(|d| json!({"i": d[0] + 1, "j": d[1] + 1, "k": d[2] + 1, "l": d[3] + 1, "r": d[4], "s": d[5]}))
                .collect();
            Ok(json!({
                "rtt": defects.is_empty(),
                "defect_count": defects.len(),
                "defects": shown,
                "gl_embedding": m.satisfies_gl_embedding(),
                "dim": m.dim(),
                "truncation": m.order(),
                "exact": m.is_exact(),
            }))
        }
        YangianOp::Weight { .. } => {
            let (sing, w) = m.singular_and_weight()?;
            Ok(json!({
                "singular_dim": sing.len(),
                "weight": w.map(|w| w.to_json()),
            }))
        }
        YangianOp::Irreducible { .. } => {
            let sing = m.singular_space();
            let cyclic = sing.first().map(|s| m.cyclic_dim(s.clone()));
            let mut out = json!({
                "irreducible": sing.len() == 1 && cyclic == Some(m.dim()),
                "dim": m.dim(),
                "singular_dim": sing.len(),
                "cyclic_dim": cyclic,
            });
            if let Some(pairs) = &parsed.gl2_pairs {
                let r = renumeration_criterion(field, pairs);
                let enc = |ps: &[(F::Elem, F::Elem)]| -> Vec<Value> {
                    ps.iter().map(|(a, b)| json!([field.encode(a), field.encode(b)])).collect()
                };
                out["criterion"] = json!({"satisfied": r.satisfied, "reordered": enc(&r.reordered)});
            }
            Ok(out)
        }
        YangianOp::Qdet { .. } => {
            let order = opt_usize(v, "qdet_order", ctx.trunc)?;
            let r = qdet_action(m, order)?;
            Ok(json!({
                "central": r.central,
                "truncation": r.order(),
                "scalar": r.scalar.as_ref().map(TruncSeries::to_json),
            }))
        }
        YangianOp::Drinfeld { .. } => {
            let polys = drinfeld_of_module(m)?;
            let mut out = json!({"polynomials": polys.iter().map(FactoredPoly::to_json).collect::<Vec<_>>()});
            if let Some(pairs) = &parsed.gl2_pairs {
                let explicit = gl2_explicit_drinfeld(field, pairs)?;
                out["explicit"] = explicit.to_json();
                out["agree"] = json!(qp_normalize(&polys[0]) == explicit);
            }
            Ok(out)
        }
    }
}

fn parse_weight<F: Field>(field: &F, v: &Value) -> Result<HighestWeightCR<F>, Error> {
    if let Some(e) = v.get("evaluation") {
        let data = EvaluationData::from_json(e)?;
        weight_from_evaluation(&data, field)
    } else {
        HighestWeightCR::from_json(field, v.get("weight").unwrap_or(v))
    }
}

fn drinfeld<F: Field>(field: &F, op: &DrinfeldOp, v: &Value, ctx: &Context) -> Out {
    match op {
        DrinfeldOp::WeightToPoly { .. } => {
            let w = parse_weight(field, v)?;
            let p = drinfeld_from_weight(&w)?;
            Ok(json!({"weight": w.to_json(), "drinfeld": p.to_json()}))
        }
        DrinfeldOp::PolyToWeight { .. } => {
            let p = DrinfeldDataCR::from_json(field, v.get("drinfeld").unwrap_or(v))?;
            let w = if p.is_trivial() {
                HighestWeightCR::trivial(field)
            } else {
                weight_from_drinfeld(&p)?
            };
            Ok(json!({"drinfeld": p.to_json(), "weight": w.to_json(), "canonical": w.canonical().to_json()}))
        }
        DrinfeldOp::Normalize { .. } => {
            if v.get("poly").is_some() || v.get("roots").is_some() {
                let p = FactoredPoly::from_json(field, v.get("poly").unwrap_or(v))?;
                let n = qp_normalize(&p);
                let strings = match string_decompose(field, n.roots()) {
                    Ok(s) => Value::Array(
                        s.iter()
                            .map(|s| json!({"start": field.encode(&s.start), "len": s.len}))
                            .collect(),
                    ),
                    Err(Error::Size { .. }) => Value::Null,
                    Err(e) => return Err(e.into()),
                };
                Ok(json!({"poly": n.to_json(), "strings": strings}))
            } else {
                let p = DrinfeldDataCR::from_json(field, v.get("drinfeld").unwrap_or(v))?;
                Ok(json!({"drinfeld": p.normalized().to_json()}))
            }
        }
        DrinfeldOp::Restrict { .. } => {
            let w = parse_weight(field, v)?;
            let n = usize_of(v, "n")?;
            let order = opt_usize(v, "order", ctx.trunc)?;
            let entries = w.restrict(n)?;
            Ok(json!({
                "n": n,
                "entries": entries.iter().map(FactoredPoly::to_json).collect::<Vec<_>>(),
                "series": entries.iter().map(|p| p.to_series(order).to_json()).collect::<Vec<_>>(),
            }))
        }
        DrinfeldOp::Label { .. } => {
            let p = DrinfeldDataCR::from_json(field, field_of(v, "drinfeld")?)?;
            let f = match v.get("twist") {
                Some(t) => TruncSeries::from_json(field, t, ctx.trunc)?,
                None => TruncSeries::one(field, ctx.trunc),
            };
            let nonstandard = v.get("nonstandard").and_then(Value::as_bool).unwrap_or(false);
            Ok(gl_t_label(&p, &f, nonstandard)?.to_json())
        }
    }
}

pub fn selftest(only: &[u32], seed: u64, trunc: usize) -> Result<(Value, Vec<String>, bool), CliError> {
    let cfg = SuiteConfig { seed, trunc };
    let ids: Vec<u32> = if only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let mut rows = Vec::new();
    let mut all = true;
    for id in ids {
        let o = run_criterion(id, &cfg).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?;
        eprintln!("{}", o.line());
        all &= o.passed;
        let mut m = Map::new();
        m.insert("id".into(), json!(o.id));
        m.insert("name".into(), json!(o.name));
        m.insert("passed".into(), json!(o.passed));
        m.insert("detail".into(), json!(o.detail));
        m.insert("budget_s".into(), json!(o.budget.as_secs()));
        rows.push(Value::Object(m));
    }
    let payload = with_schema("selftest", json!({"criteria": rows, "all_passed": all, "seed": seed}));
    Ok((payload, Vec::new(), all))
}
