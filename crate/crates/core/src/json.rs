//! JSON codec for ring elements, matrices, complexes, cut systems and bundle
//! data. Every top-level document carries `"schema": "novikov-forge/1"`;
//! rationals are exact `"p/q"` strings and integers are JSON numbers when
//! they fit in 64 bits.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::complex::{BasedChainComplex, BlockPartition, TowerComplex};
use crate::cut_system::{CutSystem, Incidence, InternalCell, StrataCell};
use crate::error::{AlgebraError, Result};
use crate::group_ring::{CohomologyClass, ExponentVector, GroupRingElement};
use crate::matrix::RingMatrix;
use crate::mpoly::LaurentMPoly;
use crate::poly::IntPoly;
use crate::ring::{CoeffField, Fp, Ring};
use crate::tower::{MonodromyRep, NovikovCtx, NovikovElement, RatFn, RatFnCtx, RationalFnR};

pub const SCHEMA: &str = "novikov-forge/1";

fn parse_err(path: &str, msg: impl std::fmt::Display) -> AlgebraError {
    AlgebraError::Parse(format!("{path}: {msg}"))
}

/// Parses text, reporting syntax errors with line and column.
pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| AlgebraError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Checks the schema tag of a top-level document.
pub fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => Ok(()),
        Some(other) => Err(parse_err("$.schema", format!("unsupported schema {other:?}, expected {SCHEMA:?}"))),
        None => Err(parse_err("$.schema", format!("missing schema tag {SCHEMA:?}"))),
    }
}

/// Adds the schema tag to an object.
pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        let mut out = Map::new();
        out.insert("schema".into(), Value::String(SCHEMA.into()));
        out.extend(std::mem::take(m));
        return Value::Object(out);
    }
    v
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(path, format!("missing field {key:?}")))
}

fn typed<T: DeserializeOwned>(v: &Value, path: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| parse_err(path, e))
}

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) => json!(k),
        None => Value::String(n.to_string()),
    }
}

pub fn int_from_json(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| parse_err(path, format!("{n} is not an integer"))),
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| parse_err(path, format!("{s:?} is not an integer"))),
        other => Err(parse_err(path, format!("expected an integer, found {other}"))),
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

/// Parses `"p/q"`, `"n"` or an integer number.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || AlgebraError::Parse(format!("{s:?} is not a rational p/q"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(AlgebraError::UndefinedInput(format!("{s:?} has zero denominator")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(path, e)),
        Value::Number(_) => int_from_json(v, path).map(BigRational::from_integer),
        other => Err(parse_err(path, format!("expected a rational string, found {other}"))),
    }
}

pub fn class_to_json(xi: &CohomologyClass) -> Value {
    json!({ "weights": xi.weights().iter().map(rational_to_json).collect::<Vec<_>>() })
}

pub fn class_from_json(v: &Value, path: &str) -> Result<CohomologyClass> {
    let ws = field(v, "weights", path)?.as_array().ok_or_else(|| parse_err(path, "weights must be an array"))?;
    let weights = ws.iter().enumerate().map(|(k, w)| rational_from_json(w, &format!("{path}.weights[{k}]"))).collect::<Result<_>>()?;
    Ok(CohomologyClass::new(weights))
}

pub fn group_ring_to_json(p: &GroupRingElement) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!({ "exp": e.0, "coef": int_to_json(c) })).collect();
    json!({ "rank": p.rank(), "terms": terms })
}

pub fn group_ring_from_json(v: &Value, path: &str) -> Result<GroupRingElement> {
    let rank: usize = typed(field(v, "rank", path)?, &format!("{path}.rank"))?;
    let terms = field(v, "terms", path)?.as_array().ok_or_else(|| parse_err(path, "terms must be an array"))?;
    let mut out = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let tp = format!("{path}.terms[{k}]");
        let exp: Vec<i64> = typed(field(t, "exp", &tp)?, &format!("{tp}.exp"))?;
        if exp.len() != rank {
            return Err(parse_err(&tp, format!("exponent of length {} in rank {rank}", exp.len())));
        }
        out.push((ExponentVector(exp), int_from_json(field(t, "coef", &tp)?, &format!("{tp}.coef"))?));
    }
    GroupRingElement::from_terms(rank, out).map_err(|e| parse_err(path, e))
}

fn mpoly_to_json<F: CoeffField>(p: &LaurentMPoly<F>, coef: impl Fn(&F) -> Value) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!({ "exp": e, "coef": coef(c) })).collect();
    json!({ "terms": terms })
}

fn mpoly_from_json<F: CoeffField>(
    v: &Value,
    path: &str,
    ctx: &RatFnCtx<F::Ctx>,
    coef: impl Fn(&Value, &str) -> Result<F>,
) -> Result<LaurentMPoly<F>> {
    let terms = field(v, "terms", path)?.as_array().ok_or_else(|| parse_err(path, "terms must be an array"))?;
    let mut out = LaurentMPoly::zero(ctx.nvars, &ctx.field);
    for (k, t) in terms.iter().enumerate() {
        let tp = format!("{path}.terms[{k}]");
        let exp: Vec<i64> = typed(field(t, "exp", &tp)?, &format!("{tp}.exp"))?;
        if exp.len() != ctx.nvars {
            return Err(parse_err(&tp, format!("exponent of length {} with {} variables", exp.len(), ctx.nvars)));
        }
        out.add_term(exp, coef(field(t, "coef", &tp)?, &format!("{tp}.coef"))?);
    }
    Ok(out)
}

/// Rings with a JSON element encoding and a complex-level header.
pub trait JsonRing: Ring {
    /// Value of the `"ring"` discriminator.
    const RING: &'static str;
    /// Extra header fields describing the context.
    fn header(ctx: &Self::Ctx) -> Map<String, Value>;
    fn ctx_from_header(doc: &Value) -> Result<Self::Ctx>;
    fn encode(&self) -> Value;
    fn decode(v: &Value, ctx: &Self::Ctx, path: &str) -> Result<Self>;
}

impl JsonRing for GroupRingElement {
    const RING: &'static str = "group_ring";

    fn header(ctx: &usize) -> Map<String, Value> {
        Map::from_iter([("rank".to_string(), json!(ctx))])
    }

    fn ctx_from_header(doc: &Value) -> Result<usize> {
        typed(field(doc, "rank", "$")?, "$.rank")
    }

    fn encode(&self) -> Value {
        group_ring_to_json(self)
    }

    fn decode(v: &Value, ctx: &usize, path: &str) -> Result<Self> {
        let p = group_ring_from_json(v, path)?;
        if p.rank() != *ctx {
            return Err(parse_err(path, format!("element of rank {} in a complex of rank {ctx}", p.rank())));
        }
        Ok(p)
    }
}

impl JsonRing for BigInt {
    const RING: &'static str = "integer";

    fn header(_: &()) -> Map<String, Value> {
        Map::new()
    }

    fn ctx_from_header(_: &Value) -> Result<()> {
        Ok(())
    }

    fn encode(&self) -> Value {
        int_to_json(self)
    }

    fn decode(v: &Value, _: &(), path: &str) -> Result<Self> {
        int_from_json(v, path)
    }
}

impl JsonRing for BigRational {
    const RING: &'static str = "scalar";

    fn header(_: &()) -> Map<String, Value> {
        Map::new()
    }

    fn ctx_from_header(_: &Value) -> Result<()> {
        Ok(())
    }

    fn encode(&self) -> Value {
        rational_to_json(self)
    }

    fn decode(v: &Value, _: &(), path: &str) -> Result<Self> {
        rational_from_json(v, path)
    }
}

impl JsonRing for RationalFnR {
    const RING: &'static str = "R";

    fn header(_: &()) -> Map<String, Value> {
        Map::new()
    }

    fn ctx_from_header(_: &Value) -> Result<()> {
        Ok(())
    }

    /// `{"num": laurent, "den": [b_m, ..., b_1, 1]}`, the denominator low degree first.
    fn encode(&self) -> Value {
        json!({
            "num": group_ring_to_json(self.numerator()),
            "den": self.denominator().coeffs().iter().map(int_to_json).collect::<Vec<_>>(),
        })
    }

    fn decode(v: &Value, _: &(), path: &str) -> Result<Self> {
        let num = group_ring_from_json(field(v, "num", path)?, &format!("{path}.num"))?;
        let den = field(v, "den", path)?.as_array().ok_or_else(|| parse_err(path, "den must be an array"))?;
        let den = den.iter().enumerate().map(|(k, c)| int_from_json(c, &format!("{path}.den[{k}]"))).collect::<Result<Vec<_>>>()?;
        RationalFnR::new(num, IntPoly::new(den)).map_err(|e| parse_err(path, e))
    }
}

impl JsonRing for NovikovElement {
    const RING: &'static str = "novikov";

    fn header(ctx: &NovikovCtx) -> Map<String, Value> {
        Map::from_iter([("xi".to_string(), class_to_json(&ctx.xi)), ("cutoff".to_string(), rational_to_json(&ctx.cutoff))])
    }

    fn ctx_from_header(doc: &Value) -> Result<NovikovCtx> {
        let xi = class_from_json(field(doc, "xi", "$")?, "$.xi")?;
        let cutoff = rational_from_json(field(doc, "cutoff", "$")?, "$.cutoff")?;
        Ok(NovikovCtx::new(xi, cutoff))
    }

    fn encode(&self) -> Value {
        let mut v = group_ring_to_json(self.stored());
        v["cutoff"] = rational_to_json(self.cutoff());
        v
    }

    fn decode(v: &Value, ctx: &NovikovCtx, path: &str) -> Result<Self> {
        let p = group_ring_from_json(v, path)?;
        let cutoff = match v.get("cutoff") {
            Some(c) => rational_from_json(c, &format!("{path}.cutoff"))?,
            None => ctx.cutoff.clone(),
        };
        NovikovElement::from_group_ring(&p, &NovikovCtx::new((*ctx.xi).clone(), cutoff)).map_err(|e| parse_err(path, e))
    }
}

impl JsonRing for RatFn<BigRational> {
    const RING: &'static str = "ratfield";

    fn header(ctx: &RatFnCtx<()>) -> Map<String, Value> {
        Map::from_iter([("nvars".to_string(), json!(ctx.nvars))])
    }

    fn ctx_from_header(doc: &Value) -> Result<RatFnCtx<()>> {
        Ok(RatFnCtx::new(typed(field(doc, "nvars", "$")?, "$.nvars")?, ()))
    }

    fn encode(&self) -> Value {
        json!({
            "num": mpoly_to_json(self.numerator(), rational_to_json),
            "den": mpoly_to_json(self.denominator(), rational_to_json),
        })
    }

    fn decode(v: &Value, ctx: &RatFnCtx<()>, path: &str) -> Result<Self> {
        let num = mpoly_from_json(field(v, "num", path)?, &format!("{path}.num"), ctx, rational_from_json)?;
        let den = mpoly_from_json(field(v, "den", path)?, &format!("{path}.den"), ctx, rational_from_json)?;
        RatFn::new(num, den).ok_or_else(|| AlgebraError::UndefinedInput(format!("{path}: zero denominator")))
    }
}

impl JsonRing for RatFn<Fp> {
    const RING: &'static str = "ratfield_fp";

    fn header(ctx: &RatFnCtx<u64>) -> Map<String, Value> {
        Map::from_iter([("nvars".to_string(), json!(ctx.nvars)), ("characteristic".to_string(), json!(ctx.field))])
    }

    fn ctx_from_header(doc: &Value) -> Result<RatFnCtx<u64>> {
        let p: u64 = typed(field(doc, "characteristic", "$")?, "$.characteristic")?;
        if !crate::ring::is_supported_prime(p) {
            return Err(parse_err("$.characteristic", format!("{p} is not a supported prime")));
        }
        Ok(RatFnCtx::new(typed(field(doc, "nvars", "$")?, "$.nvars")?, p))
    }

    fn encode(&self) -> Value {
        let c = |x: &Fp| json!(x.value());
        json!({ "num": mpoly_to_json(self.numerator(), c), "den": mpoly_to_json(self.denominator(), c) })
    }

    fn decode(v: &Value, ctx: &RatFnCtx<u64>, path: &str) -> Result<Self> {
        let p = ctx.field;
        let coef = |c: &Value, path: &str| int_from_json(c, path).map(|n| Fp::from_int(&n, &p));
        let num = mpoly_from_json(field(v, "num", path)?, &format!("{path}.num"), ctx, coef)?;
        let den = mpoly_from_json(field(v, "den", path)?, &format!("{path}.den"), ctx, coef)?;
        RatFn::new(num, den).ok_or_else(|| AlgebraError::UndefinedInput(format!("{path}: zero denominator")))
    }
}

/// Row-major nested arrays of element encodings.
pub fn matrix_to_json<R: JsonRing>(m: &RingMatrix<R>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(JsonRing::encode).collect())).collect())
}

pub fn matrix_from_json<R: JsonRing>(v: &Value, ctx: &R::Ctx, rows: usize, cols: usize, path: &str) -> Result<RingMatrix<R>> {
    let rs = v.as_array().ok_or_else(|| parse_err(path, "matrix must be an array of rows"))?;
    if rs.len() != rows {
        return Err(parse_err(path, format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in rs.iter().enumerate() {
        let row = r.as_array().ok_or_else(|| parse_err(&format!("{path}[{i}]"), "row must be an array"))?;
        if row.len() != cols {
            return Err(parse_err(&format!("{path}[{i}]"), format!("expected {cols} entries, found {}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            data.push(R::decode(x, ctx, &format!("{path}[{i}][{j}]"))?);
        }
    }
    RingMatrix::new(ctx.clone(), rows, cols, data)
}

/// `{"schema", "ring", <header>, "degrees": n, "basis", "differentials"}`.
pub fn complex_to_json<R: JsonRing>(x: &BasedChainComplex<R>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("ring".into(), json!(R::RING));
    m.extend(R::header(x.ctx()));
    m.insert("degrees".into(), json!(x.top_degree()));
    m.insert("basis".into(), json!(x.basis()));
    m.insert("differentials".into(), Value::Array(x.differentials().iter().map(matrix_to_json).collect()));
    Value::Object(m)
}

/// Decodes a complex whose `"ring"` must be `R::RING`.
pub fn complex_from_json<R: JsonRing>(doc: &Value) -> Result<BasedChainComplex<R>> {
    check_schema(doc)?;
    let ring = field(doc, "ring", "$")?.as_str().unwrap_or_default();
    if ring != R::RING {
        return Err(parse_err("$.ring", format!("expected ring {:?}, found {ring:?}", R::RING)));
    }
    let ctx = R::ctx_from_header(doc)?;
    let degrees: usize = typed(field(doc, "degrees", "$")?, "$.degrees")?;
    let basis: Vec<Vec<String>> = typed(field(doc, "basis", "$")?, "$.basis")?;
    if basis.len() != degrees + 1 {
        return Err(parse_err("$.basis", format!("{} basis lists for top degree {degrees}", basis.len())));
    }
    let ds = field(doc, "differentials", "$")?.as_array().ok_or_else(|| parse_err("$.differentials", "must be an array"))?;
    if ds.len() != degrees {
        return Err(parse_err("$.differentials", format!("{} matrices for top degree {degrees}", ds.len())));
    }
    let mut out = Vec::with_capacity(degrees);
    for (k, d) in ds.iter().enumerate() {
        let path = format!("$.differentials[{k}]");
        out.push(matrix_from_json::<R>(d, &ctx, basis[k].len(), basis[k + 1].len(), &path)?);
    }
    BasedChainComplex::new(ctx, basis, out)
}

/// A decoded complex over whichever ring its header names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyComplex {
    GroupRing(BasedChainComplex<GroupRingElement>),
    Integer(BasedChainComplex<BigInt>),
    Tower(TowerComplex),
}

pub fn any_complex_from_json(doc: &Value) -> Result<AnyComplex> {
    check_schema(doc)?;
    let ring = field(doc, "ring", "$")?.as_str().ok_or_else(|| parse_err("$.ring", "must be a string"))?;
    Ok(match ring {
        "group_ring" => AnyComplex::GroupRing(complex_from_json(doc)?),
        "integer" => AnyComplex::Integer(complex_from_json(doc)?),
        "novikov" => AnyComplex::Tower(TowerComplex::Novikov(complex_from_json(doc)?)),
        "R" => AnyComplex::Tower(TowerComplex::R(complex_from_json(doc)?)),
        "scalar" => AnyComplex::Tower(TowerComplex::Rational(complex_from_json(doc)?)),
        "ratfield" => AnyComplex::Tower(TowerComplex::RatFnQ(complex_from_json(doc)?)),
        "ratfield_fp" => AnyComplex::Tower(TowerComplex::RatFnFp(complex_from_json(doc)?)),
        other => return Err(parse_err("$.ring", format!("unknown ring {other:?}"))),
    })
}

pub fn tower_complex_to_json(x: &TowerComplex) -> Value {
    match x {
        TowerComplex::Novikov(c) => complex_to_json(c),
        TowerComplex::R(c) => complex_to_json(c),
        TowerComplex::Rational(c) => complex_to_json(c),
        TowerComplex::RatFnQ(c) => complex_to_json(c),
        TowerComplex::RatFnFp(c) => complex_to_json(c),
    }
}

pub fn any_complex_to_json(x: &AnyComplex) -> Value {
    match x {
        AnyComplex::GroupRing(c) => complex_to_json(c),
        AnyComplex::Integer(c) => complex_to_json(c),
        AnyComplex::Tower(t) => tower_complex_to_json(t),
    }
}

#[derive(Serialize, Deserialize)]
struct StrataCellJson {
    label: String,
    dim: usize,
    alpha: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct InternalCellJson {
    label: String,
    dim: usize,
}

fn chain_to_json(targets: &[(String, GroupRingElement)]) -> Value {
    Value::Array(targets.iter().map(|(c, p)| json!({ "cell": c, "coef": group_ring_to_json(p) })).collect())
}

fn chain_from_json(v: &Value, path: &str) -> Result<Vec<(String, GroupRingElement)>> {
    let items = v.as_array().ok_or_else(|| parse_err(path, "must be an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let tp = format!("{path}[{k}]");
            let cell: String = typed(field(t, "cell", &tp)?, &format!("{tp}.cell"))?;
            Ok((cell, group_ring_from_json(field(t, "coef", &tp)?, &format!("{tp}.coef"))?))
        })
        .collect()
}

pub fn cut_system_to_json(cs: &CutSystem) -> Value {
    let strata: Vec<StrataCellJson> =
        cs.strata_cells.iter().map(|c| StrataCellJson { label: c.label.clone(), dim: c.dim, alpha: c.alpha.clone() }).collect();
    let internal: Vec<InternalCellJson> = cs.internal_cells.iter().map(|c| InternalCellJson { label: c.label.clone(), dim: c.dim }).collect();
    let boundary: Map<String, Value> = cs.boundary.iter().map(|(k, v)| (k.clone(), chain_to_json(v))).collect();
    let incidence: Vec<Value> =
        cs.incidence.iter().map(|inc| json!({ "cell": inc.cell, "i": inc.i, "targets": chain_to_json(&inc.targets) })).collect();
    json!({
        "schema": SCHEMA,
        "r": cs.r,
        "xi": class_to_json(&cs.xi),
        "strata_cells": strata,
        "internal_cells": internal,
        "boundary": boundary,
        "incidence": incidence,
    })
}

/// Decodes and checks a cut system.
pub fn cut_system_from_json(doc: &Value) -> Result<CutSystem> {
    check_schema(doc)?;
    let r: usize = typed(field(doc, "r", "$")?, "$.r")?;
    let xi = class_from_json(field(doc, "xi", "$")?, "$.xi")?;
    let strata: Vec<StrataCellJson> = typed(field(doc, "strata_cells", "$")?, "$.strata_cells")?;
    let internal: Vec<InternalCellJson> = match doc.get("internal_cells") {
        Some(v) => typed(v, "$.internal_cells")?,
        None => Vec::new(),
    };
    let mut boundary = BTreeMap::new();
    if let Some(b) = doc.get("boundary") {
        let obj = b.as_object().ok_or_else(|| parse_err("$.boundary", "must be an object"))?;
        for (k, v) in obj {
            boundary.insert(k.clone(), chain_from_json(v, &format!("$.boundary.{k}"))?);
        }
    }
    let mut incidence = Vec::new();
    if let Some(list) = doc.get("incidence") {
        let items = list.as_array().ok_or_else(|| parse_err("$.incidence", "must be an array"))?;
        for (k, inc) in items.iter().enumerate() {
            let p = format!("$.incidence[{k}]");
            incidence.push(Incidence {
                cell: typed(field(inc, "cell", &p)?, &format!("{p}.cell"))?,
                i: typed(field(inc, "i", &p)?, &format!("{p}.i"))?,
                targets: chain_from_json(field(inc, "targets", &p)?, &format!("{p}.targets"))?,
            });
        }
    }
    let cs = CutSystem {
        r,
        xi,
        strata_cells: strata.into_iter().map(|c| StrataCell { label: c.label, dim: c.dim, alpha: c.alpha }).collect(),
        internal_cells: internal.into_iter().map(|c| InternalCell { label: c.label, dim: c.dim }).collect(),
        boundary,
        incidence,
    };
    cs.check()?;
    Ok(cs)
}

/// `{"schema", "blocks": [["D'", "D", "C"], ..]}`.
pub fn partition_from_json(doc: &Value) -> Result<BlockPartition> {
    check_schema(doc)?;
    Ok(BlockPartition::new(typed(field(doc, "blocks", "$")?, "$.blocks")?))
}

pub fn partition_to_json(p: &BlockPartition) -> Value {
    json!({ "schema": SCHEMA, "blocks": p.labels })
}

/// `{"schema", "dim": m, "matrices": [m x m rational matrix per basis direction]}`.
pub fn monodromy_to_json(e: &MonodromyRep) -> Value {
    json!({ "schema": SCHEMA, "dim": e.dim(), "matrices": e.matrices().iter().map(matrix_to_json).collect::<Vec<_>>() })
}

pub fn monodromy_from_json(doc: &Value) -> Result<MonodromyRep> {
    check_schema(doc)?;
    let dim: usize = typed(field(doc, "dim", "$")?, "$.dim")?;
    let ms = field(doc, "matrices", "$")?.as_array().ok_or_else(|| parse_err("$.matrices", "must be an array"))?;
    let matrices = ms
        .iter()
        .enumerate()
        .map(|(k, m)| matrix_from_json::<BigRational>(m, &(), dim, dim, &format!("$.matrices[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    MonodromyRep::new(dim, matrices)
}

/// `{"schema", "maps": [integer matrix h_i per degree]}`, sized by the complex.
pub fn chain_map_from_json(doc: &Value, counts: &[usize]) -> Result<Vec<RingMatrix<BigInt>>> {
    check_schema(doc)?;
    let ms = field(doc, "maps", "$")?.as_array().ok_or_else(|| parse_err("$.maps", "must be an array"))?;
    if ms.len() != counts.len() {
        return Err(parse_err("$.maps", format!("{} maps for {} degrees", ms.len(), counts.len())));
    }
    ms.iter().zip(counts).enumerate().map(|(k, (m, &n))| matrix_from_json::<BigInt>(m, &(), n, n, &format!("$.maps[{k}]"))).collect()
}

pub fn chain_map_to_json(h: &[RingMatrix<BigInt>]) -> Value {
    json!({ "schema": SCHEMA, "maps": h.iter().map(matrix_to_json).collect::<Vec<_>>() })
}
