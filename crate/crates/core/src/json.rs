//! JSON instance files and report rendering.
//!
//! Integers are written as JSON numbers when they fit in 53 bits and as
//! decimal strings otherwise; both forms are accepted on input. Objects use
//! sorted keys, so rendering is deterministic.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactlat::IntVec;
use crate::matroid::{basis_monomial_ideal, check_basis_exchange, Matroid, MonomialIdeal};
use crate::polymatroid::{check_polymatroid_bases, PolymatroidBases};
use crate::reescone::{ConeClassification, FacetSystem};
use crate::semigroup::{DecompositionReport, ElementStatus, EqualityReport, HilbertBasisResult, NormalityCertificate};

const SAFE_BITS: u64 = 53;

pub fn int_to_json(x: &BigInt) -> Value {
    if x.bits() <= SAFE_BITS {
        json!(x.to_i64().expect("fits in 53 bits"))
    } else {
        Value::String(x.to_string())
    }
}

pub fn vec_to_json(v: &IntVec) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn vecs_to_json(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(vec_to_json).collect())
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(parse_error(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| parse_error(format!("{s:?} is not an integer"))),
        other => Err(parse_error(format!("expected an integer, found {other}"))),
    }
}

fn parse_array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| parse_error(format!("{what} must be an array")))
}

pub fn parse_vec(v: &Value) -> Result<IntVec> {
    let entries = parse_array(v, "vector")?.iter().map(parse_int).collect::<Result<Vec<_>>>()?;
    IntVec::new(entries).map_err(|_| parse_error("vectors must be nonempty"))
}

fn parse_count(v: Option<&Value>, what: &str) -> Result<usize> {
    let v = v.ok_or_else(|| parse_error(format!("missing {what:?}")))?;
    parse_int(v)?.to_usize().ok_or_else(|| parse_error(format!("{what:?} must be a nonnegative count")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Matroid,
    Ideal,
    Polymatroid,
}

impl InstanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Matroid => "matroid",
            InstanceKind::Ideal => "ideal",
            InstanceKind::Polymatroid => "polymatroid",
        }
    }
}

/// A parsed but not yet validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Matroid { n: usize, bases: Vec<Vec<usize>> },
    Ideal { n: usize, exponents: Vec<IntVec> },
    Polymatroid { n: usize, vectors: Vec<IntVec> },
}

impl Payload {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Payload::Matroid { .. } => InstanceKind::Matroid,
            Payload::Ideal { .. } => InstanceKind::Ideal,
            Payload::Polymatroid { .. } => InstanceKind::Polymatroid,
        }
    }

    pub fn validate(&self) -> Result<Instance> {
        match self {
            Payload::Matroid { n, bases } => check_basis_exchange(*n, bases).map(Instance::Matroid),
            Payload::Ideal { n, exponents } => MonomialIdeal::new(*n, exponents.clone()).map(Instance::Ideal),
            Payload::Polymatroid { n, vectors } => check_polymatroid_bases(*n, vectors).map(Instance::Polymatroid),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: String,
    pub payload: Payload,
}

/// A validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Matroid(Matroid),
    Ideal(MonomialIdeal),
    Polymatroid(PolymatroidBases),
}

impl Instance {
    /// The monomial ideal whose Rees cone the instance defines.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        match self {
            Instance::Matroid(m) => Ok(basis_monomial_ideal(m)),
            Instance::Ideal(i) => Ok(i.clone()),
            Instance::Polymatroid(p) => p.to_ideal(),
        }
    }
}

/// Parses `{"kind", "name", "payload"}` or a bare payload object. A bare
/// payload with `"bases"` is a matroid; one with `"exponents"` is an ideal,
/// or a polymatroid when `"polymatroid": true`.
pub fn parse_instance(text: &str, default_name: &str) -> Result<InstanceFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| parse_error("instance must be a JSON object"))?;
    let name = match obj.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(parse_error("\"name\" must be a string")),
        None => default_name.to_string(),
    };
    let payload = match obj.get("payload") {
        Some(p) => {
            let kind = match obj.get("kind").and_then(Value::as_str) {
                Some("matroid") => InstanceKind::Matroid,
                Some("ideal") => InstanceKind::Ideal,
                Some("polymatroid") => InstanceKind::Polymatroid,
                Some(k) => return Err(parse_error(format!("unknown kind {k:?}"))),
                None => return Err(parse_error("wrapped instance needs a \"kind\"")),
            };
            parse_payload(p, Some(kind))?
        }
        None => parse_payload(&root, None)?,
    };
    Ok(InstanceFile { name, payload })
}

fn parse_payload(v: &Value, kind: Option<InstanceKind>) -> Result<Payload> {
    let obj = v.as_object().ok_or_else(|| parse_error("payload must be a JSON object"))?;
    let kind = match kind {
        Some(k) => k,
        None if obj.contains_key("bases") => InstanceKind::Matroid,
        None if obj.get("polymatroid") == Some(&Value::Bool(true)) => InstanceKind::Polymatroid,
        None if obj.contains_key("exponents") => InstanceKind::Ideal,
        None => return Err(parse_error("payload has neither \"bases\" nor \"exponents\"")),
    };
    let n = parse_count(obj.get("n"), "n")?;
    match kind {
        InstanceKind::Matroid => {
            let raw = obj.get("bases").ok_or_else(|| parse_error("missing \"bases\""))?;
            let bases = parse_array(raw, "bases")?
                .iter()
                .map(|b| {
                    parse_array(b, "basis")?
                        .iter()
                        .map(|x| parse_int(x)?.to_usize().ok_or_else(|| parse_error("elements must be positive")))
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Payload::Matroid { n, bases })
        }
        InstanceKind::Ideal | InstanceKind::Polymatroid => {
            let raw = obj.get("exponents").ok_or_else(|| parse_error("missing \"exponents\""))?;
            let vs = parse_array(raw, "exponents")?.iter().map(parse_vec).collect::<Result<Vec<_>>>()?;
            Ok(if kind == InstanceKind::Ideal {
                Payload::Ideal { n, exponents: vs }
            } else {
                Payload::Polymatroid { n, vectors: vs }
            })
        }
    }
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    json!({ "n": m.ground_set_size(), "bases": m.bases() })
}

pub fn ideal_to_json(i: &MonomialIdeal) -> Value {
    json!({ "n": i.n(), "exponents": vecs_to_json(i.exponents()) })
}

pub fn polymatroid_to_json(p: &PolymatroidBases) -> Value {
    json!({
        "n": p.n(),
        "exponents": vecs_to_json(p.vectors()),
        "modulus": int_to_json(p.modulus()),
        "polymatroid": true,
    })
}

pub fn facets_to_json(f: &FacetSystem) -> Value {
    json!({ "unit_normals": f.unit_normals, "ell_normals": vecs_to_json(&f.ell_normals) })
}

pub fn classification_to_json(c: &ConeClassification) -> Value {
    let mut obj = Map::new();
    obj.insert("verdict".into(), json!(c.verdict.as_str()));
    if let Some(b) = &c.offending_normal {
        obj.insert("offending_normal".into(), vec_to_json(b));
    }
    obj.insert("degrees".into(), Value::Array(c.degrees.iter().map(int_to_json).collect()));
    Value::Object(obj)
}

pub fn hilbert_to_json(h: &HilbertBasisResult) -> Value {
    json!({
        "elements": vecs_to_json(&h.elements),
        "meta": {
            "simplices": h.meta.simplices,
            "total_volume": h.meta.total_volume,
            "max_volume": h.meta.max_volume,
            "parallelepiped_points": h.meta.parallelepiped_points,
            "candidates": h.meta.candidates,
        },
    })
}

pub fn certificate_to_json(c: &NormalityCertificate) -> Value {
    let mut obj = Map::new();
    obj.insert("verdict".into(), json!(c.verdict.as_str()));
    if let Some(w) = &c.witness {
        obj.insert("witness".into(), vec_to_json(w));
    }
    obj.insert("method".into(), json!(c.method.as_str()));
    Value::Object(obj)
}

pub fn equality_to_json(r: &EqualityReport) -> Value {
    let dilations: Vec<Value> = r
        .dilations
        .iter()
        .map(|d| {
            let mut obj = Map::new();
            obj.insert("b".into(), json!(d.b));
            obj.insert("points".into(), json!(d.points));
            obj.insert("passed".into(), json!(d.passed));
            if let Some(w) = &d.witness {
                obj.insert("witness".into(), vec_to_json(w));
            }
            Value::Object(obj)
        })
        .collect();
    json!({ "b_max": r.b_max, "passed": r.passed, "semidecision": r.semidecision, "dilations": dilations })
}

pub fn decomposition_to_json(r: &DecompositionReport) -> Value {
    let elements: Vec<Value> = r
        .elements
        .iter()
        .map(|(h, s)| {
            let status = match s {
                ElementStatus::Unit(i) => json!({ "unit": i }),
                ElementStatus::InDilation(b) => json!({ "dilation": int_to_json(b) }),
                ElementStatus::Violation => json!("violation"),
            };
            json!({ "element": vec_to_json(h), "status": status })
        })
        .collect();
    json!({ "holds": r.holds, "elements": elements })
}

/// Structured error object, carrying the witness for exchange failures.
pub fn error_to_json(e: &Error) -> Value {
    let mut obj = Map::new();
    obj.insert("error".into(), json!(e.kind()));
    obj.insert("message".into(), json!(e.to_string()));
    match e {
        Error::ExchangeFailure(v) => {
            obj.insert("witness".into(), json!({ "b1_set": v.first, "b2_set": v.second, "b1": v.element }));
        }
        Error::PolymatroidExchangeFailure(v) => {
            obj.insert("witness".into(), json!({ "a": vec_to_json(&v.a), "c": vec_to_json(&v.c), "i": v.coordinate }));
        }
        Error::UnequalModuli { first, second } => {
            obj.insert("witness".into(), json!([vec_to_json(first), vec_to_json(second)]));
        }
        Error::UnequalCardinalities { first, second } => {
            obj.insert("witness".into(), json!([first, second]));
        }
        _ => {}
    }
    Value::Object(obj)
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// True when `x` needs the string form.
pub fn needs_string(x: &BigInt) -> bool {
    x.abs().bits() > SAFE_BITS
}
