//! JSON documents and CSV output for the library types. Documents carry the
//! field letter and the rank, and numeric payloads are coefficient arrays.

use serde_json::{json, Map, Value};

use crate::algebra::{AlgElem, AlgVector, FieldTag, Matrix};
use crate::boundary::{BasisTag, GroupElem};
use crate::dynamics::{GeneratorSet, Generators, LimitClass, LimitPoint, LimitSetReport, OrbitCloud};
use crate::error::{Error, Result};
use crate::heisenberg::{NPoint, Rotation};
use crate::similarity::Similarity;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| parse_err(format!("{what}: expected a number")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what}: expected an object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

pub fn elem_to_value(e: &AlgElem) -> Value {
    Value::Array(e.coeffs().iter().map(|&c| json!(c)).collect())
}

pub fn elem_from_value(tag: FieldTag, v: &Value) -> Result<AlgElem> {
    let arr = as_array(v, "coefficient sequence")?;
    if arr.len() != tag.dim() {
        return Err(parse_err(format!(
            "coefficient sequence of length {} does not match field dimension {}",
            arr.len(),
            tag.dim()
        )));
    }
    let coeffs = arr
        .iter()
        .map(|c| as_f64(c, "coefficient"))
        .collect::<Result<Vec<_>>>()?;
    AlgElem::from_coeffs(tag, &coeffs)
}

pub fn vector_to_value(v: &AlgVector) -> Value {
    Value::Array(v.entries().iter().map(elem_to_value).collect())
}

pub fn vector_from_value(tag: FieldTag, v: &Value) -> Result<AlgVector> {
    let arr = as_array(v, "vector")?;
    let entries = arr
        .iter()
        .map(|e| elem_from_value(tag, e))
        .collect::<Result<Vec<_>>>()?;
    AlgVector::new(tag, entries)
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| elem_to_value(m.at(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_from_value(tag: FieldTag, v: &Value) -> Result<Matrix> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|row| {
            as_array(row, "matrix row")?
                .iter()
                .map(|e| elem_from_value(tag, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(tag, rows)
}

pub fn npoint_to_value(x: &NPoint) -> Value {
    json!({ "u": vector_to_value(x.u()), "center": elem_to_value(x.center()) })
}

pub fn npoint_from_value(tag: FieldTag, v: &Value) -> Result<NPoint> {
    let obj = as_object(v, "group point")?;
    let u = vector_from_value(tag, field(obj, "u")?)?;
    let center = elem_from_value(tag, field(obj, "center")?)?;
    NPoint::new(u, center)
}

pub fn rotation_to_value(r: &Rotation) -> Value {
    match r {
        Rotation::Unitary { p, alpha } => {
            json!({ "P": matrix_to_value(p), "alpha": elem_to_value(alpha) })
        }
        Rotation::Octonion { mus } => {
            json!({ "mus": Value::Array(mus.iter().map(elem_to_value).collect()) })
        }
    }
}

pub fn rotation_from_value(tag: FieldTag, v: &Value) -> Result<Rotation> {
    let obj = as_object(v, "rotation")?;
    if let Some(mus) = obj.get("mus") {
        let mus = as_array(mus, "rotation factors")?
            .iter()
            .map(|m| elem_from_value(tag, m))
            .collect::<Result<Vec<_>>>()?;
        Rotation::octonion(mus)
    } else {
        let p = matrix_from_value(tag, field(obj, "P")?)?;
        let alpha = elem_from_value(tag, field(obj, "alpha")?)?;
        Rotation::unitary(p, alpha)
    }
}

pub fn similarity_to_value(f: &Similarity) -> Value {
    json!({
        "lambda": f.lambda(),
        "rotation": rotation_to_value(f.rot()),
        "c": npoint_to_value(f.c()),
    })
}

pub fn similarity_from_value(tag: FieldTag, v: &Value) -> Result<Similarity> {
    let obj = as_object(v, "similarity")?;
    let lambda = as_f64(field(obj, "lambda")?, "lambda")?;
    let rot = rotation_from_value(tag, field(obj, "rotation")?)?;
    let c = npoint_from_value(tag, field(obj, "c")?)?;
    Similarity::new(lambda, rot, c)
}

pub fn basis_from_value(v: &Value) -> Result<BasisTag> {
    match v.as_str() {
        Some("E") => Ok(BasisTag::E),
        Some("F") => Ok(BasisTag::F),
        _ => Err(parse_err("basis must be \"E\" or \"F\"")),
    }
}

pub fn basis_to_value(b: BasisTag) -> Value {
    json!(match b {
        BasisTag::E => "E",
        BasisTag::F => "F",
    })
}

pub fn group_elem_to_value(g: &GroupElem) -> Value {
    json!({ "basis": basis_to_value(g.basis()), "matrix": matrix_to_value(g.matrix()) })
}

pub fn group_elem_from_value(tag: FieldTag, v: &Value) -> Result<GroupElem> {
    let obj = as_object(v, "isometry")?;
    let basis = basis_from_value(field(obj, "basis")?)?;
    let mat = matrix_from_value(tag, field(obj, "matrix")?)?;
    GroupElem::new(mat, basis)
}

/// Field tag and rank of a tagged document: `{ "field": "R|C|H|O", "n": k, ... }`.
pub fn document_header(v: &Value) -> Result<(FieldTag, usize)> {
    let obj = as_object(v, "document")?;
    let letter = field(obj, "field")?
        .as_str()
        .ok_or_else(|| parse_err("field letter must be a string"))?;
    let tag = FieldTag::from_letter(letter)
        .ok_or_else(|| parse_err(format!("unknown field letter \"{letter}\"")))?;
    let n = field(obj, "n")?
        .as_u64()
        .ok_or_else(|| parse_err("rank n must be a positive integer"))? as usize;
    if n < 2 {
        return Err(parse_err("rank n must be at least 2"));
    }
    if tag == FieldTag::Octonion && n != 2 {
        return Err(parse_err("octonionic rank is restricted to n = 2"));
    }
    Ok((tag, n))
}

/// `{ "field": ..., "n": ..., "mode": "sim"|"matrix", "generators": [...] }`.
pub fn generator_set_from_value(v: &Value) -> Result<GeneratorSet> {
    let (tag, n) = document_header(v)?;
    let obj = as_object(v, "generator document")?;
    let mode = field(obj, "mode")?
        .as_str()
        .ok_or_else(|| parse_err("mode must be a string"))?;
    let gens = as_array(field(obj, "generators")?, "generators")?;
    let gens = match mode {
        "sim" => Generators::Sim(
            gens.iter()
                .map(|g| similarity_from_value(tag, g))
                .collect::<Result<Vec<_>>>()?,
        ),
        "matrix" => Generators::Matrix(
            gens.iter()
                .map(|g| group_elem_from_value(tag, g))
                .collect::<Result<Vec<_>>>()?,
        ),
        other => return Err(parse_err(format!("unknown mode \"{other}\""))),
    };
    GeneratorSet::new(tag, n, gens)
}

fn limit_point_to_value(p: &LimitPoint) -> Value {
    match p {
        LimitPoint::Infinity => json!("infinity"),
        LimitPoint::Finite(x) => npoint_to_value(x),
    }
}

pub fn limit_report_to_value(r: &LimitSetReport) -> Value {
    let class = match &r.class {
        LimitClass::Empty => json!({ "kind": "Empty" }),
        LimitClass::Single(p) => json!({ "kind": "Single", "point": limit_point_to_value(p) }),
        LimitClass::Pair(a, b) => json!({
            "kind": "Pair",
            "points": [limit_point_to_value(a), limit_point_to_value(b)],
        }),
        LimitClass::Larger => json!({ "kind": "Larger" }),
    };
    json!({
        "classification": class,
        "evidence": r
            .evidence
            .iter()
            .map(|(p, wl)| json!({ "point": limit_point_to_value(p), "word_len": wl }))
            .collect::<Vec<_>>(),
        "contains_infinity": r.contains_infinity,
        "max_lambda": r.max_lambda,
        "min_lambda": r.min_lambda,
        "low_confidence": r.low_confidence,
        "assumes_discrete": r.assumes_discrete,
    })
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV rows: coordinates, word length, word; '\n' line endings.
pub fn orbit_to_csv(cloud: &OrbitCloud) -> String {
    let mut out = String::new();
    let width = cloud.points.first().map(|p| p.coords.len()).unwrap_or(0);
    for k in 0..width {
        out.push_str(&format!("x{k},"));
    }
    out.push_str("word_len,word\n");
    for p in &cloud.points {
        for c in &p.coords {
            out.push_str(&format_number(*c));
            out.push(',');
        }
        out.push_str(&format!("{},{}\n", p.word_len, p.word));
    }
    out
}

pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))
}
