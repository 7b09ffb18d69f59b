//! JSON encodings of the core types.
//!
//! Rationals are strings `"p/q"` (JSON integers are accepted on input),
//! polynomials are term lists `[{"c": "p/q", "e": [..]}]` in graded-lex
//! order, forms are `{"deg": q, "terms": [{"idx": [..], "val": [poly, ..]}]}`
//! and indices are 0-based. Decoders take the JSON pointer of the value so
//! errors can name the offending location.

use std::str::FromStr;

use atiyah_core::algebroid::Section;
use atiyah_core::connection::ModelSection;
use atiyah_core::exactcalc::{MultiPoly, PolyForm, PolyVectorField, VerifiedDiffeo};
use atiyah_core::liealg::{catalog, LieAlgebra, Subspace};
use atiyah_core::linalg::Matrix;
use atiyah_core::Rational;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

pub type Result<T> = std::result::Result<T, FormatError>;

pub fn err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(FormatError {
        path: if path.is_empty() { "/".into() } else { path.into() },
        message: message.into(),
    })
}

pub fn child(path: &str, key: impl std::fmt::Display) -> String {
    format!("{path}/{key}")
}

pub fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| err(path, "expected an object"), Ok)
}

pub fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(path, "expected an array"), Ok)
}

pub fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).map_or_else(|| err(&child(path, key), "missing field"), Ok)
}

pub fn usize_from(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .map_or_else(|| err(path, "expected a nonnegative integer"), Ok)
}

pub fn string_from<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().map_or_else(|| err(path, "expected a string"), Ok)
}

pub fn rational_from(v: &Value, path: &str) -> Result<Rational> {
    let text = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return err(path, "expected a rational string \"p/q\" or an integer"),
    };
    if let Some((_, den)) = text.split_once('/') {
        if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') && !den.trim().is_empty() {
            return err(path, format!("zero denominator in {text:?}"));
        }
    }
    Rational::from_str(&text).map_or_else(|_| err(path, format!("invalid rational {text:?}")), Ok)
}

pub fn rational_to(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals_from(v: &Value, path: &str, len: Option<usize>) -> Result<Vec<Rational>> {
    let items = array(v, path)?;
    if let Some(len) = len {
        if items.len() != len {
            return err(path, format!("expected {len} entries, found {}", items.len()));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| rational_from(x, &child(path, i)))
        .collect()
}

pub fn rationals_to(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational_to).collect())
}

/// Rows of rationals; `cols` is enforced when given.
pub fn rows_from(v: &Value, path: &str, cols: Option<usize>) -> Result<Vec<Vec<Rational>>> {
    let items = array(v, path)?;
    let mut out = Vec::with_capacity(items.len());
    let mut width = cols;
    for (i, row) in items.iter().enumerate() {
        let r = rationals_from(row, &child(path, i), width)?;
        width = Some(r.len());
        out.push(r);
    }
    Ok(out)
}

pub fn matrix_from(v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix> {
    let r = rows_from(v, path, Some(cols))?;
    if r.len() != rows {
        return err(path, format!("expected {rows} rows, found {}", r.len()));
    }
    Ok(if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(r) })
}

pub fn matrix_to(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| rationals_to(r)).collect())
}

/// Subspace given by spanning rows (a basis matrix).
pub fn subspace_from(v: &Value, path: &str, ambient: usize) -> Result<Subspace> {
    let rows = rows_from(v, path, Some(ambient))?;
    Ok(Subspace::span(ambient, rows))
}

pub fn subspace_to(s: &Subspace) -> Value {
    Value::Array(s.basis().iter().map(|r| rationals_to(r)).collect())
}

pub fn poly_from(v: &Value, path: &str, n: usize) -> Result<MultiPoly> {
    let items = array(v, path)?;
    let mut terms = Vec::with_capacity(items.len());
    for (i, t) in items.iter().enumerate() {
        let tp = child(path, i);
        let obj = object(t, &tp)?;
        let c = rational_from(field(obj, "c", &tp)?, &child(&tp, "c"))?;
        let ep = child(&tp, "e");
        let es = array(field(obj, "e", &tp)?, &ep)?;
        if es.len() != n {
            return err(&ep, format!("expected {n} exponents, found {}", es.len()));
        }
        let e = es
            .iter()
            .enumerate()
            .map(|(j, x)| {
                x.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .map_or_else(|| err(&child(&ep, j), "expected a nonnegative exponent"), Ok)
            })
            .collect::<Result<Vec<u32>>>()?;
        terms.push((c, e));
    }
    MultiPoly::from_terms(n, terms).map_or_else(|e| err(path, e.to_string()), Ok)
}

pub fn poly_to(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({"c": rational_to(c), "e": m.exponents()}))
            .collect(),
    )
}

pub fn polys_from(v: &Value, path: &str, n: usize, len: Option<usize>) -> Result<Vec<MultiPoly>> {
    let items = array(v, path)?;
    if let Some(len) = len {
        if items.len() != len {
            return err(path, format!("expected {len} entries, found {}", items.len()));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| poly_from(x, &child(path, i), n))
        .collect()
}

pub fn polys_to(ps: &[MultiPoly]) -> Value {
    Value::Array(ps.iter().map(poly_to).collect())
}

pub fn vector_field_from(v: &Value, path: &str, n: usize) -> Result<PolyVectorField> {
    let c = polys_from(v, path, n, Some(n))?;
    PolyVectorField::new(c).map_or_else(|e| err(path, e.to_string()), Ok)
}

pub fn vector_field_to(x: &PolyVectorField) -> Value {
    polys_to(x.components())
}

pub fn section_from(v: &Value, path: &str, n: usize, k: usize) -> Result<Section> {
    let obj = object(v, path)?;
    let vf = vector_field_from(field(obj, "v", path)?, &child(path, "v"), n)?;
    let gamma = polys_from(field(obj, "gamma", path)?, &child(path, "gamma"), n, Some(k))?;
    Section::new(vf, gamma).map_or_else(|e| err(path, e.to_string()), Ok)
}

pub fn section_to(s: &Section) -> Value {
    json!({"v": vector_field_to(s.v()), "gamma": polys_to(s.gamma())})
}

pub fn model_section_from(v: &Value, path: &str, n: usize, k: usize, s: usize) -> Result<ModelSection> {
    let obj = object(v, path)?;
    let c = polys_from(field(obj, "c", path)?, &child(path, "c"), n, Some(k))?;
    let a = section_from(field(obj, "a", path)?, &child(path, "a"), n, s)?;
    ModelSection::new(c, a).map_or_else(|e| err(path, e.to_string()), Ok)
}

pub fn model_section_to(s: &ModelSection) -> Value {
    json!({"c": polys_to(s.c()), "a": section_to(s.a_tilde())})
}

pub fn form_from(v: &Value, path: &str, n: usize, rank: usize, degree: Option<usize>) -> Result<PolyForm> {
    let obj = object(v, path)?;
    let deg = usize_from(field(obj, "deg", path)?, &child(path, "deg"))?;
    if let Some(d) = degree {
        if deg != d {
            return err(&child(path, "deg"), format!("expected a {d}-form, found degree {deg}"));
        }
    }
    let tp = child(path, "terms");
    let terms = array(field(obj, "terms", path)?, &tp)?;
    let mut w = PolyForm::zero(n, deg, rank);
    for (i, t) in terms.iter().enumerate() {
        let p = child(&tp, i);
        let o = object(t, &p)?;
        let ip = child(&p, "idx");
        let idx = array(field(o, "idx", &p)?, &ip)?
            .iter()
            .enumerate()
            .map(|(j, x)| usize_from(x, &child(&ip, j)))
            .collect::<Result<Vec<_>>>()?;
        if idx.len() != deg {
            return err(&ip, format!("expected {deg} indices, found {}", idx.len()));
        }
        if idx.iter().any(|&i| i >= n) {
            return err(&ip, format!("index out of range for {n} coordinates"));
        }
        let val = polys_from(field(o, "val", &p)?, &child(&p, "val"), n, Some(rank))?;
        w.add_term(&idx, val).map_or_else(|e| err(&p, e.to_string()), Ok)?;
    }
    Ok(w)
}

pub fn form_to(w: &PolyForm) -> Value {
    json!({
        "deg": w.degree(),
        "terms": w.terms().map(|(idx, val)| json!({"idx": idx, "val": polys_to(val)})).collect::<Vec<_>>(),
    })
}

/// A catalog key or an explicit structure-constant table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    Catalog(String, LieAlgebra),
    Explicit(LieAlgebra),
}

impl AlgebraSpec {
    pub fn algebra(&self) -> &LieAlgebra {
        match self {
            AlgebraSpec::Catalog(_, g) | AlgebraSpec::Explicit(g) => g,
        }
    }
}

pub fn algebra_from(v: &Value, path: &str) -> Result<AlgebraSpec> {
    if let Some(key) = v.as_str() {
        return catalog(key).map_or_else(|e| err(path, e.to_string()), |g| Ok(AlgebraSpec::Catalog(key.into(), g)));
    }
    let obj = object(v, path)?;
    let dim = usize_from(field(obj, "dim", path)?, &child(path, "dim"))?;
    let names = match obj.get("names") {
        None => Vec::new(),
        Some(ns) => {
            let np = child(path, "names");
            let items = array(ns, &np)?;
            if items.len() != dim {
                return err(&np, format!("expected {dim} names, found {}", items.len()));
            }
            items
                .iter()
                .enumerate()
                .map(|(i, x)| string_from(x, &child(&np, i)).map(String::from))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let cp = child(path, "c");
    let planes = array(field(obj, "c", path)?, &cp)?;
    if planes.len() != dim {
        return err(&cp, format!("expected {dim} rows, found {}", planes.len()));
    }
    let mut c = Vec::with_capacity(dim);
    for (a, plane) in planes.iter().enumerate() {
        let pp = child(&cp, a);
        let rows = array(plane, &pp)?;
        if rows.len() != dim {
            return err(&pp, format!("expected {dim} rows, found {}", rows.len()));
        }
        let mut block = Vec::with_capacity(dim);
        for (b, row) in rows.iter().enumerate() {
            block.push(rationals_from(row, &child(&pp, b), Some(dim))?);
        }
        c.push(block);
    }
    LieAlgebra::new(names, c).map_or_else(|e| err(&cp, e.to_string()), |g| Ok(AlgebraSpec::Explicit(g)))
}

pub fn algebra_to(spec: &AlgebraSpec) -> Value {
    match spec {
        AlgebraSpec::Catalog(key, _) => Value::String(key.clone()),
        AlgebraSpec::Explicit(g) => lie_algebra_to(g),
    }
}

pub fn lie_algebra_to(g: &LieAlgebra) -> Value {
    let c: Vec<Value> = g
        .structure_constants()
        .iter()
        .map(|plane| Value::Array(plane.iter().map(|r| rationals_to(r)).collect()))
        .collect();
    json!({"dim": g.dim(), "names": g.names(), "c": c})
}

pub fn diffeo_from(v: &Value, path: &str, n: usize) -> Result<VerifiedDiffeo> {
    let obj = object(v, path)?;
    let f = polys_from(field(obj, "forward", path)?, &child(path, "forward"), n, Some(n))?;
    let g = polys_from(field(obj, "inverse", path)?, &child(path, "inverse"), n, Some(n))?;
    VerifiedDiffeo::new(f, g).map_or_else(|e| err(path, e.to_string()), Ok)
}

pub fn diffeo_to(phi: &VerifiedDiffeo) -> Value {
    json!({"forward": polys_to(phi.forward()), "inverse": polys_to(phi.inverse())})
}

pub fn poly_matrix_from(v: &Value, path: &str, n: usize, size: usize) -> Result<Vec<Vec<MultiPoly>>> {
    let rows = array(v, path)?;
    if rows.len() != size {
        return err(path, format!("expected {size} rows, found {}", rows.len()));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| polys_from(r, &child(path, i), n, Some(size)))
        .collect()
}

pub fn poly_matrix_to(m: &[Vec<MultiPoly>]) -> Value {
    Value::Array(m.iter().map(|r| polys_to(r)).collect())
}
