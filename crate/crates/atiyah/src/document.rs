//! Obligation documents: the single JSON input of every command.

use atiyah_core::algebroid::{Chart, IdealKind, Section, TrivialAlgebroid};
use atiyah_core::connection::{ModelAlgebroid, ModelSection};
use atiyah_core::exactcalc::{MultiPoly, PolyForm, PolyVectorField, VerifiedDiffeo};
use atiyah_core::liealg::Subspace;
use atiyah_core::linalg::Matrix;
use atiyah_core::Rational;
use serde_json::{json, Map, Value};

use crate::format::{self, child, err, field, object, AlgebraSpec, FormatError};

pub const VERSION: &str = "1";

const FIELDS: &[&str] = &[
    "version",
    "algebra",
    "chart",
    "sections",
    "point",
    "query",
    "g0",
    "connection",
    "vector_fields",
    "model",
    "model_target",
    "model_sections",
    "morphism",
    "phi1",
    "checks",
    "options",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("unknown document version {0:?}, expected \"1\"")]
    UnknownVersion(String),
    #[error("schema violation at {}", .0)]
    SchemaViolation(FormatError),
}

impl From<FormatError> for DocumentError {
    fn from(e: FormatError) -> Self {
        DocumentError::SchemaViolation(e)
    }
}

impl DocumentError {
    pub fn path(&self) -> Option<&str> {
        match self {
            DocumentError::SchemaViolation(e) => Some(&e.path),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub degree: u32,
    pub cases: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 1,
            degree: 2,
            cases: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSpec {
    pub n: usize,
    pub names: Option<Vec<String>>,
}

impl ChartSpec {
    pub fn chart(&self) -> Chart {
        match &self.names {
            Some(names) => Chart::with_names(names.clone()).expect("validated at parse time"),
            None => Chart::new(self.n).expect("validated at parse time"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySpec {
    pub kind: IdealKind,
    pub m: Vec<Rational>,
    pub g0: Option<Subspace>,
    /// Expected membership of each document section.
    pub expect: Option<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub k: usize,
    pub fiber: AlgebraSpec,
    pub omega: PolyForm,
}

impl ModelSpec {
    pub fn semisimple_dim(&self) -> usize {
        self.fiber.algebra().dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismSpec {
    pub i: Matrix,
    pub phi: VerifiedDiffeo,
    pub psi: Vec<Vec<MultiPoly>>,
    pub psi_inv: Vec<Vec<MultiPoly>>,
    pub beta: PolyForm,
    pub eta: PolyForm,
    pub r: Vec<Rational>,
    pub div_potential: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi1Spec {
    pub r: Vec<Rational>,
    pub div_potential: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub algebra: Option<AlgebraSpec>,
    pub chart: Option<ChartSpec>,
    pub sections: Vec<Section>,
    pub point: Option<Vec<Rational>>,
    pub query: Option<QuerySpec>,
    pub g0: Option<Subspace>,
    pub connection: Option<PolyForm>,
    pub vector_fields: Vec<PolyVectorField>,
    pub model: Option<ModelSpec>,
    pub model_target: Option<ModelSpec>,
    pub model_sections: Vec<ModelSection>,
    pub morphism: Option<MorphismSpec>,
    pub phi1: Option<Phi1Spec>,
    pub checks: Vec<String>,
    pub options: Options,
}

fn identity_poly_matrix(n: usize, k: usize) -> Vec<Vec<MultiPoly>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { MultiPoly::one(n) } else { MultiPoly::zero(n) })
                .collect()
        })
        .collect()
}

fn positive(v: &Value, path: &str) -> Result<u64, FormatError> {
    match v.as_u64() {
        Some(x) if x > 0 => Ok(x),
        _ => err(path, "expected a positive integer"),
    }
}

fn options_from(v: &Value, path: &str) -> Result<Options, FormatError> {
    let obj = object(v, path)?;
    let mut o = Options::default();
    for key in obj.keys() {
        if !["seed", "degree", "cases"].contains(&key.as_str()) {
            return err(&child(path, key), "unknown option");
        }
    }
    if let Some(s) = obj.get("seed") {
        o.seed = positive(s, &child(path, "seed"))?;
    }
    if let Some(d) = obj.get("degree") {
        let p = child(path, "degree");
        o.degree = u32::try_from(positive(d, &p)?).map_or_else(|_| err(&p, "degree bound too large"), Ok)?;
    }
    if let Some(c) = obj.get("cases") {
        o.cases = positive(c, &child(path, "cases"))? as usize;
    }
    Ok(o)
}

fn chart_from(v: &Value, path: &str) -> Result<ChartSpec, FormatError> {
    let obj = object(v, path)?;
    let n = format::usize_from(field(obj, "n", path)?, &child(path, "n"))?;
    if n == 0 {
        return err(&child(path, "n"), "a chart needs at least one coordinate");
    }
    let names = match obj.get("names") {
        None => None,
        Some(ns) => {
            let np = child(path, "names");
            let items = format::array(ns, &np)?;
            if items.len() != n {
                return err(&np, format!("expected {n} names, found {}", items.len()));
            }
            Some(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, x)| format::string_from(x, &child(&np, i)).map(String::from))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
    };
    Ok(ChartSpec { n, names })
}

fn model_from(v: &Value, path: &str, n: usize) -> Result<ModelSpec, FormatError> {
    let obj = object(v, path)?;
    let k = format::usize_from(field(obj, "k", path)?, &child(path, "k"))?;
    let fiber = format::algebra_from(field(obj, "fiber", path)?, &child(path, "fiber"))?;
    let omega = match obj.get("omega") {
        Some(w) => format::form_from(w, &child(path, "omega"), n, k, Some(2))?,
        None => PolyForm::zero(n, 2, k),
    };
    Ok(ModelSpec { k, fiber, omega })
}

fn model_to(m: &ModelSpec) -> Value {
    json!({"k": m.k, "fiber": format::algebra_to(&m.fiber), "omega": format::form_to(&m.omega)})
}

fn morphism_from(v: &Value, path: &str, n: usize, model: &ModelSpec) -> Result<MorphismSpec, FormatError> {
    let obj = object(v, path)?;
    let k = model.k;
    let s = model.semisimple_dim();
    let (i, phi) = match obj.get("phi0") {
        None => (Matrix::identity(k), VerifiedDiffeo::identity(n)),
        Some(p0) => {
            let pp = child(path, "phi0");
            let o = object(p0, &pp)?;
            let i = match o.get("I") {
                Some(m) => format::matrix_from(m, &child(&pp, "I"), k, k)?,
                None => Matrix::identity(k),
            };
            let phi = match o.get("phi") {
                Some(d) => format::diffeo_from(d, &child(&pp, "phi"), n)?,
                None => VerifiedDiffeo::identity(n),
            };
            (i, phi)
        }
    };
    let (psi, psi_inv, beta) = match obj.get("phis") {
        None => (identity_poly_matrix(n, s), identity_poly_matrix(n, s), PolyForm::zero(n, 1, s)),
        Some(ps) => {
            let pp = child(path, "phis");
            let o = object(ps, &pp)?;
            let psi = match o.get("Psi") {
                Some(m) => format::poly_matrix_from(m, &child(&pp, "Psi"), n, s)?,
                None => identity_poly_matrix(n, s),
            };
            let psi_inv = match o.get("Psi_inv") {
                Some(m) => format::poly_matrix_from(m, &child(&pp, "Psi_inv"), n, s)?,
                None => identity_poly_matrix(n, s),
            };
            let beta = match o.get("beta") {
                Some(b) => format::form_from(b, &child(&pp, "beta"), n, s, Some(1))?,
                None => PolyForm::zero(n, 1, s),
            };
            (psi, psi_inv, beta)
        }
    };
    let eta = match obj.get("eta") {
        Some(e) => format::form_from(e, &child(path, "eta"), n, k, Some(1))?,
        None => PolyForm::zero(n, 1, k),
    };
    let r = match obj.get("r") {
        Some(r) => format::rationals_from(r, &child(path, "r"), Some(k))?,
        None => vec![Rational::from_integer(0.into()); k],
    };
    let div_potential = match obj.get("div_potential") {
        Some(p) => format::poly_from(p, &child(path, "div_potential"), n)?,
        None => MultiPoly::zero(n),
    };
    Ok(MorphismSpec {
        i,
        phi,
        psi,
        psi_inv,
        beta,
        eta,
        r,
        div_potential,
    })
}

fn morphism_to(m: &MorphismSpec) -> Value {
    json!({
        "phi0": {"I": format::matrix_to(&m.i), "phi": format::diffeo_to(&m.phi)},
        "phis": {
            "Psi": format::poly_matrix_to(&m.psi),
            "Psi_inv": format::poly_matrix_to(&m.psi_inv),
            "beta": format::form_to(&m.beta),
        },
        "eta": format::form_to(&m.eta),
        "r": format::rationals_to(&m.r),
        "div_potential": format::poly_to(&m.div_potential),
    })
}

/// Context needed to decode payloads that live on the base or in the fiber.
struct Dims {
    n: Option<usize>,
    k: Option<usize>,
}

impl Dims {
    fn n(&self, needed_by: &str) -> Result<usize, FormatError> {
        self.n.map_or_else(|| err("/chart", format!("missing field, required by {needed_by}")), Ok)
    }

    fn k(&self, needed_by: &str) -> Result<usize, FormatError> {
        self.k.map_or_else(|| err("/algebra", format!("missing field, required by {needed_by}")), Ok)
    }
}

impl Document {
    pub fn parse(bytes: &[u8]) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_slice(bytes).map_err(|e| DocumentError::MalformedJson(e.to_string()))?;
        Document::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, DocumentError> {
        let obj = object(value, "")?;
        match obj.get("version") {
            None => return Err(FormatError { path: "/version".into(), message: "missing field".into() }.into()),
            Some(Value::String(s)) if s == VERSION => {}
            Some(Value::String(s)) => return Err(DocumentError::UnknownVersion(s.clone())),
            Some(other) => return Err(DocumentError::UnknownVersion(other.to_string())),
        }
        for key in obj.keys() {
            if !FIELDS.contains(&key.as_str()) {
                return Err(FormatError { path: child("", key), message: "unknown field".into() }.into());
            }
        }
        Ok(Document::fields_from(obj)?)
    }

    fn fields_from(obj: &Map<String, Value>) -> Result<Self, FormatError> {
        let mut doc = Document::default();
        if let Some(o) = obj.get("options") {
            doc.options = options_from(o, "/options")?;
        }
        if let Some(cs) = obj.get("checks") {
            doc.checks = format::array(cs, "/checks")?
                .iter()
                .enumerate()
                .map(|(i, c)| format::string_from(c, &child("/checks", i)).map(String::from))
                .collect::<Result<_, _>>()?;
        }
        if let Some(a) = obj.get("algebra") {
            doc.algebra = Some(format::algebra_from(a, "/algebra")?);
        }
        if let Some(c) = obj.get("chart") {
            doc.chart = Some(chart_from(c, "/chart")?);
        }
        let dims = Dims {
            n: doc.chart.as_ref().map(|c| c.n),
            k: doc.algebra.as_ref().map(|a| a.algebra().dim()),
        };
        if let Some(ss) = obj.get("sections") {
            let (n, k) = (dims.n("/sections")?, dims.k("/sections")?);
            doc.sections = format::array(ss, "/sections")?
                .iter()
                .enumerate()
                .map(|(i, s)| format::section_from(s, &child("/sections", i), n, k))
                .collect::<Result<_, _>>()?;
        }
        if let Some(p) = obj.get("point") {
            doc.point = Some(format::rationals_from(p, "/point", Some(dims.n("/point")?))?);
        }
        if let Some(q) = obj.get("query") {
            doc.query = Some(query_from(q, "/query", &dims, doc.sections.len())?);
        }
        if let Some(g) = obj.get("g0") {
            doc.g0 = Some(format::subspace_from(g, "/g0", dims.k("/g0")?)?);
        }
        if let Some(c) = obj.get("connection") {
            let (n, k) = (dims.n("/connection")?, dims.k("/connection")?);
            doc.connection = Some(format::form_from(c, "/connection", n, k, Some(1))?);
        }
        if let Some(vs) = obj.get("vector_fields") {
            let n = dims.n("/vector_fields")?;
            doc.vector_fields = format::array(vs, "/vector_fields")?
                .iter()
                .enumerate()
                .map(|(i, v)| format::vector_field_from(v, &child("/vector_fields", i), n))
                .collect::<Result<_, _>>()?;
        }
        if let Some(m) = obj.get("model") {
            doc.model = Some(model_from(m, "/model", dims.n("/model")?)?);
        }
        if let Some(m) = obj.get("model_target") {
            let target = model_from(m, "/model_target", dims.n("/model_target")?)?;
            if let Some(src) = &doc.model {
                if target.k != src.k || target.semisimple_dim() != src.semisimple_dim() {
                    return err("/model_target", "center rank and fiber dimension must match /model");
                }
            }
            doc.model_target = Some(target);
        }
        if let Some(ms) = obj.get("model_sections") {
            let model = doc.model.as_ref().map_or_else(|| err("/model", "missing field, required by /model_sections"), Ok)?;
            let n = dims.n("/model_sections")?;
            doc.model_sections = format::array(ms, "/model_sections")?
                .iter()
                .enumerate()
                .map(|(i, s)| format::model_section_from(s, &child("/model_sections", i), n, model.k, model.semisimple_dim()))
                .collect::<Result<_, _>>()?;
        }
        if let Some(m) = obj.get("morphism") {
            let model = doc.model.as_ref().map_or_else(|| err("/model", "missing field, required by /morphism"), Ok)?;
            doc.morphism = Some(morphism_from(m, "/morphism", dims.n("/morphism")?, model)?);
        }
        if let Some(p) = obj.get("phi1") {
            let (n, k) = (dims.n("/phi1")?, dims.k("/phi1")?);
            let o = object(p, "/phi1")?;
            let r = format::rationals_from(field(o, "r", "/phi1")?, "/phi1/r", Some(k))?;
            let div_potential = match o.get("div_potential") {
                Some(q) => format::poly_from(q, "/phi1/div_potential", n)?,
                None => MultiPoly::zero(n),
            };
            doc.phi1 = Some(Phi1Spec { r, div_potential });
        }
        Ok(doc)
    }

    /// Canonical JSON form; parsing it gives back an equal document.
    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("version".into(), json!(VERSION));
        if let Some(a) = &self.algebra {
            out.insert("algebra".into(), format::algebra_to(a));
        }
        if let Some(c) = &self.chart {
            let mut v = json!({"n": c.n});
            if let Some(names) = &c.names {
                v["names"] = json!(names);
            }
            out.insert("chart".into(), v);
        }
        if !self.sections.is_empty() {
            out.insert("sections".into(), Value::Array(self.sections.iter().map(format::section_to).collect()));
        }
        if let Some(p) = &self.point {
            out.insert("point".into(), format::rationals_to(p));
        }
        if let Some(q) = &self.query {
            let mut v = json!({"kind": q.kind.as_str(), "m": format::rationals_to(&q.m)});
            if let Some(g0) = &q.g0 {
                v["g0"] = format::subspace_to(g0);
            }
            if let Some(e) = &q.expect {
                v["expect"] = json!(e);
            }
            out.insert("query".into(), v);
        }
        if let Some(g0) = &self.g0 {
            out.insert("g0".into(), format::subspace_to(g0));
        }
        if let Some(c) = &self.connection {
            out.insert("connection".into(), format::form_to(c));
        }
        if !self.vector_fields.is_empty() {
            out.insert(
                "vector_fields".into(),
                Value::Array(self.vector_fields.iter().map(format::vector_field_to).collect()),
            );
        }
        if let Some(m) = &self.model {
            out.insert("model".into(), model_to(m));
        }
        if let Some(m) = &self.model_target {
            out.insert("model_target".into(), model_to(m));
        }
        if !self.model_sections.is_empty() {
            out.insert(
                "model_sections".into(),
                Value::Array(self.model_sections.iter().map(format::model_section_to).collect()),
            );
        }
        if let Some(m) = &self.morphism {
            out.insert("morphism".into(), morphism_to(m));
        }
        if let Some(p) = &self.phi1 {
            out.insert(
                "phi1".into(),
                json!({"r": format::rationals_to(&p.r), "div_potential": format::poly_to(&p.div_potential)}),
            );
        }
        if !self.checks.is_empty() {
            out.insert("checks".into(), json!(self.checks));
        }
        out.insert(
            "options".into(),
            json!({"seed": self.options.seed, "degree": self.options.degree, "cases": self.options.cases}),
        );
        Value::Object(out)
    }

    pub fn require_algebra(&self) -> Result<&AlgebraSpec, FormatError> {
        self.algebra.as_ref().map_or_else(|| err("/algebra", "missing field"), Ok)
    }

    pub fn require_chart(&self) -> Result<&ChartSpec, FormatError> {
        self.chart.as_ref().map_or_else(|| err("/chart", "missing field"), Ok)
    }

    pub fn require_model(&self) -> Result<&ModelSpec, FormatError> {
        self.model.as_ref().map_or_else(|| err("/model", "missing field"), Ok)
    }

    pub fn algebroid(&self) -> Result<TrivialAlgebroid, FormatError> {
        let g = self.require_algebra()?.algebra().clone();
        Ok(TrivialAlgebroid::new(self.require_chart()?.chart(), g))
    }

    /// The source model; `diagnostic` admits a non-closed `omega`.
    pub fn model_algebroid(&self, diagnostic: bool) -> Result<ModelAlgebroid, FormatError> {
        let spec = self.require_model()?;
        self.build_model(spec, "/model", diagnostic)
    }

    /// The target model, defaulting to the source.
    pub fn target_algebroid(&self) -> Result<ModelAlgebroid, FormatError> {
        match &self.model_target {
            Some(spec) => self.build_model(spec, "/model_target", false),
            None => self.model_algebroid(false),
        }
    }

    fn build_model(&self, spec: &ModelSpec, path: &str, diagnostic: bool) -> Result<ModelAlgebroid, FormatError> {
        let chart = self.require_chart()?.chart();
        let fiber = spec.fiber.algebra().clone();
        let built = if diagnostic {
            ModelAlgebroid::diagnostic(chart, spec.k, fiber, spec.omega.clone())
        } else {
            ModelAlgebroid::new(chart, spec.k, fiber, spec.omega.clone())
        };
        built.map_or_else(|e| err(path, e.to_string()), Ok)
    }
}

fn query_from(v: &Value, path: &str, dims: &Dims, sections: usize) -> Result<QuerySpec, FormatError> {
    let obj = object(v, path)?;
    let kp = child(path, "kind");
    let kind_text = format::string_from(field(obj, "kind", path)?, &kp)?;
    let kind: IdealKind = kind_text
        .parse()
        .map_or_else(|_| err(&kp, format!("unknown ideal kind {kind_text:?}")), Ok)?;
    let m = format::rationals_from(field(obj, "m", path)?, &child(path, "m"), Some(dims.n(path)?))?;
    let g0 = match obj.get("g0") {
        Some(g) => Some(format::subspace_from(g, &child(path, "g0"), dims.k(path)?)?),
        None => None,
    };
    if (kind == IdealKind::KmG0) != g0.is_some() {
        return err(&child(path, "g0"), "g0 is required exactly for K(m,g0)");
    }
    let expect = match obj.get("expect") {
        None => None,
        Some(e) => {
            let ep = child(path, "expect");
            let items = format::array(e, &ep)?;
            if items.len() != sections {
                return err(&ep, format!("expected {sections} entries, one per section"));
            }
            Some(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, b)| b.as_bool().map_or_else(|| err(&child(&ep, i), "expected a boolean"), Ok))
                    .collect::<Result<_, _>>()?,
            )
        }
    };
    Ok(QuerySpec { kind, m, g0, expect })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(v: Value) -> Result<Document, DocumentError> {
        Document::from_value(&v)
    }

    #[test]
    fn minimal_document() {
        let d = parse(json!({"version": "1", "algebra": "sl2", "checks": ["lie-axioms"]})).unwrap();
        assert_eq!(d.checks, vec!["lie-axioms"]);
        assert_eq!(d.options, Options::default());
        assert_eq!(d.algebra.unwrap().algebra().dim(), 3);
    }

    #[test]
    fn version_and_json_errors() {
        assert!(matches!(Document::parse(b"{"), Err(DocumentError::MalformedJson(_))));
        assert!(matches!(parse(json!({"version": "2"})), Err(DocumentError::UnknownVersion(_))));
        assert_eq!(parse(json!({})).unwrap_err().path(), Some("/version"));
        assert_eq!(parse(json!({"version": "1", "bogus": 1})).unwrap_err().path(), Some("/bogus"));
    }

    #[test]
    fn schema_paths() {
        let e = parse(json!({"version": "1", "algebra": {"dim": 1}})).unwrap_err();
        assert_eq!(e.path(), Some("/algebra/c"));
        let e = parse(json!({"version": "1", "algebra": "sl2", "chart": {"n": 1}, "point": ["1/0"]})).unwrap_err();
        assert_eq!(e.path(), Some("/point/0"));
        assert!(e.to_string().contains("zero denominator"));
        let e = parse(json!({"version": "1", "options": {"seed": 0}})).unwrap_err();
        assert_eq!(e.path(), Some("/options/seed"));
        let e = parse(json!({"version": "1", "algebra": "sl2", "sections": []})).unwrap_err();
        assert_eq!(e.path(), Some("/chart"));
    }

    #[test]
    fn query_requires_g0_exactly_for_kmg0() {
        let base = |q: Value| json!({"version": "1", "algebra": "sl2+sl2", "chart": {"n": 2}, "query": q});
        assert!(parse(base(json!({"kind": "K(m)", "m": ["0", "0"]}))).is_ok());
        let e = parse(base(json!({"kind": "K(m, g0)", "m": ["0", "0"]}))).unwrap_err();
        assert_eq!(e.path(), Some("/query/g0"));
    }

    #[test]
    fn morphism_defaults_round_trip() {
        let d = parse(json!({
            "version": "1",
            "chart": {"n": 2},
            "model": {"k": 1, "fiber": "sl2"},
            "morphism": {"r": ["2"]},
        }))
        .unwrap();
        let m = d.morphism.as_ref().unwrap();
        assert_eq!(m.i, Matrix::identity(1));
        assert_eq!(m.psi.len(), 3);
        let again = parse(d.to_value()).unwrap();
        assert_eq!(again, d);
        assert_eq!(again.to_value(), d.to_value());
    }
}
