//! Subcommands: each turns a document into a list of named checks.

use std::error::Error;
use std::time::Instant;

use atiyah_core::algebroid::{FiberLinearFunction, IdealKind, PointIdealQuery, Section, TrivialAlgebroid};
use atiyah_core::connection::{Connection, ModelAlgebroid, ModelSection};
use atiyah_core::exactcalc::{MultiPoly, PolyForm, PolyVectorField};
use atiyah_core::liealg::{
    center, derived_ideal, killing_semisimple, quotient_by_center, reductive_decomposition, simple_and_maximal_ideals,
    LieAlgebra, LieError, Subspace,
};
use atiyah_core::morphism::{jet_family, model_jet_family, CenterIso, Divergence, FullMorphism, SemisimpleIso};
use atiyah_core::Rational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::corpus::Corpus;
use crate::document::Document;
use crate::format::{self, err, FormatError};
use crate::report::{CheckResult, Report};

type Out = Result<CheckResult, Box<dyn Error>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    LieAnalyze,
    LieDecompose,
    AlgebroidBracket,
    AlgebroidJacobi,
    AlgebroidMembership,
    AlgebroidNormalizer,
    AlgebroidWitness,
    AlgebroidPoisson,
    ConnectionCurvature,
    ConnectionModelForm,
    ModelBracket,
    ModelJacobi,
    MorphismVerify,
    MorphismResidual,
    MorphismDecompose,
}

impl Command {
    pub const ALL: [Command; 15] = [
        Command::LieAnalyze,
        Command::LieDecompose,
        Command::AlgebroidBracket,
        Command::AlgebroidJacobi,
        Command::AlgebroidMembership,
        Command::AlgebroidNormalizer,
        Command::AlgebroidWitness,
        Command::AlgebroidPoisson,
        Command::ConnectionCurvature,
        Command::ConnectionModelForm,
        Command::ModelBracket,
        Command::ModelJacobi,
        Command::MorphismVerify,
        Command::MorphismResidual,
        Command::MorphismDecompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::LieAnalyze => "lie analyze",
            Command::LieDecompose => "lie decompose",
            Command::AlgebroidBracket => "algebroid bracket",
            Command::AlgebroidJacobi => "algebroid jacobi",
            Command::AlgebroidMembership => "algebroid membership",
            Command::AlgebroidNormalizer => "algebroid normalizer",
            Command::AlgebroidWitness => "algebroid witness",
            Command::AlgebroidPoisson => "algebroid poisson",
            Command::ConnectionCurvature => "connection curvature",
            Command::ConnectionModelForm => "connection model-form",
            Command::ModelBracket => "model bracket",
            Command::ModelJacobi => "model jacobi",
            Command::MorphismVerify => "morphism verify",
            Command::MorphismResidual => "morphism residual",
            Command::MorphismDecompose => "morphism decompose",
        }
    }

    pub fn from_words(group: &str, action: &str) -> Option<Self> {
        let name = format!("{group} {action}");
        Command::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Every check the command knows, in report order.
    pub fn checks(self) -> &'static [&'static str] {
        match self {
            Command::LieAnalyze => &["lie-axioms", "killing", "center", "derived", "reductive"],
            Command::LieDecompose => &["reductive", "simple-ideals", "maximal-intersection"],
            Command::AlgebroidBracket => &["bracket", "antisymmetry", "anchor-morphism"],
            Command::AlgebroidJacobi => &["jacobi", "leibniz"],
            Command::AlgebroidMembership => &["membership", "k-m-conjunction"],
            Command::AlgebroidNormalizer => &["normalizer", "normalizer-vs-jet"],
            Command::AlgebroidWitness => &["z-m-witness"],
            Command::AlgebroidPoisson => &["poisson-sections", "poisson-jacobi"],
            Command::ConnectionCurvature => &["curvature", "kernel-valued", "antisymmetric", "tensorial"],
            Command::ConnectionModelForm => &["omega", "closed", "bracket-transfer", "round-trip"],
            Command::ModelBracket => &["bracket", "antisymmetry", "anchor-morphism"],
            Command::ModelJacobi => &["jacobi", "d-omega-match"],
            Command::MorphismVerify => &["phi1-automorphism", "bracket-preservation", "residual", "residual-agrees"],
            Command::MorphismResidual => &["frame", "direct", "forms-agree"],
            Command::MorphismDecompose => &["r-recovered", "recomposition"],
        }
    }

    /// Checks run when the document names none.
    fn default_checks(self, doc: &Document) -> Vec<&'static str> {
        match self {
            Command::MorphismVerify => {
                let mut out = Vec::new();
                if doc.phi1.is_some() {
                    out.push("phi1-automorphism");
                }
                if doc.morphism.is_some() {
                    out.extend(["bracket-preservation", "residual", "residual-agrees"]);
                }
                out
            }
            _ => self.checks().to_vec(),
        }
    }

    fn selection(self, doc: &Document) -> Result<Vec<&'static str>, FormatError> {
        if doc.checks.is_empty() {
            let d = self.default_checks(doc);
            if d.is_empty() {
                return err("/", format!("no payload for {}", self.name()));
            }
            return Ok(d);
        }
        doc.checks
            .iter()
            .enumerate()
            .map(|(i, c)| {
                self.checks()
                    .iter()
                    .find(|k| **k == c)
                    .copied()
                    .map_or_else(|| err(&format::child("/checks", i), format!("unknown check {c:?} for {}", self.name())), Ok)
            })
            .collect()
    }
}

/// Runs `cmd` on `doc`. Input problems (missing payloads, unknown checks,
/// inconsistent objects) are returned as errors; everything else becomes a
/// check status in the report.
pub fn run(cmd: Command, doc: &Document) -> Result<Report, FormatError> {
    let start = Instant::now();
    let names = cmd.selection(doc)?;
    let checks = match cmd {
        Command::LieAnalyze => lie_analyze(doc, &names)?,
        Command::LieDecompose => lie_decompose(doc, &names)?,
        Command::AlgebroidBracket => algebroid_bracket(doc, &names)?,
        Command::AlgebroidJacobi => algebroid_jacobi(doc, &names)?,
        Command::AlgebroidMembership => algebroid_membership(doc, &names)?,
        Command::AlgebroidNormalizer => algebroid_normalizer(doc, &names)?,
        Command::AlgebroidWitness => algebroid_witness(doc, &names)?,
        Command::AlgebroidPoisson => algebroid_poisson(doc, &names)?,
        Command::ConnectionCurvature => connection_curvature(doc, &names)?,
        Command::ConnectionModelForm => connection_model_form(doc, &names)?,
        Command::ModelBracket => model_bracket(doc, &names)?,
        Command::ModelJacobi => model_jacobi(doc, &names)?,
        Command::MorphismVerify => morphism_verify(doc, &names)?,
        Command::MorphismResidual => morphism_residual(doc, &names)?,
        Command::MorphismDecompose => morphism_decompose(doc, &names)?,
    };
    Ok(Report {
        command: cmd.name().into(),
        checks,
        elapsed: start.elapsed(),
    })
}

fn run_checks(names: &[&str], mut f: impl FnMut(&str) -> Out) -> Vec<CheckResult> {
    names
        .iter()
        .map(|n| f(n).unwrap_or_else(|e| CheckResult::error(n, e)))
        .collect()
}

fn unknown(name: &str) -> Out {
    Err(format!("check {name:?} is not implemented here").into())
}

fn require_sections(doc: &Document, count: usize) -> Result<(), FormatError> {
    if doc.sections.len() < count {
        return err("/sections", format!("at least {count} sections are required"));
    }
    Ok(())
}

fn is_zero_vec(xs: &[Rational]) -> bool {
    xs.iter().all(Zero::is_zero)
}

fn doc_label(i: usize) -> String {
    format!("sections[{i}]")
}

fn case_label(i: usize) -> String {
    format!("corpus case {i}")
}

fn pair_label(i: usize, j: usize) -> Value {
    json!([format!("d{}", i + 1), format!("d{}", j + 1)])
}

// ---- lie -----------------------------------------------------------------

fn lie_axioms(g: &LieAlgebra) -> CheckResult {
    let k = g.dim();
    let c = |a: usize, b: usize, d: usize| g.structure_constant(a, b, d).clone();
    for a in 0..k {
        for b in 0..k {
            for d in 0..k {
                if c(a, b, d) != -c(b, a, d) {
                    return CheckResult::fail(
                        "lie-axioms",
                        json!({"dim": k}),
                        json!({"antisymmetry": [g.names()[a], g.names()[b]], "component": d}),
                    );
                }
            }
        }
    }
    let mut triples = 0;
    for a in 0..k {
        for b in a + 1..k {
            for e in b + 1..k {
                triples += 1;
                // sum over cyclic (x, y, z) of [x, [y, z]], written in constants
                let cyc = [(a, b, e), (b, e, a), (e, a, b)];
                let mut sum = vec![Rational::zero(); k];
                for (x, y, z) in cyc {
                    for m in 0..k {
                        let yz = c(y, z, m);
                        if yz.is_zero() {
                            continue;
                        }
                        for (d, s) in sum.iter_mut().enumerate() {
                            *s += &yz * &c(x, m, d);
                        }
                    }
                }
                if !is_zero_vec(&sum) {
                    return CheckResult::fail(
                        "lie-axioms",
                        json!({"dim": k, "triples_checked": triples}),
                        json!({"triple": [g.names()[a], g.names()[b], g.names()[e]], "jacobiator": format::rationals_to(&sum)}),
                    );
                }
            }
        }
    }
    CheckResult::pass("lie-axioms", json!({"dim": k, "triples_checked": triples}))
}

fn reductive_check(g: &LieAlgebra) -> Out {
    match reductive_decomposition(g) {
        Ok(split) => Ok(CheckResult::pass(
            "reductive",
            json!({
                "direct": true,
                "center_dim": split.center.dim(),
                "derived_dim": split.derived.dim(),
                "change_of_basis": format::matrix_to(&split.change_of_basis),
            }),
        )),
        Err(LieError::NotReductive(reason)) => Ok(CheckResult::fail(
            "reductive",
            json!({"direct": false}),
            json!({"reason": reason.to_string(), "center": format::subspace_to(&center(g)), "derived": format::subspace_to(&derived_ideal(g))}),
        )),
        Err(e) => Err(e.into()),
    }
}

fn lie_analyze(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let g = doc.require_algebra()?.algebra();
    Ok(run_checks(names, |name| match name {
        "lie-axioms" => Ok(lie_axioms(g)),
        "killing" => {
            let k = killing_semisimple(g);
            Ok(CheckResult::pass(
                name,
                json!({"gram": format::matrix_to(&k.gram), "determinant": format::rational_to(&k.determinant), "semisimple": k.semisimple}),
            ))
        }
        "center" => {
            let z = center(g);
            Ok(CheckResult::pass(name, json!({"dim": z.dim(), "basis": format::subspace_to(&z)})))
        }
        "derived" => {
            let s = derived_ideal(g);
            Ok(CheckResult::pass(name, json!({"dim": s.dim(), "basis": format::subspace_to(&s)})))
        }
        "reductive" => reductive_check(g),
        _ => unknown(name),
    }))
}

/// Simple ideals of `[g, g]` and the maximal ideals among them, in `g` coordinates.
fn derived_ideals(g: &LieAlgebra) -> Result<(Vec<Subspace>, Vec<Subspace>), LieError> {
    let q = quotient_by_center(g)?;
    let ideals = simple_and_maximal_ideals(&q.algebra)?;
    let basis = q.split.derived.basis();
    let lift = |s: &Subspace| {
        let vs = s
            .basis()
            .iter()
            .map(|coords| {
                let mut v = vec![Rational::zero(); g.dim()];
                for (c, b) in coords.iter().zip(basis) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += c * bi;
                    }
                }
                v
            })
            .collect();
        Subspace::span(g.dim(), vs)
    };
    Ok((ideals.simples.iter().map(lift).collect(), ideals.maximals.iter().map(lift).collect()))
}

fn lie_decompose(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let g = doc.require_algebra()?.algebra();
    Ok(run_checks(names, |name| match name {
        "reductive" => reductive_check(g),
        "simple-ideals" | "maximal-intersection" => match derived_ideals(g) {
            Err(LieError::NotReductive(reason)) => Ok(CheckResult::fail(name, json!({}), json!({"reason": reason.to_string()}))),
            Err(e) => Err(e.into()),
            Ok((simples, maximals)) if name == "simple-ideals" => Ok(CheckResult::pass(
                name,
                json!({
                    "count": simples.len(),
                    "simples": simples.iter().map(format::subspace_to).collect::<Vec<_>>(),
                    "maximals": maximals.iter().map(format::subspace_to).collect::<Vec<_>>(),
                }),
            )),
            Ok((_, maximals)) => {
                let meet = maximals
                    .iter()
                    .fold(Subspace::full(g.dim()), |acc, m| acc.intersection(m));
                let details = json!({"maximals": maximals.len(), "intersection_dim": meet.dim()});
                // inside [g, g] the maximal ideals meet in zero
                let inside = meet.intersection(&derived_ideal(g));
                Ok(CheckResult::from_witness(
                    name,
                    details,
                    (!inside.is_zero() && !maximals.is_empty()).then(|| json!({"intersection": format::subspace_to(&inside)})),
                ))
            }
        },
        _ => unknown(name),
    }))
}

// ---- algebroid -----------------------------------------------------------

fn algebroid_bracket(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    require_sections(doc, 2)?;
    let (a, b) = (&doc.sections[0], &doc.sections[1]);
    Ok(run_checks(names, |name| match name {
        "bracket" => {
            let ab = alg.bracket(a, b)?;
            Ok(CheckResult::pass(name, json!({"result": format::section_to(&ab), "text": ab.to_string()})))
        }
        "antisymmetry" => {
            let sum = &alg.bracket(a, b)? + &alg.bracket(b, a)?;
            Ok(CheckResult::from_witness(
                name,
                json!({}),
                (!sum.is_zero()).then(|| json!({"inputs": [doc_label(0), doc_label(1)], "sum": format::section_to(&sum)})),
            ))
        }
        "anchor-morphism" => {
            let lhs = alg.anchor(&alg.bracket(a, b)?)?;
            let rhs = alg.anchor(a)?.bracket(&alg.anchor(b)?)?;
            let defect = lhs.sub(&rhs)?;
            Ok(CheckResult::from_witness(
                name,
                json!({}),
                (!defect.is_zero()).then(|| json!({"inputs": [doc_label(0), doc_label(1)], "defect": format::vector_field_to(&defect)})),
            ))
        }
        _ => unknown(name),
    }))
}

fn jacobiator(alg: &TrivialAlgebroid, a: &Section, b: &Section, c: &Section) -> Result<Section, Box<dyn Error>> {
    let t1 = alg.bracket(a, &alg.bracket(b, c)?)?;
    let t2 = alg.bracket(b, &alg.bracket(c, a)?)?;
    let t3 = alg.bracket(c, &alg.bracket(a, b)?)?;
    Ok(&(&t1 + &t2) + &t3)
}

fn leibniz_defect(alg: &TrivialAlgebroid, a: &Section, b: &Section, f: &MultiPoly) -> Result<Section, Box<dyn Error>> {
    let lhs = alg.bracket(a, &b.mul_fn(f))?;
    let rhs = &alg.bracket(a, b)?.mul_fn(f) + &b.mul_fn(&a.v().apply(f)?);
    Ok(&lhs - &rhs)
}

fn algebroid_jacobi(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    let (n, k) = (alg.base_dim(), alg.fiber_dim());
    let opts = &doc.options;
    Ok(run_checks(names, |name| {
        let mut corpus = Corpus::new(opts.seed);
        match name {
            "jacobi" => {
                let mut triples: Vec<(String, [Section; 3])> = Vec::new();
                let s = &doc.sections;
                for i in 0..s.len() {
                    for j in i + 1..s.len() {
                        for l in j + 1..s.len() {
                            let label = format!("{}, {}, {}", doc_label(i), doc_label(j), doc_label(l));
                            triples.push((label, [s[i].clone(), s[j].clone(), s[l].clone()]));
                        }
                    }
                }
                for c in 0..opts.cases {
                    let t = [0, 1, 2].map(|_| corpus.section(n, k, opts.degree));
                    triples.push((case_label(c), t));
                }
                for (label, [a, b, c]) in &triples {
                    let j = jacobiator(&alg, a, b, c)?;
                    if !j.is_zero() {
                        return Ok(CheckResult::fail(
                            name,
                            json!({"triples_checked": triples.len()}),
                            json!({"case": label, "inputs": [format::section_to(a), format::section_to(b), format::section_to(c)], "jacobiator": format::section_to(&j)}),
                        ));
                    }
                }
                Ok(CheckResult::pass(name, json!({"triples_checked": triples.len()})))
            }
            "leibniz" => {
                let mut pairs: Vec<(String, Section, Section)> = Vec::new();
                for (i, w) in doc.sections.windows(2).enumerate() {
                    pairs.push((format!("{}, {}", doc_label(i), doc_label(i + 1)), w[0].clone(), w[1].clone()));
                }
                for c in 0..opts.cases {
                    pairs.push((case_label(c), corpus.section(n, k, opts.degree), corpus.section(n, k, opts.degree)));
                }
                for (label, a, b) in &pairs {
                    let f = corpus.poly(n, opts.degree, 3);
                    let d = leibniz_defect(&alg, a, b, &f)?;
                    if !d.is_zero() {
                        return Ok(CheckResult::fail(
                            name,
                            json!({"pairs_checked": pairs.len()}),
                            json!({"case": label, "f": format::poly_to(&f), "defect": format::section_to(&d)}),
                        ));
                    }
                }
                Ok(CheckResult::pass(name, json!({"pairs_checked": pairs.len()})))
            }
            _ => unknown(name),
        }
    }))
}

/// `gamma0 + (x_j - m_j) q` with `gamma0` zero, in a random maximal ideal,
/// or arbitrary; every fifth case also gets a vector part.
fn km_case(corpus: &mut Corpus, alg: &TrivialAlgebroid, m: &[Rational], maximals: &[Subspace], degree: u32, case: usize) -> Section {
    let (n, k) = (alg.base_dim(), alg.fiber_dim());
    let gamma0 = match corpus.index(3) {
        0 => vec![Rational::zero(); k],
        1 if !maximals.is_empty() => {
            let idx = corpus.index(maximals.len());
            corpus.element_of(&maximals[idx])
        }
        _ => corpus.vector(k),
    };
    let j = corpus.index(n);
    let y = &MultiPoly::var(n, j) - &MultiPoly::constant(n, m[j].clone());
    let q = corpus.kernel_section(n, k, degree.saturating_sub(1)).mul_fn(&y);
    let mut s = &Section::constant_kernel(n, &gamma0) + &q;
    if case % 5 == 4 {
        s = &s + &Section::horizontal(corpus.vector_field(n, degree), k);
    }
    s
}

fn algebroid_membership(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    let q = doc.query.as_ref().map_or_else(|| err("/query", "missing field"), Ok)?;
    let query = PointIdealQuery::new(q.kind, q.m.clone(), q.g0.clone()).map_or_else(|e| err("/query", e.to_string()), Ok)?;
    let opts = &doc.options;
    Ok(run_checks(names, |name| match name {
        "membership" => {
            let found = doc
                .sections
                .iter()
                .map(|s| alg.ideal_membership(s, &query))
                .collect::<Result<Vec<bool>, _>>()?;
            let details = json!({"kind": q.kind.as_str(), "results": found});
            if let Some(expect) = &q.expect {
                if let Some(i) = (0..found.len()).find(|&i| found[i] != expect[i]) {
                    return Ok(CheckResult::fail(
                        name,
                        details,
                        json!({"case": doc_label(i), "section": format::section_to(&doc.sections[i]), "expected": expect[i], "found": found[i]}),
                    ));
                }
            }
            Ok(CheckResult::pass(name, details))
        }
        "k-m-conjunction" => {
            let maximals = match simple_and_maximal_ideals(alg.fiber()) {
                Ok(d) => d.maximals,
                Err(LieError::NotSemisimple) => {
                    return Ok(CheckResult::pass(name, json!({"applicable": false, "reason": "fiber is not semisimple"})));
                }
                Err(e) => return Err(e.into()),
            };
            let m = &q.m;
            let km = PointIdealQuery::new(IdealKind::Km, m.clone(), None)?;
            let kmg0: Vec<PointIdealQuery> = maximals
                .iter()
                .map(|g0| PointIdealQuery::new(IdealKind::KmG0, m.clone(), Some(g0.clone())))
                .collect::<Result<_, _>>()?;
            let mut corpus = Corpus::new(opts.seed);
            let mut cases: Vec<(String, Section)> =
                doc.sections.iter().enumerate().map(|(i, s)| (doc_label(i), s.clone())).collect();
            for c in 0..opts.cases {
                cases.push((case_label(c), km_case(&mut corpus, &alg, m, &maximals, opts.degree, c)));
            }
            let mut members = 0;
            for (label, s) in &cases {
                let direct = alg.ideal_membership(s, &km)?;
                let mut conj = true;
                for qq in &kmg0 {
                    conj &= alg.ideal_membership(s, qq)?;
                }
                members += usize::from(direct);
                if direct != conj {
                    return Ok(CheckResult::fail(
                        name,
                        json!({"cases": cases.len()}),
                        json!({"case": label, "section": format::section_to(s), "k_m": direct, "conjunction": conj}),
                    ));
                }
            }
            Ok(CheckResult::pass(
                name,
                json!({"applicable": true, "maximal_ideals": maximals.len(), "cases": cases.len(), "members": members}),
            ))
        }
        _ => unknown(name),
    }))
}

fn algebroid_normalizer(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    let g0 = doc
        .g0
        .as_ref()
        .or_else(|| doc.query.as_ref().and_then(|q| q.g0.as_ref()))
        .map_or_else(|| err("/g0", "missing field"), Ok)?;
    let m = doc
        .point
        .as_ref()
        .or_else(|| doc.query.as_ref().map(|q| &q.m))
        .map_or_else(|| err("/point", "missing field"), Ok)?;
    let (n, k) = (alg.base_dim(), alg.fiber_dim());
    let opts = &doc.options;
    Ok(run_checks(names, |name| match name {
        "normalizer" => {
            let results = doc
                .sections
                .iter()
                .map(|s| alg.normalizer_test(s, m, g0))
                .collect::<Result<Vec<bool>, _>>()?;
            Ok(CheckResult::pass(name, json!({"results": results})))
        }
        "normalizer-vs-jet" => {
            let mut corpus = Corpus::new(opts.seed);
            let mut cases: Vec<(String, Section)> =
                doc.sections.iter().enumerate().map(|(i, s)| (doc_label(i), s.clone())).collect();
            for c in 0..opts.cases {
                let v0 = if corpus.index(2) == 0 { vec![Rational::zero(); n] } else { corpus.vector(n) };
                let j = corpus.index(n);
                let y = &MultiPoly::var(n, j) - &MultiPoly::constant(n, m[j].clone());
                let v = PolyVectorField::new(v0.into_iter().map(|c| MultiPoly::constant(n, c)).collect())
                    .expect("uniform variable count")
                    .add(&corpus.vector_field(n, opts.degree.saturating_sub(1)).mul_fn(&y)?)?;
                let s = &Section::horizontal(v, k) + &corpus.kernel_section(n, k, opts.degree);
                cases.push((case_label(c), s));
            }
            let mut normalizing = 0;
            for (label, s) in &cases {
                let fast = alg.normalizer_test(s, m, g0)?;
                let slow = alg.normalizer_jet_test(s, m, g0)?;
                normalizing += usize::from(fast);
                if fast != slow {
                    return Ok(CheckResult::fail(
                        name,
                        json!({"cases": cases.len()}),
                        json!({"case": label, "section": format::section_to(s), "normalizer_test": fast, "jet_test": slow}),
                    ));
                }
            }
            Ok(CheckResult::pass(name, json!({"cases": cases.len(), "normalizing": normalizing})))
        }
        _ => unknown(name),
    }))
}

fn algebroid_witness(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    let m = doc
        .point
        .as_ref()
        .or_else(|| doc.query.as_ref().map(|q| &q.m))
        .map_or_else(|| err("/point", "missing field"), Ok)?;
    let n = alg.base_dim();
    let opts = &doc.options;
    Ok(run_checks(names, |name| match name {
        "z-m-witness" => {
            let frame = alg.center_frame()?;
            let am = PointIdealQuery::new(IdealKind::Am, m.clone(), None)?;
            let mut corpus = Corpus::new(opts.seed);
            let mut cases: Vec<(String, Section)> =
                doc.sections.iter().enumerate().map(|(i, s)| (doc_label(i), s.clone())).collect();
            if !frame.is_empty() {
                for c in 0..opts.cases {
                    let mut s = alg.zero_section();
                    for z in &frame {
                        let j = corpus.index(n);
                        let y = &MultiPoly::var(n, j) - &MultiPoly::constant(n, m[j].clone());
                        let f = &corpus.poly(n, opts.degree.saturating_sub(1), 3) * &y;
                        s = &s + &z.mul_fn(&f);
                    }
                    cases.push((case_label(c), s));
                }
            }
            let mut pairs = 0;
            for (label, c) in &cases {
                let witness = alg.z_m_witness(c, m)?;
                pairs += witness.len();
                let mut sum = alg.zero_section();
                for (a, z) in &witness {
                    if !alg.ideal_membership(a, &am)? {
                        return Ok(CheckResult::fail(
                            name,
                            json!({"cases": cases.len()}),
                            json!({"case": label, "not_in_A_m": format::section_to(a)}),
                        ));
                    }
                    sum = &sum + &alg.bracket(a, z)?;
                }
                if &sum != c {
                    return Ok(CheckResult::fail(
                        name,
                        json!({"cases": cases.len()}),
                        json!({"case": label, "section": format::section_to(c), "bracket_sum": format::section_to(&sum)}),
                    ));
                }
            }
            Ok(CheckResult::pass(name, json!({"cases": cases.len(), "pairs": pairs, "center_rank": frame.len()})))
        }
        _ => unknown(name),
    }))
}

fn algebroid_poisson(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    let (n, k) = (alg.base_dim(), alg.fiber_dim());
    let opts = &doc.options;
    Ok(run_checks(names, |name| match name {
        "poisson-sections" => {
            let mut corpus = Corpus::new(opts.seed);
            let mut pairs: Vec<(String, Section, Section)> = Vec::new();
            for (i, w) in doc.sections.windows(2).enumerate() {
                pairs.push((format!("{}, {}", doc_label(i), doc_label(i + 1)), w[0].clone(), w[1].clone()));
            }
            for c in 0..opts.cases {
                pairs.push((case_label(c), corpus.section(n, k, opts.degree), corpus.section(n, k, opts.degree)));
            }
            for (label, a, b) in &pairs {
                let lhs = alg.poisson_bracket(&FiberLinearFunction::of_section(a), &FiberLinearFunction::of_section(b))?;
                let rhs = FiberLinearFunction::of_section(&alg.bracket(a, b)?);
                if lhs != rhs {
                    return Ok(CheckResult::fail(
                        name,
                        json!({"pairs_checked": pairs.len()}),
                        json!({"case": label, "poisson": lhs.to_string(), "bracket": rhs.to_string()}),
                    ));
                }
            }
            Ok(CheckResult::pass(name, json!({"pairs_checked": pairs.len()})))
        }
        "poisson-jacobi" => {
            let gens = FiberLinearFunction::generators(n, k);
            let mut count = 0;
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    for l in j + 1..gens.len() {
                        count += 1;
                        let (f, g, h) = (&gens[i], &gens[j], &gens[l]);
                        let t1 = alg.poisson_bracket(f, &alg.poisson_bracket(g, h)?)?;
                        let t2 = alg.poisson_bracket(g, &alg.poisson_bracket(h, f)?)?;
                        let t3 = alg.poisson_bracket(h, &alg.poisson_bracket(f, g)?)?;
                        let sum = t1.add(&t2).add(&t3);
                        if !sum.is_zero() {
                            return Ok(CheckResult::fail(
                                name,
                                json!({"triples_checked": count}),
                                json!({"triple": [f.to_string(), g.to_string(), h.to_string()], "jacobiator": sum.to_string()}),
                            ));
                        }
                    }
                }
            }
            Ok(CheckResult::pass(name, json!({"triples_checked": count})))
        }
        _ => unknown(name),
    }))
}

// ---- connection ----------------------------------------------------------

fn connection(doc: &Document) -> Result<Connection, FormatError> {
    let alpha = doc.connection.clone().map_or_else(|| err("/connection", "missing field"), Ok)?;
    Connection::new(alpha).map_or_else(|e| err("/connection", e.to_string()), Ok)
}

fn connection_curvature(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    let conn = connection(doc)?;
    let n = alg.base_dim();
    let opts = &doc.options;
    let mut fields: Vec<(String, PolyVectorField)> =
        (0..n).map(|i| (format!("d{}", i + 1), PolyVectorField::coordinate(n, i))).collect();
    fields.extend(doc.vector_fields.iter().enumerate().map(|(i, v)| (format!("vector_fields[{i}]"), v.clone())));
    let mut corpus = Corpus::new(opts.seed);
    let mut pairs: Vec<(String, PolyVectorField, PolyVectorField)> = Vec::new();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            pairs.push((format!("{}, {}", fields[i].0, fields[j].0), fields[i].1.clone(), fields[j].1.clone()));
        }
    }
    for c in 0..opts.cases {
        pairs.push((case_label(c), corpus.vector_field(n, opts.degree), corpus.vector_field(n, opts.degree)));
    }
    Ok(run_checks(names, |name| match name {
        "curvature" => {
            let mut components = Vec::new();
            let mut flat = true;
            for i in 0..n {
                for j in i + 1..n {
                    let r = alg.curvature(&conn, &PolyVectorField::coordinate(n, i), &PolyVectorField::coordinate(n, j))?;
                    flat &= r.is_zero();
                    components.push(json!({"pair": pair_label(i, j), "value": format::polys_to(r.gamma())}));
                }
            }
            Ok(CheckResult::pass(name, json!({"flat": flat, "components": components})))
        }
        "kernel-valued" | "antisymmetric" => {
            for (label, x, y) in &pairs {
                let r = alg.curvature(&conn, x, y)?;
                let bad = if name == "kernel-valued" {
                    (!r.is_kernel()).then(|| json!({"case": label, "curvature": format::section_to(&r)}))
                } else {
                    let sum = &r + &alg.curvature(&conn, y, x)?;
                    (!sum.is_zero()).then(|| json!({"case": label, "sum": format::section_to(&sum)}))
                };
                if let Some(w) = bad {
                    return Ok(CheckResult::fail(name, json!({"pairs_checked": pairs.len()}), w));
                }
            }
            Ok(CheckResult::pass(name, json!({"pairs_checked": pairs.len()})))
        }
        "tensorial" => {
            let mut fc = Corpus::new(opts.seed.wrapping_add(1));
            for (label, x, y) in &pairs {
                let f = fc.poly(n, opts.degree, 3);
                let base = alg.curvature(&conn, x, y)?.mul_fn(&f);
                let left = &alg.curvature(&conn, &x.mul_fn(&f)?, y)? - &base;
                let right = &alg.curvature(&conn, x, &y.mul_fn(&f)?)? - &base;
                if !left.is_zero() || !right.is_zero() {
                    return Ok(CheckResult::fail(
                        name,
                        json!({"pairs_checked": pairs.len()}),
                        json!({"case": label, "f": format::poly_to(&f), "defect_first": format::section_to(&left), "defect_second": format::section_to(&right)}),
                    ));
                }
            }
            Ok(CheckResult::pass(name, json!({"pairs_checked": pairs.len()})))
        }
        _ => unknown(name),
    }))
}

fn connection_model_form(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let alg = doc.algebroid()?;
    let conn = connection(doc)?;
    let cm = alg.model_form_from_connection(&conn).map_or_else(|e| err("/algebra", e.to_string()), Ok)?;
    let (n, k) = (alg.base_dim(), alg.fiber_dim());
    let opts = &doc.options;
    Ok(run_checks(names, |name| match name {
        "omega" => Ok(CheckResult::pass(
            name,
            json!({"k": cm.model.center_rank(), "omega": format::form_to(cm.model.omega()), "text": cm.model.omega().to_string()}),
        )),
        "closed" => {
            let dw = if n >= 3 { cm.model.omega().d()? } else { PolyForm::zero(n, 3, cm.model.center_rank()) };
            Ok(CheckResult::from_witness(name, json!({"closed": dw.is_zero()}), (!dw.is_zero()).then(|| json!({"d_omega": format::form_to(&dw)}))))
        }
        "bracket-transfer" => {
            let mut family = jet_family(&alg, opts.degree);
            let mut corpus = Corpus::new(opts.seed);
            for c in 0..opts.cases {
                family.push((case_label(c), corpus.section(n, k, opts.degree)));
            }
            let images = family.iter().map(|(_, s)| cm.to_model(s)).collect::<Result<Vec<_>, _>>()?;
            let mut count = 0;
            for i in 0..family.len() {
                for j in i + 1..family.len() {
                    count += 1;
                    let lhs = cm.to_model(&alg.bracket(&family[i].1, &family[j].1)?)?;
                    let rhs = cm.model.bracket(&images[i], &images[j])?;
                    let defect = lhs.sub(&rhs);
                    if !defect.is_zero() {
                        return Ok(CheckResult::fail(
                            name,
                            json!({"pairs_checked": count}),
                            json!({"labels": [family[i].0, family[j].0], "defect": format::model_section_to(&defect)}),
                        ));
                    }
                }
            }
            Ok(CheckResult::pass(name, json!({"pairs_checked": count})))
        }
        "round-trip" => {
            let mut corpus = Corpus::new(opts.seed);
            for c in 0..opts.cases {
                let s = corpus.section(n, k, opts.degree);
                let back = cm.from_model(&cm.to_model(&s)?)?;
                if back != s {
                    return Ok(CheckResult::fail(
                        name,
                        json!({"cases": opts.cases}),
                        json!({"case": case_label(c), "section": format::section_to(&s), "round_trip": format::section_to(&back)}),
                    ));
                }
            }
            Ok(CheckResult::pass(name, json!({"cases": opts.cases})))
        }
        _ => unknown(name),
    }))
}

// ---- model ---------------------------------------------------------------

fn model_bracket(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let model = doc.model_algebroid(false)?;
    if doc.model_sections.len() < 2 {
        return err("/model_sections", "at least 2 model sections are required");
    }
    let (a, b) = (&doc.model_sections[0], &doc.model_sections[1]);
    let labels = json!(["model_sections[0]", "model_sections[1]"]);
    Ok(run_checks(names, |name| match name {
        "bracket" => {
            let ab = model.bracket(a, b)?;
            Ok(CheckResult::pass(name, json!({"result": format::model_section_to(&ab), "text": ab.to_string()})))
        }
        "antisymmetry" => {
            let sum = model.bracket(a, b)?.add(&model.bracket(b, a)?);
            Ok(CheckResult::from_witness(
                name,
                json!({}),
                (!sum.is_zero()).then(|| json!({"inputs": labels, "sum": format::model_section_to(&sum)})),
            ))
        }
        "anchor-morphism" => {
            let lhs = model.anchor(&model.bracket(a, b)?)?;
            let rhs = model.anchor(a)?.bracket(&model.anchor(b)?)?;
            let defect = lhs.sub(&rhs)?;
            Ok(CheckResult::from_witness(
                name,
                json!({}),
                (!defect.is_zero()).then(|| json!({"inputs": labels, "defect": format::vector_field_to(&defect)})),
            ))
        }
        _ => unknown(name),
    }))
}

fn model_jacobi(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let model = doc.model_algebroid(true)?;
    Ok(run_checks(names, |name| {
        let diag = model.jacobi_diagnostic()?;
        let witness = diag.witness.as_ref().map(|w| {
            json!({
                "triple": w.labels,
                "sections": w.sections.iter().map(format::model_section_to).collect::<Vec<_>>(),
                "jacobiator": format::model_section_to(&w.jacobiator),
                "d_omega": format::polys_to(&w.d_omega),
            })
        });
        let details = json!({"triples_checked": diag.triples_checked, "omega_closed": diag.omega_closed});
        match name {
            "jacobi" => Ok(CheckResult::from_witness(name, details, witness)),
            "d-omega-match" => Ok(CheckResult::from_witness(
                name,
                details,
                (!diag.matches_d_omega).then(|| witness.unwrap_or_else(|| json!({"matches_d_omega": false}))),
            )),
            _ => unknown(name),
        }
    }))
}

// ---- morphism ------------------------------------------------------------

/// A document's morphism with its source and target models.
pub struct MorphismContext {
    pub map: FullMorphism,
    pub source: ModelAlgebroid,
    pub target: ModelAlgebroid,
}

pub fn morphism_context(doc: &Document) -> Result<MorphismContext, FormatError> {
    let spec = doc.morphism.as_ref().map_or_else(|| err("/morphism", "missing field"), Ok)?;
    let source = doc.model_algebroid(false)?;
    let target = doc.target_algebroid()?;
    let phi0 = CenterIso::new(spec.i.clone(), spec.phi.clone()).map_or_else(|e| err("/morphism/phi0", e.to_string()), Ok)?;
    let phis = SemisimpleIso::new(spec.phi.clone(), spec.psi.clone(), spec.psi_inv.clone(), spec.beta.clone())
        .map_or_else(|e| err("/morphism/phis", e.to_string()), Ok)?;
    let div = Divergence::new(spec.div_potential.clone()).map_or_else(|e| err("/morphism/div_potential", e.to_string()), Ok)?;
    let map = FullMorphism::new(phi0, phis, spec.eta.clone(), spec.r.clone(), div)
        .map_or_else(|e| err("/morphism", e.to_string()), Ok)?;
    Ok(MorphismContext { map, source, target })
}

fn frame_witness(frame: &PolyForm) -> Option<Value> {
    frame
        .terms()
        .find(|(_, v)| v.iter().any(|p| !p.is_zero()))
        .map(|(idx, v)| json!({"pair": pair_label(idx[0], idx[1]), "value": format::polys_to(v)}))
}

fn morphism_verify(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let needs_morphism = names.iter().any(|n| *n != "phi1-automorphism");
    let ctx = if needs_morphism { Some(morphism_context(doc)?) } else { None };
    let phi1 = if names.contains(&"phi1-automorphism") {
        let p = doc.phi1.as_ref().map_or_else(|| err("/phi1", "missing field"), Ok)?;
        let alg = doc.algebroid()?;
        let div = Divergence::new(p.div_potential.clone()).map_or_else(|e| err("/phi1/div_potential", e.to_string()), Ok)?;
        Some((alg, div, p.r.clone()))
    } else {
        None
    };
    let opts = &doc.options;
    Ok(run_checks(names, |name| match name {
        "phi1-automorphism" => {
            let (alg, div, r) = phi1.as_ref().expect("built above");
            let (n, k) = (alg.base_dim(), alg.fiber_dim());
            let mut family = jet_family(alg, opts.degree);
            let mut corpus = Corpus::new(opts.seed);
            for c in 0..opts.cases {
                family.push((case_label(c), corpus.section(n, k, opts.degree)));
            }
            let violation = alg.central_violation(r);
            let details = |count: usize| json!({"pairs_checked": count, "r_central": violation.is_none()});
            let mut count = 0;
            for i in 0..family.len() {
                for j in i + 1..family.len() {
                    count += 1;
                    let d = alg.phi1_defect(div, r, &family[i].1, &family[j].1)?;
                    if !d.is_zero() {
                        return Ok(CheckResult::fail(
                            name,
                            details(count),
                            json!({
                                "labels": [family[i].0, family[j].0],
                                "inputs": [format::section_to(&family[i].1), format::section_to(&family[j].1)],
                                "defect": format::section_to(&d),
                                "text": d.to_string(),
                            }),
                        ));
                    }
                }
            }
            if let Some((basis, bracket)) = &violation {
                // the pair family missed it; still report the non-central r
                return Ok(CheckResult::fail(
                    name,
                    details(count),
                    json!({"noncentral_basis": basis, "bracket": format::rationals_to(bracket)}),
                ));
            }
            Ok(CheckResult::pass(name, details(count)))
        }
        "bracket-preservation" => {
            let ctx = ctx.as_ref().expect("built above");
            let report = ctx.map.verify(&ctx.source, &ctx.target, opts.degree)?;
            let witness = report.witness.as_ref().map(|w| {
                json!({
                    "labels": w.labels,
                    "inputs": w.inputs.iter().map(format::model_section_to).collect::<Vec<_>>(),
                    "defect": format::model_section_to(&w.defect),
                    "text": w.defect.to_string(),
                })
            });
            Ok(CheckResult::from_witness(name, json!({"pairs_checked": report.pairs_checked, "failures": report.failures}), witness))
        }
        "residual" => {
            let ctx = ctx.as_ref().expect("built above");
            let res = ctx.map.residual(&ctx.source, &ctx.target)?;
            Ok(CheckResult::from_witness(
                name,
                json!({"frame": format::form_to(&res.frame), "forms_agree": res.forms_agree}),
                frame_witness(&res.frame),
            ))
        }
        "residual-agrees" => {
            let ctx = ctx.as_ref().expect("built above");
            let res = ctx.map.residual(&ctx.source, &ctx.target)?;
            let preserved = ctx.map.verify(&ctx.source, &ctx.target, opts.degree)?.passed();
            let details = json!({"residual_zero": res.is_zero(), "bracket_preserved": preserved});
            Ok(CheckResult::from_witness(name, details.clone(), (res.is_zero() != preserved).then_some(details)))
        }
        _ => unknown(name),
    }))
}

fn morphism_residual(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let ctx = morphism_context(doc)?;
    Ok(run_checks(names, |name| {
        let res = ctx.map.residual(&ctx.source, &ctx.target)?;
        match name {
            "frame" => Ok(CheckResult::from_witness(
                name,
                json!({"d_eta": format::form_to(&res.d_eta), "rhs": format::form_to(&res.rhs), "frame": format::form_to(&res.frame)}),
                frame_witness(&res.frame),
            )),
            "direct" => {
                let direct: Vec<Value> = res
                    .direct
                    .iter()
                    .map(|((i, j), v)| json!({"pair": pair_label(*i, *j), "value": format::polys_to(v)}))
                    .collect();
                let witness = res
                    .witness()
                    .map(|((i, j), v)| json!({"pair": pair_label(i, j), "value": format::polys_to(&v)}));
                Ok(CheckResult::from_witness(name, json!({"components": direct}), witness))
            }
            "forms-agree" => Ok(CheckResult::from_witness(
                name,
                json!({"forms_agree": res.forms_agree}),
                (!res.forms_agree).then(|| json!({"frame_zero": res.is_zero(), "direct_zero": res.direct_is_zero()})),
            )),
            _ => unknown(name),
        }
    }))
}

fn morphism_decompose(doc: &Document, names: &[&str]) -> Result<Vec<CheckResult>, FormatError> {
    let ctx = morphism_context(doc)?;
    let degree = doc.options.degree;
    Ok(run_checks(names, |name| {
        let dec = ctx.map.decompose()?;
        match name {
            "r-recovered" => {
                let details = json!({"r": format::rationals_to(&dec.r), "expected": format::rationals_to(ctx.map.r())});
                Ok(CheckResult::from_witness(name, details.clone(), (dec.r != ctx.map.r()).then_some(details)))
            }
            "recomposition" => {
                let family: Vec<(String, ModelSection)> = model_jet_family(&ctx.source, degree);
                for (label, s) in &family {
                    let again = dec.recompose(s)?;
                    let direct = ctx.map.apply(s)?;
                    if again != direct {
                        return Ok(CheckResult::fail(
                            name,
                            json!({"sections_checked": family.len()}),
                            json!({"label": label, "difference": format::model_section_to(&again.sub(&direct))}),
                        ));
                    }
                }
                Ok(CheckResult::pass(name, json!({"sections_checked": family.len()})))
            }
            _ => unknown(name),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            let (g, a) = c.name().split_once(' ').unwrap();
            assert_eq!(Command::from_words(g, a), Some(c));
        }
        assert_eq!(Command::from_words("lie", "bogus"), None);
    }

    #[test]
    fn unknown_check_is_an_input_error() {
        let doc = Document::from_value(&json!({"version": "1", "algebra": "sl2", "checks": ["center", "nope"]})).unwrap();
        let e = run(Command::LieAnalyze, &doc).unwrap_err();
        assert_eq!(e.path, "/checks/1");
    }

    #[test]
    fn check_selection() {
        let doc = Document::from_value(&json!({"version": "1", "algebra": "gl2", "checks": ["center"]})).unwrap();
        let r = run(Command::LieAnalyze, &doc).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].details["dim"], 1);
    }
}
