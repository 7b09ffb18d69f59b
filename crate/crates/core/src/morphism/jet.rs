use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebroid::{Section, TrivialAlgebroid};
use crate::connection::{ModelAlgebroid, ModelSection};
use crate::exactcalc::{monomials_up_to, MultiPoly, PolyVectorField};
use crate::int;

fn monomials(n: usize, degree: u32) -> Vec<MultiPoly> {
    monomials_up_to(n, degree)
        .into_iter()
        .map(|m| MultiPoly::monomial(m.exponents().to_vec(), int(1)))
        .collect()
}

/// `x^alpha d_i` with `|alpha| <= degree`.
pub(crate) fn vector_field_family(n: usize, degree: u32) -> Vec<(String, PolyVectorField)> {
    let mons = monomials(n, degree);
    let mut out = Vec::new();
    for i in 0..n {
        for m in &mons {
            out.push((format!("{m} d{}", i + 1), PolyVectorField::coordinate_scaled(n, i, m.clone())));
        }
    }
    out
}

/// Sections `(x^alpha d_i, 0)` and `(0, x^beta e_a)` with monomials of
/// degree at most `degree`.
pub fn jet_family(alg: &TrivialAlgebroid, degree: u32) -> Vec<(String, Section)> {
    let n = alg.base_dim();
    let k = alg.fiber_dim();
    let mut out: Vec<(String, Section)> = vector_field_family(n, degree)
        .into_iter()
        .map(|(l, v)| (l, Section::horizontal(v, k)))
        .collect();
    for m in monomials(n, degree) {
        for (a, name) in alg.fiber().names().iter().enumerate() {
            let s = Section::constant_kernel(n, &alg.fiber().basis_vector(a)).mul_fn(&m);
            out.push((format!("{m} {name}"), s));
        }
    }
    out
}

/// [`jet_family`] of the semisimple part plus center parts `x^beta c_i`.
pub fn model_jet_family(model: &ModelAlgebroid, degree: u32) -> Vec<(String, ModelSection)> {
    let n = model.base_dim();
    let k = model.center_rank();
    let mut out: Vec<(String, ModelSection)> = jet_family(model.semisimple_algebroid(), degree)
        .into_iter()
        .map(|(l, s)| (l, ModelSection::semisimple(k, s)))
        .collect();
    let s = model.semisimple_fiber().dim();
    for m in monomials(n, degree) {
        for i in 0..k {
            let mut c: Vec<MultiPoly> = (0..k).map(|_| MultiPoly::zero(n)).collect();
            c[i] = m.clone();
            let section = ModelSection::center(n, c, s).expect("consistent dimensions");
            out.push((format!("{m} c{}", i + 1), section));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness<T> {
    pub labels: [String; 2],
    pub inputs: [T; 2],
    pub defect: T,
}

/// Outcome of evaluating a bilinear defect on all unordered pairs of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport<T> {
    pub pairs_checked: usize,
    pub failures: usize,
    /// First failing pair in family order.
    pub witness: Option<PairWitness<T>>,
}

impl<T> PairReport<T> {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `defect` over all pairs `i < j`; `is_zero` decides failure.
pub(crate) fn check_pairs<T: Clone, E>(
    family: &[(String, T)],
    mut defect: impl FnMut(&T, &T) -> Result<T, E>,
    is_zero: impl Fn(&T) -> bool,
) -> Result<PairReport<T>, E> {
    let mut report = PairReport {
        pairs_checked: 0,
        failures: 0,
        witness: None,
    };
    for (i, (la, a)) in family.iter().enumerate() {
        for (lb, b) in &family[i + 1..] {
            report.pairs_checked += 1;
            let d = defect(a, b)?;
            if is_zero(&d) {
                continue;
            }
            report.failures += 1;
            if report.witness.is_none() {
                report.witness = Some(PairWitness {
                    labels: [la.clone(), lb.clone()],
                    inputs: [a.clone(), b.clone()],
                    defect: d,
                });
            }
        }
    }
    Ok(report)
}
