use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{check_form, Connection, ConnectionError};
use crate::algebroid::{Chart, Section, TrivialAlgebroid};
use crate::exactcalc::{MultiPoly, PolyForm, PolyVectorField};
use crate::liealg::{self, LieAlgebra, ReductiveSplit};

/// Section `c + a~` of the model algebroid: frame coordinates `c` of the
/// center part and a section `a~` of the semisimple trivial algebroid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelSection {
    c: Vec<MultiPoly>,
    a_tilde: Section,
}

impl ModelSection {
    pub fn new(c: Vec<MultiPoly>, a_tilde: Section) -> Result<Self, ConnectionError> {
        if let Some(bad) = c.iter().find(|p| p.nvars() != a_tilde.base_dim()) {
            return Err(crate::exactcalc::CalcError::DimensionMismatch {
                expected: a_tilde.base_dim(),
                found: bad.nvars(),
            }
            .into());
        }
        Ok(ModelSection { c, a_tilde })
    }

    pub fn zero(n: usize, k: usize, s: usize) -> Self {
        ModelSection {
            c: (0..k).map(|_| MultiPoly::zero(n)).collect(),
            a_tilde: Section::zero(n, s),
        }
    }

    /// Pure center section `sum c^i c_i` on an `n`-chart.
    pub fn center(n: usize, c: Vec<MultiPoly>, s: usize) -> Result<Self, ConnectionError> {
        ModelSection::new(c, Section::zero(n, s))
    }

    /// `0 + a~`.
    pub fn semisimple(k: usize, a_tilde: Section) -> Self {
        let n = a_tilde.base_dim();
        ModelSection {
            c: (0..k).map(|_| MultiPoly::zero(n)).collect(),
            a_tilde,
        }
    }

    pub fn c(&self) -> &[MultiPoly] {
        &self.c
    }

    pub fn a_tilde(&self) -> &Section {
        &self.a_tilde
    }

    pub fn base_dim(&self) -> usize {
        self.a_tilde.base_dim()
    }

    pub fn center_rank(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(MultiPoly::is_zero) && self.a_tilde.is_zero()
    }

    pub fn mul_fn(&self, f: &MultiPoly) -> ModelSection {
        ModelSection {
            c: self.c.iter().map(|p| f * p).collect(),
            a_tilde: self.a_tilde.mul_fn(f),
        }
    }

    pub fn add(&self, other: &ModelSection) -> ModelSection {
        ModelSection {
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
            a_tilde: &self.a_tilde + &other.a_tilde,
        }
    }

    pub fn sub(&self, other: &ModelSection) -> ModelSection {
        ModelSection {
            c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect(),
            a_tilde: &self.a_tilde - &other.a_tilde,
        }
    }
}

impl fmt::Display for ModelSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.c.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "] + {}", self.a_tilde)
    }
}

/// `Z (+) A~` over a chart, with `Z` trivial of rank `k`, `A~` the trivial
/// algebroid of a semisimple algebra, and bracket
/// `[[c + a, c' + a']] = a^(c') - a'^(c) + omega(a^, a'^) + [a, a']`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelAlgebroid {
    base: TrivialAlgebroid,
    center_rank: usize,
    omega: PolyForm,
    closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiWitness {
    pub labels: [String; 3],
    pub sections: [ModelSection; 3],
    pub jacobiator: ModelSection,
    /// `d omega` on the three anchors.
    pub d_omega: Vec<MultiPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDiagnostic {
    pub triples_checked: usize,
    /// First frame triple with a nonzero Jacobiator.
    pub witness: Option<JacobiWitness>,
    /// Every Jacobiator equals `(d omega(a1^, a2^, a3^), 0)`.
    pub matches_d_omega: bool,
    pub omega_closed: bool,
}

impl JacobiDiagnostic {
    pub fn jacobi_holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl ModelAlgebroid {
    /// Model with a closed twisting form.
    pub fn new(chart: Chart, center_rank: usize, fiber: LieAlgebra, omega: PolyForm) -> Result<Self, ConnectionError> {
        let m = Self::diagnostic(chart, center_rank, fiber, omega)?;
        if !m.closed {
            return Err(ConnectionError::NotClosed);
        }
        Ok(m)
    }

    /// Like [`ModelAlgebroid::new`] but admits a non-closed `omega`, for which
    /// the bracket fails the Jacobi identity.
    pub fn diagnostic(chart: Chart, center_rank: usize, fiber: LieAlgebra, omega: PolyForm) -> Result<Self, ConnectionError> {
        if !liealg::killing_semisimple(&fiber).semisimple {
            return Err(ConnectionError::NotSemisimple);
        }
        check_form(&omega, 2, center_rank, chart.dim())?;
        let closed = omega.is_closed()?;
        Ok(ModelAlgebroid {
            base: TrivialAlgebroid::new(chart, fiber),
            center_rank,
            omega,
            closed,
        })
    }

    pub fn chart(&self) -> &Chart {
        self.base.chart()
    }

    pub fn base_dim(&self) -> usize {
        self.base.base_dim()
    }

    pub fn center_rank(&self) -> usize {
        self.center_rank
    }

    pub fn semisimple_fiber(&self) -> &LieAlgebra {
        self.base.fiber()
    }

    /// The semisimple trivial algebroid `A~`.
    pub fn semisimple_algebroid(&self) -> &TrivialAlgebroid {
        &self.base
    }

    pub fn omega(&self) -> &PolyForm {
        &self.omega
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn zero_section(&self) -> ModelSection {
        ModelSection::zero(self.base_dim(), self.center_rank, self.base.fiber_dim())
    }

    pub fn check_section(&self, s: &ModelSection) -> Result<(), ConnectionError> {
        self.base.check_section(&s.a_tilde)?;
        if s.c.len() != self.center_rank {
            return Err(crate::exactcalc::CalcError::DimensionMismatch {
                expected: self.center_rank,
                found: s.c.len(),
            }
            .into());
        }
        Ok(())
    }

    pub fn anchor(&self, s: &ModelSection) -> Result<PolyVectorField, ConnectionError> {
        self.check_section(s)?;
        Ok(s.a_tilde.v().clone())
    }

    pub fn bracket(&self, s: &ModelSection, t: &ModelSection) -> Result<ModelSection, ConnectionError> {
        self.check_section(s)?;
        self.check_section(t)?;
        let (x, y) = (s.a_tilde.v(), t.a_tilde.v());
        let mut c = self.omega.contract(&[x, y])?;
        for (slot, (cs, ct)) in c.iter_mut().zip(s.c.iter().zip(&t.c)) {
            *slot += &x.apply(ct)?;
            *slot -= &y.apply(cs)?;
        }
        let a_tilde = self.base.bracket(&s.a_tilde, &t.a_tilde)?;
        Ok(ModelSection { c, a_tilde })
    }

    pub fn jacobiator(&self, a: &ModelSection, b: &ModelSection, c: &ModelSection) -> Result<ModelSection, ConnectionError> {
        let t1 = self.bracket(a, &self.bracket(b, c)?)?;
        let t2 = self.bracket(b, &self.bracket(c, a)?)?;
        let t3 = self.bracket(c, &self.bracket(a, b)?)?;
        Ok(t1.add(&t2).add(&t3))
    }

    /// `d omega(X, Y, Z)`; zero when the chart has no 3-forms.
    pub fn d_omega_on(&self, x: &PolyVectorField, y: &PolyVectorField, z: &PolyVectorField) -> Result<Vec<MultiPoly>, ConnectionError> {
        let n = self.base_dim();
        if n < 3 {
            return Ok((0..self.center_rank).map(|_| MultiPoly::zero(n)).collect());
        }
        Ok(self.omega.d()?.contract(&[x, y, z])?)
    }

    /// Constant local frame: coordinate lifts `d_i`, center frame `c_i`, and
    /// the semisimple basis.
    pub fn frame(&self) -> Vec<(String, ModelSection)> {
        let n = self.base_dim();
        let k = self.center_rank;
        let s = self.base.fiber_dim();
        let mut out = Vec::new();
        for i in 0..n {
            let a = Section::horizontal(PolyVectorField::coordinate(n, i), s);
            out.push((format!("d{}", i + 1), ModelSection::semisimple(k, a)));
        }
        for i in 0..k {
            let mut c: Vec<MultiPoly> = (0..k).map(|_| MultiPoly::zero(n)).collect();
            c[i] = MultiPoly::one(n);
            out.push((format!("c{}", i + 1), ModelSection { c, a_tilde: Section::zero(n, s) }));
        }
        for (b, name) in self.base.fiber().names().iter().enumerate() {
            let a = Section::constant_kernel(n, &self.base.fiber().basis_vector(b));
            out.push((name.clone(), ModelSection::semisimple(k, a)));
        }
        out
    }

    /// Jacobiator on every frame triple. The Jacobiator is tensorial, so
    /// vanishing on a frame is vanishing everywhere.
    pub fn jacobi_diagnostic(&self) -> Result<JacobiDiagnostic, ConnectionError> {
        let frame = self.frame();
        let mut witness = None;
        let mut matches = true;
        let mut count = 0;
        for i in 0..frame.len() {
            for j in i + 1..frame.len() {
                for l in j + 1..frame.len() {
                    count += 1;
                    let (a, b, c) = (&frame[i].1, &frame[j].1, &frame[l].1);
                    let jac = self.jacobiator(a, b, c)?;
                    let dw = self.d_omega_on(a.a_tilde.v(), b.a_tilde.v(), c.a_tilde.v())?;
                    if jac.c != dw || !jac.a_tilde.is_zero() {
                        matches = false;
                    }
                    if witness.is_none() && !jac.is_zero() {
                        witness = Some(JacobiWitness {
                            labels: [frame[i].0.clone(), frame[j].0.clone(), frame[l].0.clone()],
                            sections: [a.clone(), b.clone(), c.clone()],
                            jacobiator: jac,
                            d_omega: dw,
                        });
                    }
                }
            }
        }
        Ok(JacobiDiagnostic {
            triples_checked: count,
            witness,
            matches_d_omega: matches,
            omega_closed: self.closed,
        })
    }
}

/// The model built from a connection on a reductive trivial algebroid, with
/// the identification `A = Z (+) A~`.
///
/// A section `(v, gamma)` goes to `c = Z-part of (gamma - alpha(v))` and
/// `a~ = (v, S-part of gamma)`; only the center part of `alpha` enters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionModel {
    pub model: ModelAlgebroid,
    pub split: ReductiveSplit,
    alpha_center: PolyForm,
    fiber_dim: usize,
}

impl ConnectionModel {
    pub fn closed(&self) -> bool {
        self.model.is_closed()
    }

    pub fn to_model(&self, a: &Section) -> Result<ModelSection, ConnectionError> {
        let n = self.model.base_dim();
        if a.base_dim() != n || a.fiber_dim() != self.fiber_dim {
            return Err(crate::algebroid::AlgebroidError::SectionShape {
                base: a.base_dim(),
                fiber: a.fiber_dim(),
                expected_base: n,
                expected_fiber: self.fiber_dim,
            }
            .into());
        }
        let gz = self.split.center_projection().mul_poly_vec(a.gamma(), n);
        let gs = self.split.derived_projection().mul_poly_vec(a.gamma(), n);
        let az = self.alpha_center.contract(&[a.v()])?;
        let c = gz.iter().zip(&az).map(|(g, x)| g - x).collect();
        Ok(ModelSection {
            c,
            a_tilde: Section::new(a.v().clone(), gs)?,
        })
    }

    pub fn from_model(&self, s: &ModelSection) -> Result<Section, ConnectionError> {
        self.model.check_section(s)?;
        let n = self.model.base_dim();
        let az = self.alpha_center.contract(&[s.a_tilde.v()])?;
        let mut coords: Vec<MultiPoly> = s.c.iter().zip(&az).map(|(c, x)| c + x).collect();
        coords.extend(s.a_tilde.gamma().iter().cloned());
        let gamma = self.split.change_of_basis.mul_poly_vec(&coords, n);
        Ok(Section::new(s.a_tilde.v().clone(), gamma)?)
    }
}

impl TrivialAlgebroid {
    /// `omega(X, Y)` is the center part of the curvature. The result carries
    /// a non-closed `omega` only if the input is inconsistent, and `closed()`
    /// reports it.
    pub fn model_form_from_connection(&self, conn: &Connection) -> Result<ConnectionModel, ConnectionError> {
        self.check_connection(conn)?;
        let quotient = liealg::quotient_by_center(self.fiber())?;
        let split = quotient.split;
        let n = self.base_dim();
        let z = split.center_dim();
        let proj = split.center_projection();
        let mut omega = PolyForm::zero(n, 2, z);
        for i in 0..n {
            for j in i + 1..n {
                let r = self.curvature(
                    conn,
                    &PolyVectorField::coordinate(n, i),
                    &PolyVectorField::coordinate(n, j),
                )?;
                omega.add_term(&[i, j], proj.mul_poly_vec(r.gamma(), n))?;
            }
        }
        let alpha_center = conn.alpha().map_values(&proj)?;
        let model = ModelAlgebroid::diagnostic(self.chart().clone(), z, quotient.algebra, omega)?;
        Ok(ConnectionModel {
            model,
            split,
            alpha_center,
            fiber_dim: self.fiber_dim(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use crate::liealg::catalog;
    use alloc::vec;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn scalar_2form(n: usize, terms: &[(usize, usize, MultiPoly)]) -> PolyForm {
        let mut w = PolyForm::zero(n, 2, 1);
        for (i, j, f) in terms {
            w.add_term(&[*i, *j], vec![f.clone()]).unwrap();
        }
        w
    }

    fn model(n: usize, omega: PolyForm) -> ModelAlgebroid {
        ModelAlgebroid::diagnostic(Chart::new(n).unwrap(), 1, catalog("sl2").unwrap(), omega).unwrap()
    }

    fn lift(n: usize, i: usize) -> ModelSection {
        ModelSection::semisimple(1, Section::horizontal(PolyVectorField::coordinate(n, i), 3))
    }

    #[test]
    fn bracket_examples() {
        let m = model(2, PolyForm::zero(2, 2, 1));
        let c = ModelSection::center(2, vec![x(2, 0)], 3).unwrap();
        let c2 = ModelSection::center(2, vec![x(2, 1)], 3).unwrap();
        assert!(m.bracket(&c, &c2).unwrap().is_zero());
        let b = m.bracket(&lift(2, 0), &c).unwrap();
        assert_eq!(b, ModelSection::center(2, vec![MultiPoly::one(2)], 3).unwrap());

        let m = model(2, scalar_2form(2, &[(0, 1, MultiPoly::one(2))]));
        let b = m.bracket(&lift(2, 0), &lift(2, 1)).unwrap();
        assert_eq!(b, ModelSection::center(2, vec![MultiPoly::one(2)], 3).unwrap());
    }

    #[test]
    fn closedness_is_enforced() {
        let w = scalar_2form(3, &[(0, 1, x(3, 2))]);
        assert_eq!(
            ModelAlgebroid::new(Chart::new(3).unwrap(), 1, catalog("sl2").unwrap(), w),
            Err(ConnectionError::NotClosed)
        );
        assert_eq!(
            ModelAlgebroid::diagnostic(Chart::new(2).unwrap(), 1, catalog("gl2").unwrap(), PolyForm::zero(2, 2, 1)),
            Err(ConnectionError::NotSemisimple)
        );
    }

    #[test]
    fn jacobi_diagnostic_examples() {
        // d(x1^2 dx2) = 2 x1 dx1 ^ dx2 on a 3-chart
        let exact = scalar_2form(3, &[(0, 1, x(3, 0).scale(&int(2)))]);
        let d = model(3, exact).jacobi_diagnostic().unwrap();
        assert!(d.jacobi_holds() && d.matches_d_omega && d.omega_closed);

        let d = model(3, PolyForm::zero(3, 2, 1)).jacobi_diagnostic().unwrap();
        assert!(d.jacobi_holds());

        let d = model(3, scalar_2form(3, &[(0, 1, x(3, 2))])).jacobi_diagnostic().unwrap();
        let w = d.witness.clone().unwrap();
        assert_eq!(w.labels, [String::from("d1"), String::from("d2"), String::from("d3")]);
        assert_eq!(w.jacobiator.c(), &[MultiPoly::one(3)]);
        assert_eq!(w.d_omega, vec![MultiPoly::one(3)]);
        assert!(d.matches_d_omega && !d.omega_closed);
    }

    #[test]
    fn omega_from_central_connection() {
        let a = TrivialAlgebroid::new(Chart::new(2).unwrap(), catalog("gl2").unwrap());
        let zero = MultiPoly::zero(2);
        let mut alpha = PolyForm::zero(2, 1, 4);
        alpha.add_term(&[0], vec![zero.clone(), zero.clone(), zero.clone(), x(2, 1)]).unwrap();
        let cm = a.model_form_from_connection(&Connection::new(alpha).unwrap()).unwrap();
        let expected = scalar_2form(2, &[(0, 1, MultiPoly::constant(2, int(-1)))]);
        assert_eq!(cm.model.omega(), &expected);
        assert!(cm.closed());
        assert_eq!(cm.model.semisimple_fiber(), &catalog("sl2").unwrap());

        let flat = a.model_form_from_connection(&Connection::flat(2, 4)).unwrap();
        assert!(flat.model.omega().is_zero());
    }

    #[test]
    fn identification_round_trip_and_bracket() {
        let a = TrivialAlgebroid::new(Chart::new(2).unwrap(), catalog("gl2").unwrap());
        let zero = MultiPoly::zero(2);
        let mut alpha = PolyForm::zero(2, 1, 4);
        alpha.add_term(&[0], vec![zero.clone(), x(2, 0), zero.clone(), x(2, 1)]).unwrap();
        alpha.add_term(&[1], vec![x(2, 1), zero.clone(), zero.clone(), &x(2, 0) * &x(2, 0)]).unwrap();
        let cm = a.model_form_from_connection(&Connection::new(alpha).unwrap()).unwrap();
        let s = Section::new(
            PolyVectorField::new(vec![x(2, 1), &x(2, 0) * &x(2, 1)]).unwrap(),
            vec![x(2, 0), MultiPoly::one(2), x(2, 1), &x(2, 0) + &x(2, 1)],
        )
        .unwrap();
        let t = Section::new(
            PolyVectorField::new(vec![MultiPoly::one(2), x(2, 0)]).unwrap(),
            vec![zero.clone(), x(2, 1), MultiPoly::one(2), &x(2, 1) * &x(2, 1)],
        )
        .unwrap();
        for u in [&s, &t] {
            assert_eq!(&cm.from_model(&cm.to_model(u).unwrap()).unwrap(), u);
        }
        let lhs = cm.to_model(&a.bracket(&s, &t).unwrap()).unwrap();
        let rhs = cm
            .model
            .bracket(&cm.to_model(&s).unwrap(), &cm.to_model(&t).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
