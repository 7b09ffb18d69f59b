use alloc::vec::Vec;

use super::jet::{check_pairs, model_jet_family, PairReport};
use super::{constant_times, CenterIso, Divergence, MorphismError, SemisimpleIso};
use crate::algebroid::Section;
use crate::connection::{check_form, ModelAlgebroid, ModelSection};
use crate::exactcalc::{MultiPoly, PolyForm, PolyVectorField};
use crate::Rational;

/// `Phi(c + a) = Phi0(c + eta(a^) + div(a^) r) + PhiS(a)` between model algebroids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullMorphism {
    phi0: CenterIso,
    phis: SemisimpleIso,
    eta: PolyForm,
    r: Vec<Rational>,
    div: Divergence,
}

/// Residual of the morphism condition.
///
/// `frame` is `d eta - omega1 + I^-1 phi^* omega2`, one component per center
/// frame vector. `direct` holds
/// `omega2(phi_* d_i, phi_* d_j) - Phi0(omega1(d_i, d_j) - dF(d_i, d_j))`
/// for `i < j`, computed without forms; it equals `Phi0` of the frame form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport {
    pub d_eta: PolyForm,
    /// `omega1 - I^-1 phi^* omega2`.
    pub rhs: PolyForm,
    pub frame: PolyForm,
    pub direct: Vec<((usize, usize), Vec<MultiPoly>)>,
    /// Every direct entry equals `Phi0` applied to the matching frame entry.
    pub forms_agree: bool,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.frame.is_zero()
    }

    pub fn direct_is_zero(&self) -> bool {
        self.direct.iter().all(|(_, v)| v.iter().all(MultiPoly::is_zero))
    }

    /// First coordinate pair with a nonzero frame residual.
    pub fn witness(&self) -> Option<((usize, usize), Vec<MultiPoly>)> {
        self.frame.terms().next().map(|(idx, v)| ((idx[0], idx[1]), v.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// The morphism with `r = 0`.
    pub phi0: FullMorphism,
    pub div: Divergence,
    pub r: Vec<Rational>,
}

impl Decomposition {
    /// `c + a -> c + div(a^) r + a` on the source model.
    pub fn phi1_apply(&self, s: &ModelSection) -> Result<ModelSection, MorphismError> {
        model_phi1(&self.div, &self.r, s)
    }

    /// `Phi0 o Phi1`.
    pub fn recompose(&self, s: &ModelSection) -> Result<ModelSection, MorphismError> {
        self.phi0.apply(&self.phi1_apply(s)?)
    }
}

/// The divergence automorphism on a model algebroid.
pub fn model_phi1(div: &Divergence, r: &[Rational], s: &ModelSection) -> Result<ModelSection, MorphismError> {
    let d = div.apply(s.a_tilde().v())?;
    let c: Vec<MultiPoly> = s.c().iter().zip(constant_times(&d, r)).map(|(a, b)| a + &b).collect();
    Ok(ModelSection::new(c, s.a_tilde().clone())?)
}

fn d_or_zero(form: &PolyForm) -> Result<PolyForm, MorphismError> {
    if form.degree() >= form.nvars() {
        Ok(PolyForm::zero(form.nvars(), form.degree() + 1, form.rank()))
    } else {
        Ok(form.d()?)
    }
}

impl FullMorphism {
    pub fn new(
        phi0: CenterIso,
        phis: SemisimpleIso,
        eta: PolyForm,
        r: Vec<Rational>,
        div: Divergence,
    ) -> Result<Self, MorphismError> {
        if phi0.phi() != phis.phi() {
            return Err(MorphismError::DiffeoMismatch);
        }
        let n = phi0.phi().dim();
        let k = phi0.rank();
        check_form(&eta, 1, k, n)?;
        if r.len() != k || div.dim() != n {
            return Err(MorphismError::Shape(alloc::format!(
                "r has {} entries and div acts on {} variables; expected {k} and {n}",
                r.len(),
                div.dim()
            )));
        }
        Ok(FullMorphism { phi0, phis, eta, r, div })
    }

    pub fn phi0(&self) -> &CenterIso {
        &self.phi0
    }

    pub fn phis(&self) -> &SemisimpleIso {
        &self.phis
    }

    pub fn eta(&self) -> &PolyForm {
        &self.eta
    }

    pub fn r(&self) -> &[Rational] {
        &self.r
    }

    pub fn div(&self) -> &Divergence {
        &self.div
    }

    pub fn base_dim(&self) -> usize {
        self.phi0.phi().dim()
    }

    /// `F(X) = eta(X) + div(X) r`.
    pub fn f_map(&self, x: &PolyVectorField) -> Result<Vec<MultiPoly>, MorphismError> {
        let eta_x = self.eta.contract(&[x])?;
        let d = self.div.apply(x)?;
        Ok(eta_x.iter().zip(constant_times(&d, &self.r)).map(|(a, b)| a + &b).collect())
    }

    pub fn apply(&self, s: &ModelSection) -> Result<ModelSection, MorphismError> {
        let f = self.f_map(s.a_tilde().v())?;
        let shifted: Vec<MultiPoly> = s.c().iter().zip(&f).map(|(a, b)| a + b).collect();
        let c = self.phi0.apply(&shifted)?;
        let a = self.phis.apply(s.a_tilde())?;
        Ok(ModelSection::new(c, a)?)
    }

    /// `Phi[[s, t]]_1 - [[Phi s, Phi t]]_2`.
    pub fn bracket_defect(
        &self,
        m1: &ModelAlgebroid,
        m2: &ModelAlgebroid,
        s: &ModelSection,
        t: &ModelSection,
    ) -> Result<ModelSection, MorphismError> {
        let lhs = self.apply(&m1.bracket(s, t)?)?;
        let rhs = m2.bracket(&self.apply(s)?, &self.apply(t)?)?;
        Ok(lhs.sub(&rhs))
    }

    /// Bracket preservation on the model jet family of `m1`.
    pub fn verify(&self, m1: &ModelAlgebroid, m2: &ModelAlgebroid, degree: u32) -> Result<PairReport<ModelSection>, MorphismError> {
        let family = model_jet_family(m1, degree);
        check_pairs(&family, |a, b| self.bracket_defect(m1, m2, a, b), ModelSection::is_zero)
    }

    /// `dF(X, Y) = X F(Y) - Y F(X) - F([X, Y])`.
    pub fn d_f(&self, x: &PolyVectorField, y: &PolyVectorField) -> Result<Vec<MultiPoly>, MorphismError> {
        let fx = self.f_map(x)?;
        let fy = self.f_map(y)?;
        let fxy = self.f_map(&x.bracket(y)?)?;
        let mut out = Vec::with_capacity(fx.len());
        for ((a, b), c) in fx.iter().zip(&fy).zip(&fxy) {
            out.push(&(&x.apply(b)? - &y.apply(a)?) - c);
        }
        Ok(out)
    }

    pub fn residual(&self, m1: &ModelAlgebroid, m2: &ModelAlgebroid) -> Result<ResidualReport, MorphismError> {
        let n = self.base_dim();
        let phi = self.phi0.phi();
        let d_eta = d_or_zero(&self.eta)?;
        let pulled = phi.pullback(m2.omega())?.map_values(self.phi0.inverse_matrix())?;
        let rhs = m1.omega().sub(&pulled)?;
        let frame = d_eta.sub(&rhs)?;

        let mut direct = Vec::new();
        let mut agree = true;
        for i in 0..n {
            for j in i + 1..n {
                let di = PolyVectorField::coordinate(n, i);
                let dj = PolyVectorField::coordinate(n, j);
                let w2 = m2.omega().contract(&[&phi.pushforward(&di)?, &phi.pushforward(&dj)?])?;
                let w1 = m1.omega().contract(&[&di, &dj])?;
                let df = self.d_f(&di, &dj)?;
                let inner: Vec<MultiPoly> = w1.iter().zip(&df).map(|(a, b)| a - b).collect();
                let mapped = self.phi0.apply(&inner)?;
                let value: Vec<MultiPoly> = w2.iter().zip(&mapped).map(|(a, b)| a - b).collect();
                if self.phi0.apply(&frame.coefficient(&[i, j]))? != value {
                    agree = false;
                }
                direct.push(((i, j), value));
            }
        }
        Ok(ResidualReport {
            d_eta,
            rhs,
            frame,
            direct,
            forms_agree: agree,
        })
    }

    /// `F(X) = Phi0^-1 pr_Z Phi(0 + (X, 0))`, read off the map itself.
    pub fn intrinsic_f(&self, x: &PolyVectorField) -> Result<Vec<MultiPoly>, MorphismError> {
        let k = self.phi0.rank();
        let s = ModelSection::semisimple(k, Section::horizontal(x.clone(), self.phis.fiber_dim()));
        let image = self.apply(&s)?;
        self.phi0.apply_inverse(image.c())
    }

    /// `r = F(x1 d1) - x1 F(d1)`, since `F(f X) - f F(X) = X(f) r`.
    pub fn extract_r(&self) -> Result<Vec<Rational>, MorphismError> {
        let n = self.base_dim();
        let x1 = MultiPoly::var(n, 0);
        let f1 = self.intrinsic_f(&PolyVectorField::coordinate_scaled(n, 0, x1.clone()))?;
        let f0 = self.intrinsic_f(&PolyVectorField::coordinate(n, 0))?;
        f1.iter()
            .zip(&f0)
            .map(|(a, b)| {
                let d = a - &(&x1 * b);
                if d.is_constant() {
                    Ok(d.constant_term())
                } else {
                    Err(MorphismError::NonConstantR)
                }
            })
            .collect()
    }

    pub fn decompose(&self) -> Result<Decomposition, MorphismError> {
        let r = self.extract_r()?;
        let zero = alloc::vec![Rational::from_integer(0.into()); r.len()];
        let phi0 = FullMorphism {
            r: zero,
            ..self.clone()
        };
        Ok(Decomposition {
            phi0,
            div: self.div.clone(),
            r,
        })
    }
}
