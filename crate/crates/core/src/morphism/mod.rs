//! Divergences, the divergence-twisted automorphism `a -> a + div(a^) r`,
//! center and semisimple isomorphisms, and full morphisms of model
//! algebroids
//!
//! ```text
//! Phi(c + a) = Phi0(c + eta(a^) + div(a^) r) + PhiS(a)
//! ```
//!
//! together with their residual 2-forms and the decomposition into an
//! algebroid part and a divergence part.
//!
//! Bracket preservation is checked on a finite jet family: sections whose
//! coefficients are monomials of degree at most 2. Every defect considered
//! here is a bidifferential operator of order at most 2 in each slot, so its
//! value at a point only sees 2-jets, and constant combinations of the family
//! realize every 2-jet at every point.

mod full;
mod jet;
mod semisimple;

pub use full::{Decomposition, FullMorphism, ResidualReport};
pub use jet::{jet_family, model_jet_family, PairReport, PairWitness};
pub use semisimple::SemisimpleIso;

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::algebroid::{AlgebroidError, Section, TrivialAlgebroid};
use crate::connection::ConnectionError;
use crate::exactcalc::{CalcError, MultiPoly, PolyVectorField, VerifiedDiffeo};
use crate::liealg::LieError;
use crate::linalg::Matrix;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error("r is not central: [r, e{basis}] = {bracket:?}")]
    RNotCentral { basis: usize, bracket: Vec<Rational> },
    #[error("center matrix is singular")]
    SingularMatrix,
    #[error("Psi and the supplied inverse do not multiply to the identity")]
    PsiNotInvertible,
    #[error("center and semisimple parts cover different diffeomorphisms")]
    DiffeoMismatch,
    #[error("{0}")]
    Shape(String),
    #[error("divergence law fails: {0}")]
    DivergenceLaw(String),
    #[error("extracted r is not constant")]
    NonConstantR,
}

/// Divergence of the volume `e^p dx_1 ^ ... ^ dx_n`:
/// `div(X) = sum_i d_i X^i + X(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divergence {
    potential: MultiPoly,
}

impl Divergence {
    /// Checks the cocycle and Leibniz laws on coordinate fields with
    /// monomial coefficients of degree at most 1.
    pub fn new(potential: MultiPoly) -> Result<Self, MorphismError> {
        let d = Divergence { potential };
        let n = d.dim();
        let fields: Vec<PolyVectorField> = jet::vector_field_family(n, 1).into_iter().map(|(_, x)| x).collect();
        for (i, x) in fields.iter().enumerate() {
            for y in &fields[i + 1..] {
                if !d.cocycle_defect(x, y)?.is_zero() {
                    return Err(MorphismError::DivergenceLaw(alloc::format!("cocycle on ({x}, {y})")));
                }
            }
            for j in 0..n {
                let f = MultiPoly::var(n, j);
                if !d.leibniz_defect(&f, x)?.is_zero() {
                    return Err(MorphismError::DivergenceLaw(alloc::format!("Leibniz on ({f}, {x})")));
                }
            }
        }
        Ok(d)
    }

    /// Coordinate divergence (`p = 0`).
    pub fn standard(n: usize) -> Self {
        Divergence {
            potential: MultiPoly::zero(n),
        }
    }

    pub fn potential(&self) -> &MultiPoly {
        &self.potential
    }

    pub fn dim(&self) -> usize {
        self.potential.nvars()
    }

    pub fn apply(&self, x: &PolyVectorField) -> Result<MultiPoly, MorphismError> {
        let mut out = x.apply(&self.potential)?;
        for (i, xi) in x.components().iter().enumerate() {
            out += &xi.partial(i)?;
        }
        Ok(out)
    }

    /// `div[X, Y] - X(div Y) + Y(div X)`.
    pub fn cocycle_defect(&self, x: &PolyVectorField, y: &PolyVectorField) -> Result<MultiPoly, MorphismError> {
        let lhs = self.apply(&x.bracket(y)?)?;
        let rhs = &x.apply(&self.apply(y)?)? - &y.apply(&self.apply(x)?)?;
        Ok(&lhs - &rhs)
    }

    /// `div(f X) - f div(X) - X(f)`.
    pub fn leibniz_defect(&self, f: &MultiPoly, x: &PolyVectorField) -> Result<MultiPoly, MorphismError> {
        let lhs = self.apply(&x.mul_fn(f)?)?;
        let rhs = &(f * &self.apply(x)?) + &x.apply(f)?;
        Ok(&lhs - &rhs)
    }
}

fn constant_times(f: &MultiPoly, r: &[Rational]) -> Vec<MultiPoly> {
    r.iter().map(|c| f.scale(c)).collect()
}

impl TrivialAlgebroid {
    /// First basis vector that does not commute with `r`, if any.
    pub fn central_violation(&self, r: &[Rational]) -> Option<(usize, Vec<Rational>)> {
        (0..self.fiber_dim()).find_map(|b| {
            let br = self.fiber().bracket(r, &self.fiber().basis_vector(b));
            (!br.iter().all(Zero::is_zero)).then_some((b, br))
        })
    }

    /// `a + div(v) r` for central `r`.
    pub fn phi1_apply(&self, div: &Divergence, r: &[Rational], a: &Section) -> Result<Section, MorphismError> {
        if r.len() != self.fiber_dim() {
            return Err(MorphismError::Shape(alloc::format!(
                "r has {} entries, fiber has dimension {}",
                r.len(),
                self.fiber_dim()
            )));
        }
        if let Some((basis, bracket)) = self.central_violation(r) {
            return Err(MorphismError::RNotCentral { basis, bracket });
        }
        self.phi1_apply_unchecked(div, r, a)
    }

    /// Same formula without the centrality check; used to exhibit the
    /// failure for non-central `r`.
    pub fn phi1_apply_unchecked(&self, div: &Divergence, r: &[Rational], a: &Section) -> Result<Section, MorphismError> {
        self.check_section(a)?;
        let d = div.apply(a.v())?;
        let shift = Section::kernel(self.base_dim(), constant_times(&d, r))?;
        Ok(a + &shift)
    }

    /// `[Phi1 a, Phi1 b] - Phi1 [a, b]`.
    pub fn phi1_defect(&self, div: &Divergence, r: &[Rational], a: &Section, b: &Section) -> Result<Section, MorphismError> {
        let pa = self.phi1_apply_unchecked(div, r, a)?;
        let pb = self.phi1_apply_unchecked(div, r, b)?;
        let lhs = self.bracket(&pa, &pb)?;
        let rhs = self.phi1_apply_unchecked(div, r, &self.bracket(a, b)?)?;
        Ok(&lhs - &rhs)
    }
}

/// `Phi0(sum f^j c_j) = sum_ij I^i_j (f^j o phi^-1) c'_i` on frame coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterIso {
    i: Matrix,
    i_inv: Matrix,
    phi: VerifiedDiffeo,
}

impl CenterIso {
    pub fn new(i: Matrix, phi: VerifiedDiffeo) -> Result<Self, MorphismError> {
        if i.rows() != i.cols() {
            return Err(MorphismError::Shape(alloc::format!("I is {}x{}", i.rows(), i.cols())));
        }
        let i_inv = i.inverse().ok_or(MorphismError::SingularMatrix)?;
        Ok(CenterIso { i, i_inv, phi })
    }

    pub fn identity(k: usize, n: usize) -> Self {
        CenterIso {
            i: Matrix::identity(k),
            i_inv: Matrix::identity(k),
            phi: VerifiedDiffeo::identity(n),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.i
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.i_inv
    }

    pub fn phi(&self) -> &VerifiedDiffeo {
        &self.phi
    }

    pub fn rank(&self) -> usize {
        self.i.rows()
    }

    fn check(&self, c: &[MultiPoly]) -> Result<(), MorphismError> {
        if c.len() != self.rank() {
            return Err(MorphismError::Shape(alloc::format!(
                "center section has {} components, expected {}",
                c.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, c: &[MultiPoly]) -> Result<Vec<MultiPoly>, MorphismError> {
        self.check(c)?;
        let pushed = c.iter().map(|f| self.phi.push_function(f)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.i.mul_poly_vec(&pushed, self.phi.dim()))
    }

    pub fn apply_inverse(&self, c: &[MultiPoly]) -> Result<Vec<MultiPoly>, MorphismError> {
        self.check(c)?;
        let mixed = self.i_inv.mul_poly_vec(c, self.phi.dim());
        Ok(mixed.iter().map(|f| self.phi.pull_function(f)).collect::<Result<Vec<_>, _>>()?)
    }

    /// `Phi0(X(c)) - (phi_* X)(Phi0 c)`.
    pub fn equivariance_defect(&self, x: &PolyVectorField, c: &[MultiPoly]) -> Result<Vec<MultiPoly>, MorphismError> {
        let xc = c.iter().map(|f| x.apply(f)).collect::<Result<Vec<_>, _>>()?;
        let lhs = self.apply(&xc)?;
        let px = self.phi.pushforward(x)?;
        let rhs = self
            .apply(c)?
            .iter()
            .map(|f| px.apply(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::Chart;
    use crate::int;
    use crate::liealg::catalog;
    use alloc::vec;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn divergence_examples() {
        let d0 = Divergence::new(MultiPoly::zero(2)).unwrap();
        let x1d1 = PolyVectorField::coordinate_scaled(2, 0, x(2, 0));
        assert_eq!(d0.apply(&x1d1).unwrap(), MultiPoly::one(2));
        let dp = Divergence::new(x(2, 1)).unwrap();
        assert_eq!(dp.apply(&PolyVectorField::coordinate(2, 1)).unwrap(), MultiPoly::one(2));
        let a = PolyVectorField::coordinate_scaled(2, 1, x(2, 0));
        let b = PolyVectorField::coordinate_scaled(2, 0, x(2, 1));
        assert!(d0.cocycle_defect(&a, &b).unwrap().is_zero());
        let dq = Divergence::new(&x(2, 0) * &x(2, 1)).unwrap();
        assert!(dq.cocycle_defect(&a, &b).unwrap().is_zero());
    }

    fn gl2() -> TrivialAlgebroid {
        TrivialAlgebroid::new(Chart::new(2).unwrap(), catalog("gl2").unwrap())
    }

    #[test]
    fn phi1_examples() {
        let a = gl2();
        let div = Divergence::standard(2);
        let z = [int(0), int(0), int(0), int(1)];
        let d1 = Section::horizontal(PolyVectorField::coordinate(2, 0), 4);
        assert_eq!(a.phi1_apply(&div, &z, &d1).unwrap(), d1);

        let x1d1 = Section::horizontal(PolyVectorField::coordinate_scaled(2, 0, x(2, 0)), 4);
        let expected = &x1d1 + &Section::constant_kernel(2, &z);
        assert_eq!(a.phi1_apply(&div, &z, &x1d1).unwrap(), expected);

        let e = [int(0), int(1), int(0), int(0)];
        assert!(matches!(
            a.phi1_apply(&div, &e, &x1d1),
            Err(MorphismError::RNotCentral { basis: 0, .. })
        ));
        let f = Section::constant_kernel(2, &[int(0), int(0), int(1), int(0)]);
        let defect = a.phi1_defect(&div, &e, &x1d1, &f).unwrap();
        assert_eq!(defect, Section::constant_kernel(2, &[int(1), int(0), int(0), int(0)]));
    }

    #[test]
    fn center_iso_examples() {
        let id = CenterIso::identity(1, 2);
        let c = vec![x(2, 0)];
        assert_eq!(id.apply(&c).unwrap(), c);

        let two = CenterIso::new(Matrix::from_rows(vec![vec![int(2)]]), VerifiedDiffeo::identity(2)).unwrap();
        assert_eq!(two.apply(&c).unwrap(), vec![x(2, 0).scale(&int(2))]);
        assert_eq!(two.apply_inverse(&two.apply(&c).unwrap()).unwrap(), c);
        let d1 = PolyVectorField::coordinate(2, 0);
        assert!(two.equivariance_defect(&d1, &c).unwrap().iter().all(MultiPoly::is_zero));

        let shear = VerifiedDiffeo::shear(2, 1, &x(2, 0) * &x(2, 0)).unwrap();
        let iso = CenterIso::new(Matrix::from_rows(vec![vec![int(3)]]), shear).unwrap();
        let c = vec![&x(2, 1) * &x(2, 0)];
        let x2d1 = PolyVectorField::coordinate_scaled(2, 0, x(2, 1));
        assert!(iso.equivariance_defect(&x2d1, &c).unwrap().iter().all(MultiPoly::is_zero));
        assert_eq!(iso.apply_inverse(&iso.apply(&c).unwrap()).unwrap(), c);

        assert_eq!(
            CenterIso::new(Matrix::zeros(1, 1), VerifiedDiffeo::identity(2)),
            Err(MorphismError::SingularMatrix)
        );
    }
}
