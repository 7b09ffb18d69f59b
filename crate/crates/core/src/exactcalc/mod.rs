//! Polynomial calculus on a coordinate chart with rational coefficients.

mod diffeo;
mod form;
mod poly;
mod vector_field;

pub use diffeo::{InverseDirection, VerifiedDiffeo};
pub use form::PolyForm;
pub use poly::{monomials_up_to, Monomial, MultiPoly};
pub use vector_field::PolyVectorField;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("axis index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("form of degree {degree} is already top degree on a {nvars}-dimensional chart")]
    TopDegree { degree: usize, nvars: usize },
    #[error("invalid form index {index:?}")]
    InvalidIndex { index: alloc::vec::Vec<usize> },
    #[error("maps are not mutually inverse: {direction} component {component} composes to {composed}")]
    NotInverse {
        direction: InverseDirection,
        component: usize,
        composed: MultiPoly,
    },
}

/// Partial derivative along axis `i` (0-based).
pub fn partial_derivative(p: &MultiPoly, i: usize) -> Result<MultiPoly, CalcError> {
    p.partial(i)
}

/// `X(f) = sum_i X^i d_i f`.
pub fn vf_apply(x: &PolyVectorField, f: &MultiPoly) -> Result<MultiPoly, CalcError> {
    x.apply(f)
}

/// Lie bracket of vector fields.
pub fn vf_bracket(x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField, CalcError> {
    x.bracket(y)
}

pub fn de_rham_d(omega: &PolyForm) -> Result<PolyForm, CalcError> {
    omega.d()
}

pub fn pushforward_vf(phi: &VerifiedDiffeo, x: &PolyVectorField) -> Result<PolyVectorField, CalcError> {
    phi.pushforward(x)
}

pub fn pullback_form(phi: &VerifiedDiffeo, omega: &PolyForm) -> Result<PolyForm, CalcError> {
    phi.pullback(omega)
}

pub fn verify_diffeo(forward: alloc::vec::Vec<MultiPoly>, inverse: alloc::vec::Vec<MultiPoly>) -> Result<VerifiedDiffeo, CalcError> {
    VerifiedDiffeo::new(forward, inverse)
}
