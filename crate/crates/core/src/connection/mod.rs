//! Connections on the trivial algebroid, their curvature, and the model
//! reductive algebroid `Z (+) A~` with the bracket twisted by a center-valued
//! 2-form.
//!
//! A connection is the splitting `theta(X) = (X, alpha(X))` given by a
//! `g`-valued 1-form `alpha`. Its curvature is
//! `R(X, Y) = [theta X, theta Y] - theta [X, Y]`, always a kernel section.

mod model;

pub use model::{ConnectionModel, JacobiDiagnostic, JacobiWitness, ModelAlgebroid, ModelSection};

use alloc::vec::Vec;

use thiserror::Error;

use crate::algebroid::{AlgebroidError, Section, TrivialAlgebroid};
use crate::exactcalc::{CalcError, MultiPoly, PolyForm, PolyVectorField};
use crate::liealg::LieError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error("expected a {expected_rank}-valued {expected_degree}-form on {expected_vars} variables, found a {rank}-valued {degree}-form on {nvars}")]
    FormShape {
        expected_degree: usize,
        expected_rank: usize,
        expected_vars: usize,
        degree: usize,
        rank: usize,
        nvars: usize,
    },
    #[error("twisting form is not closed")]
    NotClosed,
    #[error("model fiber is not semisimple")]
    NotSemisimple,
}

pub(crate) fn check_form(
    form: &PolyForm,
    degree: usize,
    rank: usize,
    nvars: usize,
) -> Result<(), ConnectionError> {
    if form.degree() != degree || form.rank() != rank || form.nvars() != nvars {
        return Err(ConnectionError::FormShape {
            expected_degree: degree,
            expected_rank: rank,
            expected_vars: nvars,
            degree: form.degree(),
            rank: form.rank(),
            nvars: form.nvars(),
        });
    }
    Ok(())
}

/// `g`-valued 1-form `alpha` of the splitting `X -> (X, alpha(X))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    alpha: PolyForm,
}

impl Connection {
    pub fn new(alpha: PolyForm) -> Result<Self, ConnectionError> {
        check_form(&alpha, 1, alpha.rank(), alpha.nvars())?;
        Ok(Connection { alpha })
    }

    pub fn flat(n: usize, k: usize) -> Self {
        Connection {
            alpha: PolyForm::zero(n, 1, k),
        }
    }

    pub fn alpha(&self) -> &PolyForm {
        &self.alpha
    }

    /// `alpha(d_i)` for every coordinate direction.
    pub fn coefficients(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.alpha.nvars()).map(|i| self.alpha.coefficient(&[i])).collect()
    }
}

impl TrivialAlgebroid {
    fn check_connection(&self, conn: &Connection) -> Result<(), ConnectionError> {
        check_form(&conn.alpha, 1, self.fiber_dim(), self.base_dim())
    }

    /// `theta(X) = (X, alpha(X))`.
    pub fn apply_connection(&self, conn: &Connection, x: &PolyVectorField) -> Result<Section, ConnectionError> {
        self.check_connection(conn)?;
        let gamma = conn.alpha.contract(&[x])?;
        Ok(Section::new(x.clone(), gamma)?)
    }

    pub fn curvature(
        &self,
        conn: &Connection,
        x: &PolyVectorField,
        y: &PolyVectorField,
    ) -> Result<Section, ConnectionError> {
        let tx = self.apply_connection(conn, x)?;
        let ty = self.apply_connection(conn, y)?;
        let txy = self.apply_connection(conn, &x.bracket(y)?)?;
        Ok(&self.bracket(&tx, &ty)? - &txy)
    }
}
