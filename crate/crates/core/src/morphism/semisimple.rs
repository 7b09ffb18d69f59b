use alloc::vec::Vec;

use super::jet::{check_pairs, jet_family, PairReport};
use super::MorphismError;
use crate::algebroid::{Section, TrivialAlgebroid};
use crate::connection::check_form;
use crate::exactcalc::{MultiPoly, PolyForm, VerifiedDiffeo};
use crate::linalg::Matrix;

/// Candidate isomorphism `(v, g) -> (phi_* v, (Psi g + beta(v)) o phi^-1)`
/// between semisimple trivial algebroids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleIso {
    phi: VerifiedDiffeo,
    psi: Vec<Vec<MultiPoly>>,
    psi_inv: Vec<Vec<MultiPoly>>,
    beta: PolyForm,
}

fn poly_matmul(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>], n: usize) -> Vec<Vec<MultiPoly>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = MultiPoly::zero(n);
                    for (l, x) in row.iter().enumerate() {
                        acc += &(x * &b[l][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn is_identity(m: &[Vec<MultiPoly>], n: usize) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len()
            && row
                .iter()
                .enumerate()
                .all(|(j, p)| if i == j { *p == MultiPoly::one(n) } else { p.is_zero() })
    })
}

impl SemisimpleIso {
    /// `psi_inv` certifies pointwise invertibility of `psi` everywhere.
    pub fn new(
        phi: VerifiedDiffeo,
        psi: Vec<Vec<MultiPoly>>,
        psi_inv: Vec<Vec<MultiPoly>>,
        beta: PolyForm,
    ) -> Result<Self, MorphismError> {
        let n = phi.dim();
        let k = psi.len();
        let square = |m: &[Vec<MultiPoly>]| m.len() == k && m.iter().all(|r| r.len() == k && r.iter().all(|p| p.nvars() == n));
        if !square(&psi) || !square(&psi_inv) {
            return Err(MorphismError::Shape(alloc::format!("Psi and its inverse must be {k}x{k} over {n} variables")));
        }
        check_form(&beta, 1, k, n)?;
        if !is_identity(&poly_matmul(&psi, &psi_inv, n), n) || !is_identity(&poly_matmul(&psi_inv, &psi, n), n) {
            return Err(MorphismError::PsiNotInvertible);
        }
        Ok(SemisimpleIso { phi, psi, psi_inv, beta })
    }

    pub fn identity(n: usize, k: usize) -> Self {
        let id: Vec<Vec<MultiPoly>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { MultiPoly::one(n) } else { MultiPoly::zero(n) })
                    .collect()
            })
            .collect();
        SemisimpleIso {
            phi: VerifiedDiffeo::identity(n),
            psi: id.clone(),
            psi_inv: id,
            beta: PolyForm::zero(n, 1, k),
        }
    }

    /// Constant invertible `Psi` with `beta = 0`.
    pub fn constant(phi: VerifiedDiffeo, psi: &Matrix) -> Result<Self, MorphismError> {
        let n = phi.dim();
        let inv = psi.inverse().ok_or(MorphismError::PsiNotInvertible)?;
        let lift = |m: &Matrix| -> Vec<Vec<MultiPoly>> {
            m.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|c| MultiPoly::constant(n, c)).collect())
                .collect()
        };
        let k = psi.rows();
        SemisimpleIso::new(phi, lift(psi), lift(&inv), PolyForm::zero(n, 1, k))
    }

    pub fn phi(&self) -> &VerifiedDiffeo {
        &self.phi
    }

    pub fn psi(&self) -> &[Vec<MultiPoly>] {
        &self.psi
    }

    pub fn psi_inv(&self) -> &[Vec<MultiPoly>] {
        &self.psi_inv
    }

    pub fn beta(&self) -> &PolyForm {
        &self.beta
    }

    pub fn fiber_dim(&self) -> usize {
        self.psi.len()
    }

    pub fn apply(&self, a: &Section) -> Result<Section, MorphismError> {
        let n = self.phi.dim();
        if a.base_dim() != n || a.fiber_dim() != self.fiber_dim() {
            return Err(MorphismError::Shape(alloc::format!(
                "section of shape ({}, {}) for a map on ({n}, {})",
                a.base_dim(),
                a.fiber_dim(),
                self.fiber_dim()
            )));
        }
        let v = self.phi.pushforward(a.v())?;
        let beta_v = self.beta.contract(&[a.v()])?;
        let gamma = self
            .psi
            .iter()
            .zip(beta_v)
            .map(|(row, b)| {
                let mut acc = b;
                for (p, g) in row.iter().zip(a.gamma()) {
                    acc += &(p * g);
                }
                self.phi.push_function(&acc)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Section::new(v, gamma)?)
    }

    /// `Phi[a, b] - [Phi a, Phi b]`.
    pub fn bracket_defect(
        &self,
        src: &TrivialAlgebroid,
        dst: &TrivialAlgebroid,
        a: &Section,
        b: &Section,
    ) -> Result<Section, MorphismError> {
        let lhs = self.apply(&src.bracket(a, b)?)?;
        let rhs = dst.bracket(&self.apply(a)?, &self.apply(b)?)?;
        Ok(&lhs - &rhs)
    }

    /// Bracket preservation on the jet family of `src`.
    pub fn check(&self, src: &TrivialAlgebroid, dst: &TrivialAlgebroid, degree: u32) -> Result<PairReport<Section>, MorphismError> {
        let family = jet_family(src, degree);
        check_pairs(&family, |a, b| self.bracket_defect(src, dst, a, b), Section::is_zero)
    }
}
