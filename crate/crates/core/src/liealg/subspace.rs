use alloc::vec::Vec;

use num_traits::Zero;

use super::{LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::Rational;

/// Linear subspace of `Q^k`, stored as the nonzero rows of a reduced row echelon
/// form. The representation is canonical, so `==` is equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = alloc::vec![Rational::zero(); ambient];
                v[i] = crate::int(1);
                v
            })
            .collect();
        Self::span(ambient, rows)
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    /// Span of vectors that must be linearly independent.
    pub fn from_basis(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, LieError> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LieError::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        let n = vectors.len();
        let s = Self::span(ambient, vectors);
        if s.dim() != n {
            return Err(LieError::Dependent);
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical (reduced echelon) basis.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Coordinates in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                *r -= c * b;
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // solve sum a_i u_i - sum b_j w_j = 0
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(self.ambient, &cols);
        let vectors = m
            .nullspace()
            .into_iter()
            .map(|sol| {
                let mut v = alloc::vec![Rational::zero(); self.ambient];
                for (a, u) in sol.iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, vectors)
    }

    /// `[e_b, s] in S` for every algebra basis vector `e_b` and subspace basis vector `s`.
    pub fn is_ideal_of(&self, g: &LieAlgebra) -> bool {
        (0..g.dim()).all(|b| {
            let eb = g.basis_vector(b);
            self.basis.iter().all(|s| self.contains(&g.bracket(&eb, s)))
        })
    }

    /// `[s, t] in S` for all basis vectors.
    pub fn is_subalgebra_of(&self, g: &LieAlgebra) -> bool {
        self.basis
            .iter()
            .all(|s| self.basis.iter().all(|t| self.contains(&g.bracket(s, t))))
    }

    /// Smallest ideal of `g` containing this subspace.
    pub fn ideal_closure(&self, g: &LieAlgebra) -> Subspace {
        let mut current = self.clone();
        loop {
            let mut rows = current.basis.clone();
            for b in 0..g.dim() {
                let eb = g.basis_vector(b);
                for s in &current.basis {
                    rows.push(g.bracket(&eb, s));
                }
            }
            let next = Subspace::span(self.ambient, rows);
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    /// `{x in self : B(x, y) = 0 for all y in other}` for a bilinear form with Gram matrix `gram`.
    pub fn orthogonal_within(&self, other: &Subspace, gram: &Matrix) -> Subspace {
        if self.is_zero() {
            return self.clone();
        }
        // rows: y_l^T G u_i for each basis u_i of self
        let rows: Vec<Vec<Rational>> = other
            .basis
            .iter()
            .map(|y| {
                let gy = gram.transpose().mul_vec(y);
                self.basis
                    .iter()
                    .map(|u| u.iter().zip(&gy).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return self.clone();
        }
        let m = Matrix::from_rows(rows);
        let vectors = m
            .nullspace()
            .into_iter()
            .map(|sol| {
                let mut v = alloc::vec![Rational::zero(); self.ambient];
                for (a, u) in sol.iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, vectors)
    }
}
