//! Finite-dimensional Lie algebras over `Q` given by structure constants.

mod catalog;
mod structure;
mod subspace;

pub use catalog::catalog;
pub use structure::{
    center, derived_ideal, killing_form, killing_semisimple, quotient_by_center, reductive_decomposition,
    simple_and_maximal_ideals, IdealDecomposition, KillingReport, NotReductiveReason, QuotientAlgebra,
    ReductiveSplit,
};
pub use subspace::Subspace;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::Rational;

/// `[e_a, e_b] = sum coeff * e_d`, written as `(a, b, &[(coeff, d)])`.
pub(crate) type BasisBracket<'a> = (usize, usize, &'a [(i64, usize)]);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("structure constants are not a {dim}x{dim}x{dim} array")]
    Shape { dim: usize },
    #[error("antisymmetry fails: c[{a}][{b}][{d}] = {ab}, c[{b}][{a}][{d}] = {ba}")]
    AntisymmetryViolation {
        a: usize,
        b: usize,
        d: usize,
        ab: Box<Rational>,
        ba: Box<Rational>,
    },
    #[error("Jacobi identity fails on basis triple ({a}, {b}, {c}): component {d} is {value}")]
    JacobiViolation {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        value: Box<Rational>,
    },
    #[error("algebra is not reductive: {0}")]
    NotReductive(NotReductiveReason),
    #[error("algebra is not semisimple (Killing determinant is zero)")]
    NotSemisimple,
    #[error("unknown catalog algebra `{0}`")]
    UnknownCatalog(String),
    #[error("vector of length {found} in an algebra of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors are linearly dependent")]
    Dependent,
}

/// A validated Lie algebra: `[e_a, e_b] = sum_d c[a][b][d] e_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    c: Vec<Rational>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity on all basis triples.
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self, LieError> {
        let dim = c.len();
        if c.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(LieError::Shape { dim });
        }
        let names = if names.is_empty() {
            (1..=dim).map(|i| format!("e{i}")).collect()
        } else if names.len() != dim {
            return Err(LieError::Shape { dim });
        } else {
            names
        };
        let flat = c.into_iter().flatten().flatten().collect();
        let g = LieAlgebra { dim, names, c: flat };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// Builds from the nonzero brackets `[e_a, e_b] = sum (coef, d)` with `a < b`.
    pub(crate) fn from_brackets(names: &[&str], brackets: &[BasisBracket<'_>]) -> Self {
        let dim = names.len();
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for &(a, b, terms) in brackets {
            for &(coef, d) in terms {
                c[a][b][d] = crate::int(coef);
                c[b][a][d] = crate::int(-coef);
            }
        }
        LieAlgebra::new(names.iter().map(|s| String::from(*s)).collect(), c).expect("catalog algebra is valid")
    }

    pub fn abelian(dim: usize) -> Self {
        let names = (1..=dim).map(|i| format!("z{i}")).collect();
        LieAlgebra {
            dim,
            names,
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constant(&self, a: usize, b: usize, d: usize) -> &Rational {
        &self.c[(a * self.dim + b) * self.dim + d]
    }

    /// Nested `c[a][b][d]` array.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| (0..self.dim).map(|d| self.structure_constant(a, b, d).clone()).collect())
                    .collect()
            })
            .collect()
    }

    /// Standard basis vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = crate::int(1);
        v
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Rational::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let w = xa * yb;
                for (d, slot) in out.iter_mut().enumerate() {
                    let cabd = self.structure_constant(a, b, d);
                    if !cabd.is_zero() {
                        *slot += &w * cabd;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`, columns indexed by the input basis vector.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|b| self.bracket(x, &self.basis_vector(b))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Direct sum `self (+) other` with block structure constants.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let dim = self.dim + other.dim;
        let mut c = vec![Rational::zero(); dim * dim * dim];
        let idx = |a: usize, b: usize, d: usize| (a * dim + b) * dim + d;
        for a in 0..self.dim {
            for b in 0..self.dim {
                for d in 0..self.dim {
                    c[idx(a, b, d)] = self.structure_constant(a, b, d).clone();
                }
            }
        }
        let o = self.dim;
        for a in 0..other.dim {
            for b in 0..other.dim {
                for d in 0..other.dim {
                    c[idx(o + a, o + b, o + d)] = other.structure_constant(a, b, d).clone();
                }
            }
        }
        let mut names: Vec<String> = Vec::with_capacity(dim);
        let clash = self.names.iter().any(|n| other.names.contains(n));
        if clash {
            names.extend(self.names.iter().map(|n| format!("{n}_1")));
            names.extend(other.names.iter().map(|n| format!("{n}_2")));
        } else {
            names.extend(self.names.iter().cloned());
            names.extend(other.names.iter().cloned());
        }
        LieAlgebra { dim, names, c }
    }

    fn check_antisymmetry(&self) -> Result<(), LieError> {
        for a in 0..self.dim {
            for b in a..self.dim {
                for d in 0..self.dim {
                    let ab = self.structure_constant(a, b, d);
                    let ba = self.structure_constant(b, a, d);
                    if ab != &-ba.clone() {
                        return Err(LieError::AntisymmetryViolation {
                            a,
                            b,
                            d,
                            ab: Box::new(ab.clone()),
                            ba: Box::new(ba.clone()),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Jacobiator `[[a,b],c] + [[b,c],a] + [[c,a],b]` of basis vectors.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<Rational> {
        let (ea, eb, ec) = (self.basis_vector(a), self.basis_vector(b), self.basis_vector(c));
        let t1 = self.bracket(&self.bracket(&ea, &eb), &ec);
        let t2 = self.bracket(&self.bracket(&eb, &ec), &ea);
        let t3 = self.bracket(&self.bracket(&ec, &ea), &eb);
        t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x + y + z).collect()
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for c in b + 1..self.dim {
                    let j = self.jacobiator(a, b, c);
                    if let Some((d, value)) = j.into_iter().enumerate().find(|(_, v)| !v.is_zero()) {
                        return Err(LieError::JacobiViolation { a, b, c, d, value: Box::new(value) });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Gatekeeper for user-supplied structure constants.
pub fn validate_lie_algebra(names: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<LieAlgebra, LieError> {
    LieAlgebra::new(names, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn zeros(k: usize) -> Vec<Vec<Vec<Rational>>> {
        vec![vec![vec![Rational::zero(); k]; k]; k]
    }

    #[test]
    fn sl2_relations_are_valid() {
        let mut c = zeros(3);
        // basis (h, e, f)
        c[0][1][1] = int(2);
        c[1][0][1] = int(-2);
        c[0][2][2] = int(-2);
        c[2][0][2] = int(2);
        c[1][2][0] = int(1);
        c[2][1][0] = int(-1);
        let g = validate_lie_algebra(Vec::new(), c).unwrap();
        assert_eq!(g, catalog("sl2").unwrap().with_default_names());
    }

    #[test]
    fn abelian_is_valid() {
        assert!(validate_lie_algebra(Vec::new(), zeros(2)).is_ok());
    }

    #[test]
    fn symmetric_bracket_is_rejected() {
        let mut c = zeros(2);
        c[0][1][0] = int(1);
        c[1][0][0] = int(1);
        assert!(matches!(
            validate_lie_algebra(Vec::new(), c),
            Err(LieError::AntisymmetryViolation { a: 0, b: 1, d: 0, .. })
        ));
    }

    #[test]
    fn jacobi_failure_has_witness() {
        // [e1,e2]=e3, [e1,e3]=e1, everything else zero: Jacobi fails on (1,2,3)
        let mut c = zeros(3);
        c[0][1][2] = int(1);
        c[1][0][2] = int(-1);
        c[0][2][0] = int(1);
        c[2][0][0] = int(-1);
        assert!(matches!(
            validate_lie_algebra(Vec::new(), c),
            Err(LieError::JacobiViolation { a: 0, b: 1, c: 2, .. })
        ));
    }

    #[test]
    fn nonzero_diagonal_is_rejected() {
        let mut c = zeros(2);
        c[1][1][0] = int(1);
        assert!(matches!(
            validate_lie_algebra(Vec::new(), c),
            Err(LieError::AntisymmetryViolation { a: 1, b: 1, .. })
        ));
    }

    impl LieAlgebra {
        fn with_default_names(mut self) -> Self {
            self.names = (1..=self.dim).map(|i| format!("e{i}")).collect();
            self
        }
    }
}
