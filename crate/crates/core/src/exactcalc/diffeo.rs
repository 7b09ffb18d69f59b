use alloc::vec::Vec;
use core::fmt;

use super::{CalcError, MultiPoly, PolyForm, PolyVectorField};
use crate::linalg::Matrix;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseDirection {
    /// `forward(inverse(y))`
    ForwardAfterInverse,
    /// `inverse(forward(x))`
    InverseAfterForward,
}

impl fmt::Display for InverseDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InverseDirection::ForwardAfterInverse => "forward(inverse)",
            InverseDirection::InverseAfterForward => "inverse(forward)",
        })
    }
}

/// A polynomial map together with a polynomial inverse, both compositions
/// checked to be the identity when the value is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedDiffeo {
    forward: Vec<MultiPoly>,
    inverse: Vec<MultiPoly>,
}

fn check_identity(composed: &[MultiPoly], direction: InverseDirection) -> Result<(), CalcError> {
    let n = composed.len();
    for (i, c) in composed.iter().enumerate() {
        if *c != MultiPoly::var(n, i) {
            return Err(CalcError::NotInverse {
                direction,
                component: i,
                composed: c.clone(),
            });
        }
    }
    Ok(())
}

impl VerifiedDiffeo {
    pub fn new(forward: Vec<MultiPoly>, inverse: Vec<MultiPoly>) -> Result<Self, CalcError> {
        let n = forward.len();
        if inverse.len() != n {
            return Err(CalcError::DimensionMismatch {
                expected: n,
                found: inverse.len(),
            });
        }
        if let Some(bad) = forward.iter().chain(&inverse).find(|p| p.nvars() != n) {
            return Err(CalcError::DimensionMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        let fi = forward
            .iter()
            .map(|p| p.compose(&inverse))
            .collect::<Result<Vec<_>, _>>()?;
        check_identity(&fi, InverseDirection::ForwardAfterInverse)?;
        let if_ = inverse
            .iter()
            .map(|p| p.compose(&forward))
            .collect::<Result<Vec<_>, _>>()?;
        check_identity(&if_, InverseDirection::InverseAfterForward)?;
        Ok(VerifiedDiffeo { forward, inverse })
    }

    pub fn identity(n: usize) -> Self {
        let id: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        VerifiedDiffeo {
            forward: id.clone(),
            inverse: id,
        }
    }

    /// `x -> A x + b` for invertible `A`.
    pub fn affine(a: &Matrix, b: &[Rational]) -> Option<Self> {
        let n = a.rows();
        if a.cols() != n || b.len() != n {
            return None;
        }
        let inv = a.inverse()?;
        let apply = |m: &Matrix, shift: &[Rational]| -> Vec<MultiPoly> {
            (0..n)
                .map(|i| {
                    let mut p = MultiPoly::constant(n, shift[i].clone());
                    for j in 0..n {
                        p += &MultiPoly::var(n, j).scale(m.get(i, j));
                    }
                    p
                })
                .collect()
        };
        // inverse: y -> A^{-1} (y - b)
        let neg_shift: Vec<Rational> = inv.mul_vec(b).into_iter().map(|v| -v).collect();
        VerifiedDiffeo::new(apply(a, b), apply(&inv, &neg_shift)).ok()
    }

    /// Triangular shear `x_target -> x_target + h`, with `h` free of `x_target`.
    pub fn shear(n: usize, target: usize, h: MultiPoly) -> Option<Self> {
        if target >= n || h.nvars() != n || h.depends_on(target) {
            return None;
        }
        let mut forward: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        let mut inverse = forward.clone();
        forward[target] = &forward[target] + &h;
        inverse[target] = &inverse[target] - &h;
        VerifiedDiffeo::new(forward, inverse).ok()
    }

    pub fn dim(&self) -> usize {
        self.forward.len()
    }

    pub fn forward(&self) -> &[MultiPoly] {
        &self.forward
    }

    pub fn inverse(&self) -> &[MultiPoly] {
        &self.inverse
    }

    pub fn inverted(&self) -> VerifiedDiffeo {
        VerifiedDiffeo {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `self` after `other`, i.e. `x -> self(other(x))`.
    pub fn after(&self, other: &VerifiedDiffeo) -> Result<VerifiedDiffeo, CalcError> {
        let forward = self
            .forward
            .iter()
            .map(|p| p.compose(&other.forward))
            .collect::<Result<Vec<_>, _>>()?;
        let inverse = other
            .inverse
            .iter()
            .map(|p| p.compose(&self.inverse))
            .collect::<Result<Vec<_>, _>>()?;
        VerifiedDiffeo::new(forward, inverse)
    }

    pub fn is_identity(&self) -> bool {
        *self == VerifiedDiffeo::identity(self.dim())
    }

    /// Jacobian `J[i][j] = d_j forward_i`.
    pub fn jacobian(&self) -> Vec<Vec<MultiPoly>> {
        self.forward
            .iter()
            .map(|p| (0..self.dim()).map(|j| p.partial(j).expect("in range")).collect())
            .collect()
    }

    /// `f o phi^{-1}`: moves a function from the source chart to the target chart.
    pub fn push_function(&self, f: &MultiPoly) -> Result<MultiPoly, CalcError> {
        f.compose(&self.inverse)
    }

    /// `f o phi`.
    pub fn pull_function(&self, f: &MultiPoly) -> Result<MultiPoly, CalcError> {
        f.compose(&self.forward)
    }

    /// `(phi_* X)(y) = D phi(phi^{-1} y) X(phi^{-1} y)`.
    pub fn pushforward(&self, x: &PolyVectorField) -> Result<PolyVectorField, CalcError> {
        let n = self.dim();
        if x.dim() != n {
            return Err(CalcError::DimensionMismatch {
                expected: n,
                found: x.dim(),
            });
        }
        let jac = self.jacobian();
        let components = jac
            .iter()
            .map(|row| {
                let mut acc = MultiPoly::zero(n);
                for (dij, xj) in row.iter().zip(x.components()) {
                    acc += &(dij * xj);
                }
                self.push_function(&acc)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolyVectorField::new(components)
    }

    /// `phi^* omega = sum_I omega_I(phi) d phi_{i1} ^ ... ^ d phi_{iq}`.
    pub fn pullback(&self, omega: &PolyForm) -> Result<PolyForm, CalcError> {
        let n = self.dim();
        if omega.nvars() != n {
            return Err(CalcError::DimensionMismatch {
                expected: n,
                found: omega.nvars(),
            });
        }
        let differentials: Vec<PolyForm> = self
            .forward
            .iter()
            .map(|p| PolyForm::function(p.clone()).d())
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = PolyForm::zero(n, omega.degree(), omega.rank());
        for (idx, value) in omega.terms() {
            let mut basis = PolyForm::function(MultiPoly::one(n));
            for &i in idx {
                basis = basis.wedge(&differentials[i])?;
            }
            let pulled = value
                .iter()
                .map(|p| self.pull_function(p))
                .collect::<Result<Vec<_>, _>>()?;
            for (bidx, bval) in basis.terms() {
                let term = pulled.iter().map(|p| &bval[0] * p).collect();
                out.add_term(bidx, term)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use alloc::vec;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn square_shear() -> VerifiedDiffeo {
        VerifiedDiffeo::new(
            vec![x(2, 0), &x(2, 1) + &(&x(2, 0) * &x(2, 0))],
            vec![x(2, 0), &x(2, 1) - &(&x(2, 0) * &x(2, 0))],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_valid() {
        assert!(VerifiedDiffeo::new(vec![x(2, 0), x(2, 1)], vec![x(2, 0), x(2, 1)]).is_ok());
    }

    #[test]
    fn shear_builtin_matches_explicit() {
        let s = VerifiedDiffeo::shear(2, 1, &x(2, 0) * &x(2, 0)).unwrap();
        assert_eq!(s, square_shear());
        assert!(VerifiedDiffeo::shear(2, 1, x(2, 1)).is_none());
    }

    #[test]
    fn square_map_is_not_invertible() {
        let err = VerifiedDiffeo::new(vec![&x(2, 0) * &x(2, 0), x(2, 1)], vec![x(2, 0), x(2, 1)]).unwrap_err();
        assert!(matches!(err, CalcError::NotInverse { component: 0, .. }));
    }

    #[test]
    fn pushforward_examples() {
        let phi = square_shear();
        let d1 = PolyVectorField::coordinate(2, 0);
        let d2 = PolyVectorField::coordinate(2, 1);
        assert_eq!(phi.pushforward(&d2).unwrap(), d2);
        // phi_* d1 = d1 + 2 y1 d2
        let expected = PolyVectorField::new(vec![MultiPoly::one(2), x(2, 0).scale(&int(2))]).unwrap();
        assert_eq!(phi.pushforward(&d1).unwrap(), expected);
        assert_eq!(VerifiedDiffeo::identity(2).pushforward(&d1).unwrap(), d1);
    }

    #[test]
    fn pullback_of_dx2_under_shear() {
        let phi = square_shear();
        let expected = PolyForm::dx(2, 1)
            .add(&PolyForm::dx(2, 0).mul_fn(&x(2, 0).scale(&int(2))).unwrap())
            .unwrap();
        assert_eq!(phi.pullback(&PolyForm::dx(2, 1)).unwrap(), expected);
    }

    #[test]
    fn affine_round_trip() {
        let a = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(1)]]);
        let phi = VerifiedDiffeo::affine(&a, &[int(3), int(-1)]).unwrap();
        assert!(phi.after(&phi.inverted()).unwrap().is_identity());
    }
}
