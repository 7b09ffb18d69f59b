use alloc::vec::Vec;
use core::fmt;

use super::{CalcError, MultiPoly};
use crate::Rational;

/// Polynomial vector field `sum_i X^i d_i` on an `n`-dimensional chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    components: Vec<MultiPoly>,
}

impl PolyVectorField {
    /// Every component must be a polynomial in `components.len()` variables.
    pub fn new(components: Vec<MultiPoly>) -> Result<Self, CalcError> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(CalcError::DimensionMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            components: (0..n).map(|_| MultiPoly::zero(n)).collect(),
        }
    }

    /// The coordinate field `d_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        Self::coordinate_scaled(n, i, MultiPoly::one(n))
    }

    /// `f * d_i`.
    pub fn coordinate_scaled(n: usize, i: usize, f: MultiPoly) -> Self {
        assert_eq!(f.nvars(), n);
        let mut v = Self::zero(n);
        v.components[i] = f;
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<MultiPoly> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    fn check_dim(&self, n: usize) -> Result<(), CalcError> {
        if self.dim() != n {
            return Err(CalcError::DimensionMismatch {
                expected: self.dim(),
                found: n,
            });
        }
        Ok(())
    }

    /// `X(f) = sum_i X^i d_i f`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, CalcError> {
        self.check_dim(f.nvars())?;
        let mut out = MultiPoly::zero(self.dim());
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            out += &(xi * &f.partial(i)?);
        }
        Ok(out)
    }

    /// `[X, Y]^j = X(Y^j) - Y(X^j)`.
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField, CalcError> {
        self.check_dim(other.dim())?;
        let components = (0..self.dim())
            .map(|j| Ok(&self.apply(&other.components[j])? - &other.apply(&self.components[j])?))
            .collect::<Result<Vec<_>, CalcError>>()?;
        Ok(PolyVectorField { components })
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField, CalcError> {
        self.check_dim(other.dim())?;
        Ok(PolyVectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &PolyVectorField) -> Result<PolyVectorField, CalcError> {
        self.check_dim(other.dim())?;
        Ok(PolyVectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        })
    }

    /// `f * X`.
    pub fn mul_fn(&self, f: &MultiPoly) -> Result<PolyVectorField, CalcError> {
        self.check_dim(f.nvars())?;
        Ok(PolyVectorField {
            components: self.components.iter().map(|c| f * c).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>, CalcError> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*d{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
