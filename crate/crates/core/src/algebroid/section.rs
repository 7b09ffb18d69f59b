use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::exactcalc::{CalcError, MultiPoly, PolyVectorField};
use crate::Rational;

/// Section `(v, gamma)` of `TU x g`: a vector field and a `g`-valued function
/// written in the basis of the fiber algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    v: PolyVectorField,
    gamma: Vec<MultiPoly>,
}

impl Section {
    pub fn new(v: PolyVectorField, gamma: Vec<MultiPoly>) -> Result<Self, CalcError> {
        if let Some(bad) = gamma.iter().find(|p| p.nvars() != v.dim()) {
            return Err(CalcError::DimensionMismatch {
                expected: v.dim(),
                found: bad.nvars(),
            });
        }
        Ok(Section { v, gamma })
    }

    pub fn zero(n: usize, k: usize) -> Self {
        Section {
            v: PolyVectorField::zero(n),
            gamma: (0..k).map(|_| MultiPoly::zero(n)).collect(),
        }
    }

    /// Kernel section `(0, gamma)`; `n` is the base dimension.
    pub fn kernel(n: usize, gamma: Vec<MultiPoly>) -> Result<Self, CalcError> {
        Section::new(PolyVectorField::zero(n), gamma)
    }

    /// `(v, 0)` with a `k`-dimensional fiber.
    pub fn horizontal(v: PolyVectorField, k: usize) -> Self {
        let n = v.dim();
        Section {
            v,
            gamma: (0..k).map(|_| MultiPoly::zero(n)).collect(),
        }
    }

    /// Constant kernel section `(0, x)` for a fiber vector `x`.
    pub fn constant_kernel(n: usize, x: &[Rational]) -> Self {
        Section {
            v: PolyVectorField::zero(n),
            gamma: x.iter().map(|c| MultiPoly::constant(n, c.clone())).collect(),
        }
    }

    pub fn v(&self) -> &PolyVectorField {
        &self.v
    }

    pub fn gamma(&self) -> &[MultiPoly] {
        &self.gamma
    }

    pub fn into_parts(self) -> (PolyVectorField, Vec<MultiPoly>) {
        (self.v, self.gamma)
    }

    pub fn base_dim(&self) -> usize {
        self.v.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.gamma.iter().all(MultiPoly::is_zero)
    }

    /// Anchor identically zero.
    pub fn is_kernel(&self) -> bool {
        self.v.is_zero()
    }

    /// `f * a`.
    pub fn mul_fn(&self, f: &MultiPoly) -> Section {
        Section {
            v: self.v.mul_fn(f).expect("function on the section's chart"),
            gamma: self.gamma.iter().map(|g| f * g).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Section {
        Section {
            v: self.v.scale(c),
            gamma: self.gamma.iter().map(|g| g.scale(c)).collect(),
        }
    }

    fn assert_compatible(&self, other: &Section) {
        assert_eq!(
            (self.base_dim(), self.fiber_dim()),
            (other.base_dim(), other.fiber_dim()),
            "sections of different algebroids"
        );
    }
}

impl Add for &Section {
    type Output = Section;
    fn add(self, rhs: &Section) -> Section {
        self.assert_compatible(rhs);
        Section {
            v: self.v.add(&rhs.v).expect("same chart"),
            gamma: self.gamma.iter().zip(&rhs.gamma).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Section {
    type Output = Section;
    fn sub(self, rhs: &Section) -> Section {
        self.assert_compatible(rhs);
        Section {
            v: self.v.sub(&rhs.v).expect("same chart"),
            gamma: self.gamma.iter().zip(&rhs.gamma).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Section {
    type Output = Section;
    fn neg(self) -> Section {
        self.scale(&crate::int(-1))
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, [", self.v)?;
        for (i, g) in self.gamma.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}
