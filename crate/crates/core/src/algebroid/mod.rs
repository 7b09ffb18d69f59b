//! The trivial Atiyah algebroid `TU x g` over a polynomial chart.
//!
//! Sections are pairs `(v, gamma)` and the bracket is
//!
//! ```text
//! [(v1, g1), (v2, g2)] = ([v1, v2], [g1, g2]_g + v1(g2) - v2(g1))
//! ```
//!
//! with the `g`-bracket taken pointwise. The anchor is the projection onto
//! the vector field.

mod ideals;
mod poisson;
mod section;

pub use ideals::{IdealKind, PointIdealQuery};
pub use poisson::FiberLinearFunction;
pub use section::Section;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::exactcalc::{CalcError, MultiPoly, PolyVectorField};
use crate::liealg::{self, LieAlgebra, LieError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebroidError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("chart must have at least one coordinate")]
    EmptyChart,
    #[error("section has shape ({base}, {fiber}), algebroid expects ({expected_base}, {expected_fiber})")]
    SectionShape {
        base: usize,
        fiber: usize,
        expected_base: usize,
        expected_fiber: usize,
    },
    #[error("point has {found} coordinates, chart has {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("malformed query: {0}")]
    MalformedQuery(String),
    #[error("subspace is not a maximal ideal of the fiber")]
    NotMaximalIdeal,
    #[error("section is not a center-valued kernel section")]
    NotCenterValued,
    #[error("center coefficient {component} takes the value {value} at the point, not zero")]
    NotVanishing { component: usize, value: Rational },
}

/// Coordinate chart; only its dimension and coordinate labels matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    /// Chart with coordinates `x1..xn`.
    pub fn new(n: usize) -> Result<Self, AlgebroidError> {
        Chart::with_names((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn with_names(names: Vec<String>) -> Result<Self, AlgebroidError> {
        if names.is_empty() {
            return Err(AlgebroidError::EmptyChart);
        }
        Ok(Chart { names })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialAlgebroid {
    chart: Chart,
    fiber: LieAlgebra,
}

/// Pointwise `[x, y]_g` of `g`-valued polynomial maps.
pub(crate) fn fiber_bracket(g: &LieAlgebra, x: &[MultiPoly], y: &[MultiPoly], nvars: usize) -> Vec<MultiPoly> {
    let k = g.dim();
    let mut out: Vec<MultiPoly> = (0..k).map(|_| MultiPoly::zero(nvars)).collect();
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() || a == b {
                continue;
            }
            let mut prod: Option<MultiPoly> = None;
            for (d, slot) in out.iter_mut().enumerate() {
                let c = g.structure_constant(a, b, d);
                if c.is_zero() {
                    continue;
                }
                let p = prod.get_or_insert_with(|| xa * yb);
                *slot += &p.scale(c);
            }
        }
    }
    out
}

impl TrivialAlgebroid {
    pub fn new(chart: Chart, fiber: LieAlgebra) -> Self {
        TrivialAlgebroid { chart, fiber }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn fiber(&self) -> &LieAlgebra {
        &self.fiber
    }

    pub fn base_dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber.dim()
    }

    pub fn zero_section(&self) -> Section {
        Section::zero(self.base_dim(), self.fiber_dim())
    }

    pub fn check_section(&self, a: &Section) -> Result<(), AlgebroidError> {
        if a.base_dim() != self.base_dim() || a.fiber_dim() != self.fiber_dim() {
            return Err(AlgebroidError::SectionShape {
                base: a.base_dim(),
                fiber: a.fiber_dim(),
                expected_base: self.base_dim(),
                expected_fiber: self.fiber_dim(),
            });
        }
        Ok(())
    }

    fn check_point(&self, m: &[Rational]) -> Result<(), AlgebroidError> {
        if m.len() != self.base_dim() {
            return Err(AlgebroidError::PointDimension {
                expected: self.base_dim(),
                found: m.len(),
            });
        }
        Ok(())
    }

    pub fn anchor(&self, a: &Section) -> Result<PolyVectorField, AlgebroidError> {
        self.check_section(a)?;
        Ok(a.v().clone())
    }

    pub fn bracket(&self, a: &Section, b: &Section) -> Result<Section, AlgebroidError> {
        self.check_section(a)?;
        self.check_section(b)?;
        let n = self.base_dim();
        let v = a.v().bracket(b.v())?;
        let mut gamma = fiber_bracket(&self.fiber, a.gamma(), b.gamma(), n);
        for (slot, (ga, gb)) in gamma.iter_mut().zip(a.gamma().iter().zip(b.gamma())) {
            *slot += &a.v().apply(gb)?;
            *slot -= &b.v().apply(ga)?;
        }
        Ok(Section::new(v, gamma)?)
    }

    /// `(v(m), gamma(m))`.
    pub fn eval_section(&self, a: &Section, m: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>), AlgebroidError> {
        self.check_section(a)?;
        self.check_point(m)?;
        let v = a.v().eval(m)?;
        let gamma = a.gamma().iter().map(|g| g.eval(m)).collect::<Result<Vec<_>, _>>()?;
        Ok((v, gamma))
    }

    /// Constant sections `(0, z_i)` for the canonical basis of the fiber center.
    pub fn center_frame(&self) -> Result<Vec<Section>, AlgebroidError> {
        let split = liealg::reductive_decomposition(&self.fiber)?;
        Ok(split
            .center
            .basis()
            .iter()
            .map(|z| Section::constant_kernel(self.base_dim(), z))
            .collect())
    }

    /// Frame coordinates `f^i` of a center-valued kernel section `c = sum f^i c_i`.
    pub fn center_coordinates(&self, c: &Section) -> Result<Vec<MultiPoly>, AlgebroidError> {
        self.check_section(c)?;
        if !c.is_kernel() {
            return Err(AlgebroidError::NotCenterValued);
        }
        let split = liealg::reductive_decomposition(&self.fiber)?;
        let n = self.base_dim();
        let zdim = split.center.dim();
        let mut coords: Vec<MultiPoly> = (0..zdim).map(|_| MultiPoly::zero(n)).collect();
        // every monomial's coefficient vector must lie in Z
        let mut monomials: Vec<Vec<u32>> = c
            .gamma()
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.exponents().to_vec()))
            .collect();
        monomials.sort();
        monomials.dedup();
        for e in monomials {
            let x: Vec<Rational> = c.gamma().iter().map(|p| p.coefficient(&e)).collect();
            let z = split.center.coordinates(&x).ok_or(AlgebroidError::NotCenterValued)?;
            for (slot, zi) in coords.iter_mut().zip(z) {
                *slot += &MultiPoly::monomial(e.clone(), zi);
            }
        }
        Ok(coords)
    }

    /// Writes a center section vanishing at `m` as a sum of brackets `[a_i, z_i]`
    /// with every `a_i` in `A_m`.
    ///
    /// With `y = x - m` we have `1 = d_1(y_1)`, so `a_i = (f^i d_1, 0)` and
    /// `z_i = y_1 c_i` give `[a_i, z_i] = f^i c_i`.
    pub fn z_m_witness(&self, c: &Section, m: &[Rational]) -> Result<Vec<(Section, Section)>, AlgebroidError> {
        self.check_point(m)?;
        let coords = self.center_coordinates(c)?;
        for (i, f) in coords.iter().enumerate() {
            let value = f.eval(m)?;
            if !value.is_zero() {
                return Err(AlgebroidError::NotVanishing { component: i, value });
            }
        }
        let n = self.base_dim();
        let frame = self.center_frame()?;
        let y1 = &MultiPoly::var(n, 0) - &MultiPoly::constant(n, m[0].clone());
        Ok(coords
            .into_iter()
            .zip(frame)
            .filter(|(f, _)| !f.is_zero())
            .map(|(f, ci)| {
                let a = Section::horizontal(PolyVectorField::coordinate_scaled(n, 0, f), self.fiber_dim());
                (a, ci.mul_fn(&y1))
            })
            .collect())
    }
}
