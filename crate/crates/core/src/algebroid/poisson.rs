use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{AlgebroidError, Section, TrivialAlgebroid};
use crate::exactcalc::MultiPoly;

/// Polynomial on the dual bundle in the variables `x_1..x_n`, `p_1..p_n`,
/// `mu_1..mu_k`, stored in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberLinearFunction {
    n: usize,
    k: usize,
    poly: MultiPoly,
}

impl FiberLinearFunction {
    pub fn new(n: usize, k: usize, poly: MultiPoly) -> Result<Self, AlgebroidError> {
        if poly.nvars() != 2 * n + k {
            return Err(crate::exactcalc::CalcError::DimensionMismatch {
                expected: 2 * n + k,
                found: poly.nvars(),
            }
            .into());
        }
        Ok(FiberLinearFunction { n, k, poly })
    }

    pub fn zero(n: usize, k: usize) -> Self {
        FiberLinearFunction {
            n,
            k,
            poly: MultiPoly::zero(2 * n + k),
        }
    }

    /// Base function `f(x)` lifted to the dual bundle.
    pub fn base(n: usize, k: usize, f: &MultiPoly) -> Self {
        FiberLinearFunction {
            n,
            k,
            poly: f.embed(2 * n + k, 0),
        }
    }

    pub fn x(n: usize, k: usize, i: usize) -> Self {
        Self::generator(n, k, i)
    }

    pub fn p(n: usize, k: usize, i: usize) -> Self {
        Self::generator(n, k, n + i)
    }

    pub fn mu(n: usize, k: usize, a: usize) -> Self {
        Self::generator(n, k, 2 * n + a)
    }

    /// Every coordinate generator `x_i`, `p_i`, `mu_a`.
    pub fn generators(n: usize, k: usize) -> Vec<Self> {
        (0..2 * n + k).map(|i| Self::generator(n, k, i)).collect()
    }

    fn generator(n: usize, k: usize, i: usize) -> Self {
        FiberLinearFunction {
            n,
            k,
            poly: MultiPoly::var(2 * n + k, i),
        }
    }

    /// `l(v, gamma) = sum v^i p_i + sum gamma_a mu_a`.
    pub fn of_section(a: &Section) -> Self {
        let n = a.base_dim();
        let k = a.fiber_dim();
        let total = 2 * n + k;
        let mut poly = MultiPoly::zero(total);
        for (i, vi) in a.v().components().iter().enumerate() {
            poly += &(&vi.embed(total, 0) * &MultiPoly::var(total, n + i));
        }
        for (b, gb) in a.gamma().iter().enumerate() {
            poly += &(&gb.embed(total, 0) * &MultiPoly::var(total, 2 * n + b));
        }
        FiberLinearFunction { n, k, poly }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn fiber_dim(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        FiberLinearFunction {
            n: self.n,
            k: self.k,
            poly: &self.poly + &other.poly,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FiberLinearFunction {
            n: self.n,
            k: self.k,
            poly: &self.poly - &other.poly,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        FiberLinearFunction {
            n: self.n,
            k: self.k,
            poly: &self.poly * &other.poly,
        }
    }
}

impl fmt::Display for FiberLinearFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl TrivialAlgebroid {
    /// Linear Poisson bracket on the dual:
    /// `{F, G} = sum_i (F_{p_i} G_{x_i} - F_{x_i} G_{p_i}) + sum c_ab^d mu_d F_{mu_a} G_{mu_b}`.
    pub fn poisson_bracket(
        &self,
        f: &FiberLinearFunction,
        g: &FiberLinearFunction,
    ) -> Result<FiberLinearFunction, AlgebroidError> {
        let n = self.base_dim();
        let k = self.fiber_dim();
        for h in [f, g] {
            if h.n != n || h.k != k {
                return Err(crate::exactcalc::CalcError::DimensionMismatch {
                    expected: 2 * n + k,
                    found: 2 * h.n + h.k,
                }
                .into());
            }
        }
        let total = 2 * n + k;
        let mut out = MultiPoly::zero(total);
        for i in 0..n {
            out += &(&f.poly.partial(n + i)? * &g.poly.partial(i)?);
            out -= &(&f.poly.partial(i)? * &g.poly.partial(n + i)?);
        }
        let fm: Vec<MultiPoly> = (0..k).map(|a| f.poly.partial(2 * n + a)).collect::<Result<_, _>>()?;
        let gm: Vec<MultiPoly> = (0..k).map(|a| g.poly.partial(2 * n + a)).collect::<Result<_, _>>()?;
        for (a, fa) in fm.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in gm.iter().enumerate() {
                if gb.is_zero() || a == b {
                    continue;
                }
                let mut mu = MultiPoly::zero(total);
                for d in 0..k {
                    let c = self.fiber.structure_constant(a, b, d);
                    if !c.is_zero() {
                        mu += &MultiPoly::var(total, 2 * n + d).scale(c);
                    }
                }
                if !mu.is_zero() {
                    out += &(&(fa * gb) * &mu);
                }
            }
        }
        Ok(FiberLinearFunction { n, k, poly: out })
    }
}
