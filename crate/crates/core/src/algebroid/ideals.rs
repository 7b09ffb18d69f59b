use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use super::{AlgebroidError, Section, TrivialAlgebroid};
use crate::exactcalc::MultiPoly;
use crate::liealg::{self, Subspace};
use crate::Rational;

/// Pointwise ideals and subalgebras of the section algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealKind {
    /// Kernel sections: `v = 0`.
    K,
    /// Kernel sections with `gamma(m)` in a fixed maximal ideal `g0`.
    KmG0,
    /// Kernel sections with `gamma(m) = 0`.
    Km,
    /// Sections with `v(m) = 0`.
    AnchorVanishing,
    /// Sections with `v(m) = 0` and `gamma(m) = 0`.
    Am,
}

impl IdealKind {
    pub const ALL: [IdealKind; 5] = [
        IdealKind::K,
        IdealKind::KmG0,
        IdealKind::Km,
        IdealKind::AnchorVanishing,
        IdealKind::Am,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdealKind::K => "K",
            IdealKind::KmG0 => "K(m,g0)",
            IdealKind::Km => "K(m)",
            IdealKind::AnchorVanishing => "A_m",
            IdealKind::Am => "A(m)",
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdealKind {
    type Err = AlgebroidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        IdealKind::ALL
            .into_iter()
            .find(|k| k.as_str() == compact)
            .ok_or_else(|| AlgebroidError::MalformedQuery(alloc::format!("unknown ideal kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointIdealQuery {
    kind: IdealKind,
    m: Vec<Rational>,
    g0: Option<Subspace>,
}

impl PointIdealQuery {
    /// `g0` must be given exactly for `K(m,g0)`.
    pub fn new(kind: IdealKind, m: Vec<Rational>, g0: Option<Subspace>) -> Result<Self, AlgebroidError> {
        match (kind, &g0) {
            (IdealKind::KmG0, None) => Err(AlgebroidError::MalformedQuery("K(m,g0) requires g0".to_string())),
            (IdealKind::KmG0, Some(_)) | (_, None) => Ok(PointIdealQuery { kind, m, g0 }),
            (_, Some(_)) => Err(AlgebroidError::MalformedQuery(alloc::format!(
                "g0 given for kind {kind}"
            ))),
        }
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn point(&self) -> &[Rational] {
        &self.m
    }

    pub fn g0(&self) -> Option<&Subspace> {
        self.g0.as_ref()
    }
}

fn all_zero(xs: &[Rational]) -> bool {
    xs.iter().all(Zero::is_zero)
}

impl TrivialAlgebroid {
    pub fn ideal_membership(&self, a: &Section, q: &PointIdealQuery) -> Result<bool, AlgebroidError> {
        let (v, gamma) = self.eval_section(a, &q.m)?;
        Ok(match q.kind {
            IdealKind::K => a.is_kernel(),
            IdealKind::KmG0 => {
                let g0 = q.g0.as_ref().expect("checked at construction");
                if g0.ambient_dim() != self.fiber_dim() {
                    return Err(AlgebroidError::MalformedQuery("g0 lives in the wrong ambient space".to_string()));
                }
                a.is_kernel() && g0.contains(&gamma)
            }
            IdealKind::Km => a.is_kernel() && all_zero(&gamma),
            IdealKind::AnchorVanishing => all_zero(&v),
            IdealKind::Am => all_zero(&v) && all_zero(&gamma),
        })
    }

    fn require_maximal(&self, g0: &Subspace) -> Result<(), AlgebroidError> {
        let ideals = liealg::simple_and_maximal_ideals(&self.fiber)?;
        if ideals.maximals.contains(g0) {
            Ok(())
        } else {
            Err(AlgebroidError::NotMaximalIdeal)
        }
    }

    /// Whether `a` normalizes `K(m, g0)`; this is `v(m) = 0`.
    pub fn normalizer_test(&self, a: &Section, m: &[Rational], g0: &Subspace) -> Result<bool, AlgebroidError> {
        self.require_maximal(g0)?;
        let (v, _) = self.eval_section(a, m)?;
        Ok(all_zero(&v))
    }

    /// Test sections spanning `K(m, g0)` modulo sections whose bracket with
    /// anything stays inside: the constant `g0` basis and `(x_j - m_j) e` for
    /// `e` in a complement of `g0` made of standard basis vectors.
    pub fn normalizer_test_sections(&self, m: &[Rational], g0: &Subspace) -> Vec<Section> {
        let n = self.base_dim();
        let k = self.fiber_dim();
        let mut out: Vec<Section> = g0.basis().iter().map(|b| Section::constant_kernel(n, b)).collect();
        let mut span = g0.clone();
        for b in 0..k {
            let e = self.fiber.basis_vector(b);
            if span.contains(&e) {
                continue;
            }
            span = span.sum(&Subspace::span(k, alloc::vec![e.clone()]));
            for (j, mj) in m.iter().enumerate() {
                let y = &MultiPoly::var(n, j) - &MultiPoly::constant(n, mj.clone());
                out.push(Section::constant_kernel(n, &e).mul_fn(&y));
            }
        }
        out
    }

    /// Brute-force normalizer check: brackets `a` with every test section and
    /// asks whether the value at `m` stays in `g0`.
    pub fn normalizer_jet_test(&self, a: &Section, m: &[Rational], g0: &Subspace) -> Result<bool, AlgebroidError> {
        self.require_maximal(g0)?;
        self.check_point(m)?;
        for eta in self.normalizer_test_sections(m, g0) {
            let b = self.bracket(a, &eta)?;
            let (_, gamma) = self.eval_section(&b, m)?;
            if !g0.contains(&gamma) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
