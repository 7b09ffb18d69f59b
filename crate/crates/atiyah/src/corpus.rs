//! Seeded random inputs for property checks.

use atiyah_core::algebroid::Section;
use atiyah_core::exactcalc::{monomials_up_to, MultiPoly, PolyForm, PolyVectorField};
use atiyah_core::liealg::Subspace;
use atiyah_core::Rational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Small rationals and sparse polynomials drawn from a ChaCha stream, so a
/// seed fixes every case bit for bit.
#[derive(Debug, Clone)]
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `p/q` with `|p| <= 5`, `1 <= q <= 3`.
    pub fn rational(&mut self) -> Rational {
        let p: i64 = self.rng.random_range(-5..=5);
        let q: i64 = self.rng.random_range(1..=3);
        atiyah_core::rat(p, q)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    /// Up to `max_terms` monomials of degree at most `degree`.
    pub fn poly(&mut self, n: usize, degree: u32, max_terms: usize) -> MultiPoly {
        let monomials = monomials_up_to(n, degree);
        let terms = self.rng.random_range(0..=max_terms);
        let mut p = MultiPoly::zero(n);
        for _ in 0..terms {
            let m = &monomials[self.index(monomials.len())];
            p += &MultiPoly::monomial(m.exponents().to_vec(), self.nonzero_rational());
        }
        p
    }

    pub fn polys(&mut self, n: usize, len: usize, degree: u32) -> Vec<MultiPoly> {
        (0..len).map(|_| self.poly(n, degree, 3)).collect()
    }

    pub fn vector_field(&mut self, n: usize, degree: u32) -> PolyVectorField {
        PolyVectorField::new(self.polys(n, n, degree)).expect("uniform variable count")
    }

    pub fn section(&mut self, n: usize, k: usize, degree: u32) -> Section {
        let v = self.vector_field(n, degree);
        Section::new(v, self.polys(n, k, degree)).expect("uniform variable count")
    }

    pub fn kernel_section(&mut self, n: usize, k: usize, degree: u32) -> Section {
        Section::kernel(n, self.polys(n, k, degree)).expect("uniform variable count")
    }

    /// Random element of `s` as a combination of its basis.
    pub fn element_of(&mut self, s: &Subspace) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); s.ambient_dim()];
        for b in s.basis() {
            let c = self.rational();
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += &c * bi;
            }
        }
        x
    }

    /// A `rank`-valued one-form with coefficients of degree at most `degree`.
    pub fn one_form(&mut self, n: usize, rank: usize, degree: u32) -> PolyForm {
        let mut w = PolyForm::zero(n, 1, rank);
        for i in 0..n {
            w.add_term(&[i], self.polys(n, rank, degree)).expect("valid index");
        }
        w
    }
}
