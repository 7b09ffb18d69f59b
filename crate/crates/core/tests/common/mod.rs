#![allow(dead_code)]

use atiyah_core::algebroid::Section;
use atiyah_core::exactcalc::{MultiPoly, PolyForm, PolyVectorField, VerifiedDiffeo};
use atiyah_core::int;
use proptest::prelude::*;

/// Polynomial in `n` variables with small integer coefficients and total degree at most `deg`.
pub fn poly(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0..=deg, n)), 0..=max_terms).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|(_, e)| e.iter().sum::<u32>() <= deg)
            .map(|(c, e)| (int(c), e));
        MultiPoly::from_terms(n, terms).unwrap()
    })
}

pub fn vector_field(n: usize, deg: u32) -> impl Strategy<Value = PolyVectorField> {
    prop::collection::vec(poly(n, deg, 3), n).prop_map(|c| PolyVectorField::new(c).unwrap())
}

pub fn section(n: usize, k: usize, deg: u32) -> impl Strategy<Value = Section> {
    (vector_field(n, deg), prop::collection::vec(poly(n, deg, 3), k))
        .prop_map(|(v, g)| Section::new(v, g).unwrap())
}

pub fn kernel_section(n: usize, k: usize, deg: u32) -> impl Strategy<Value = Section> {
    prop::collection::vec(poly(n, deg, 3), k).prop_map(move |g| Section::kernel(n, g).unwrap())
}

/// Form of the given degree and rank with random coefficients on every index tuple.
pub fn form(n: usize, degree: usize, rank: usize, deg: u32) -> impl Strategy<Value = PolyForm> {
    let tuples = index_tuples(n, degree);
    let count = tuples.len();
    prop::collection::vec(prop::collection::vec(poly(n, deg, 2), rank), count).prop_map(move |values| {
        let mut w = PolyForm::zero(n, degree, rank);
        for (idx, v) in tuples.iter().zip(values) {
            w.add_term(idx, v).unwrap();
        }
        w
    })
}

pub fn index_tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, q, &mut Vec::new(), &mut out);
    out
}

/// Two shears `x_t -> x_t + h` (with `h` free of `x_t`) composed.
pub fn diffeo(n: usize) -> impl Strategy<Value = VerifiedDiffeo> {
    prop::collection::vec(poly(n, 2, 2), n.min(2)).prop_map(move |hs| {
        let mut phi = VerifiedDiffeo::identity(n);
        for (t, h) in hs.into_iter().enumerate() {
            // keep only the part not depending on x_t
            let h = MultiPoly::from_terms(
                n,
                h.terms()
                    .filter(|(m, _)| m.exponents()[t] == 0)
                    .map(|(m, c)| (c.clone(), m.exponents().to_vec())),
            )
            .unwrap();
            let s = VerifiedDiffeo::shear(n, t, h).unwrap();
            phi = s.after(&phi).unwrap();
        }
        phi
    })
}
