mod common;

use atiyah_core::algebroid::{Chart, Section, TrivialAlgebroid};
use atiyah_core::connection::{Connection, ModelAlgebroid};
use atiyah_core::exactcalc::{MultiPoly, PolyForm, PolyVectorField};
use atiyah_core::int;
use atiyah_core::liealg::catalog;
use atiyah_core::linalg::Matrix;
use atiyah_core::morphism::{CenterIso, Divergence, FullMorphism, SemisimpleIso};
use common::*;
use proptest::prelude::*;

fn gl2(n: usize) -> TrivialAlgebroid {
    TrivialAlgebroid::new(Chart::new(n).unwrap(), catalog("gl2").unwrap())
}

fn central() -> Vec<atiyah_core::Rational> {
    vec![int(0), int(0), int(0), int(1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn curvature_is_tensorial_kernel_valued(
        alpha in form(2, 1, 4, 2),
        x in vector_field(2, 2),
        y in vector_field(2, 2),
        f in poly(2, 2, 3),
    ) {
        let a = gl2(2);
        let conn = Connection::new(alpha).unwrap();
        let r = a.curvature(&conn, &x, &y).unwrap();
        prop_assert!(r.is_kernel());
        let rf = a.curvature(&conn, &x.mul_fn(&f).unwrap(), &y).unwrap();
        prop_assert_eq!(&rf, &r.mul_fn(&f));
        let ry = a.curvature(&conn, &x, &y.mul_fn(&f).unwrap()).unwrap();
        prop_assert_eq!(ry, r.mul_fn(&f));
        let ryx = a.curvature(&conn, &y, &x).unwrap();
        prop_assert!((&r + &ryx).is_zero());
    }

    #[test]
    fn central_connection_gives_d_alpha(coeffs in form(3, 1, 1, 3)) {
        let a = gl2(3);
        let zero = PolyForm::zero(3, 1, 1);
        let alpha = PolyForm::from_components(3, 1, &[zero.clone(), zero.clone(), zero, coeffs.clone()]).unwrap();
        let cm = a.model_form_from_connection(&Connection::new(alpha).unwrap()).unwrap();
        prop_assert_eq!(cm.model.omega(), &coeffs.d().unwrap());
        prop_assert!(cm.closed());
    }

    #[test]
    fn model_from_connection_transfers_bracket(alpha in form(2, 1, 4, 1), s in section(2, 4, 2), t in section(2, 4, 2)) {
        let a = gl2(2);
        let cm = a.model_form_from_connection(&Connection::new(alpha).unwrap()).unwrap();
        prop_assert!(cm.closed());
        let lhs = cm.to_model(&a.bracket(&s, &t).unwrap()).unwrap();
        let rhs = cm.model.bracket(&cm.to_model(&s).unwrap(), &cm.to_model(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(cm.from_model(&cm.to_model(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn jacobi_iff_closed(omega in form(3, 2, 1, 2)) {
        let m = ModelAlgebroid::diagnostic(Chart::new(3).unwrap(), 1, catalog("sl2").unwrap(), omega).unwrap();
        let d = m.jacobi_diagnostic().unwrap();
        prop_assert!(d.matches_d_omega);
        prop_assert_eq!(d.jacobi_holds(), m.is_closed());
    }

    #[test]
    fn divergence_laws(p in poly(2, 3, 3), x in vector_field(2, 3), y in vector_field(2, 3), f in poly(2, 3, 3)) {
        let d = Divergence::new(p).unwrap();
        prop_assert!(d.cocycle_defect(&x, &y).unwrap().is_zero());
        prop_assert!(d.leibniz_defect(&f, &x).unwrap().is_zero());
    }

    #[test]
    fn phi1_automorphism(a in section(2, 4, 2), b in section(2, 4, 2), c in -3i64..=3, with_potential in any::<bool>()) {
        let alg = gl2(2);
        let p = if with_potential { &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1) } else { MultiPoly::zero(2) };
        let div = Divergence::new(p).unwrap();
        let r: Vec<_> = central().into_iter().map(|x| x * int(c)).collect();
        prop_assert!(alg.phi1_defect(&div, &r, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn phi0_equivariance(phi in diffeo(2), x in vector_field(2, 2), c in poly(2, 2, 3), i in 1i64..=4) {
        let iso = CenterIso::new(Matrix::from_rows(vec![vec![int(i)]]), phi).unwrap();
        let defect = iso.equivariance_defect(&x, &[c]).unwrap();
        prop_assert!(defect.iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn residual_zero_iff_bracket_preserved(
        eta in form(2, 1, 1, 2),
        w1 in poly(2, 1, 2),
        w2 in poly(2, 1, 2),
        r in -2i64..=2,
        phi in diffeo(2),
    ) {
        let omega = |f: &MultiPoly| {
            let mut w = PolyForm::zero(2, 2, 1);
            w.add_term(&[0, 1], vec![f.clone()]).unwrap();
            w
        };
        let m1 = ModelAlgebroid::new(Chart::new(2).unwrap(), 1, catalog("sl2").unwrap(), omega(&w1)).unwrap();
        let m2 = ModelAlgebroid::new(Chart::new(2).unwrap(), 1, catalog("sl2").unwrap(), omega(&w2)).unwrap();
        let full = FullMorphism::new(
            CenterIso::new(Matrix::identity(1), phi.clone()).unwrap(),
            SemisimpleIso::constant(phi, &Matrix::identity(3)).unwrap(),
            eta,
            vec![int(r)],
            Divergence::standard(2),
        ).unwrap();
        let res = full.residual(&m1, &m2).unwrap();
        prop_assert!(res.forms_agree);
        prop_assert_eq!(res.is_zero(), res.direct_is_zero());
        prop_assert_eq!(res.is_zero(), full.verify(&m1, &m2, 1).unwrap().passed());
    }

    #[test]
    fn decomposition_recomposes(eta in form(2, 1, 1, 2), r in -3i64..=3, s in section(2, 3, 2), c in poly(2, 2, 3)) {
        let full = FullMorphism::new(
            CenterIso::identity(1, 2),
            SemisimpleIso::identity(2, 3),
            eta,
            vec![int(r)],
            Divergence::new(MultiPoly::var(2, 1)).unwrap(),
        ).unwrap();
        let dec = full.decompose().unwrap();
        prop_assert_eq!(&dec.r, &vec![int(r)]);
        let section = atiyah_core::connection::ModelSection::new(vec![c], s).unwrap();
        prop_assert_eq!(dec.recompose(&section).unwrap(), full.apply(&section).unwrap());
    }
}

#[test]
fn non_central_r_breaks_phi1() {
    let alg = gl2(2);
    let div = Divergence::standard(2);
    let e = vec![int(0), int(1), int(0), int(0)];
    let a = Section::horizontal(PolyVectorField::coordinate_scaled(2, 0, MultiPoly::var(2, 0)), 4);
    let f = Section::constant_kernel(2, &[int(0), int(0), int(1), int(0)]);
    let d = alg.phi1_defect(&div, &e, &a, &f).unwrap();
    assert_eq!(d, Section::constant_kernel(2, &[int(1), int(0), int(0), int(0)]));
}
