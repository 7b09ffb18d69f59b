mod common;

use atiyah_core::algebroid::{Chart, FiberLinearFunction, IdealKind, PointIdealQuery, Section, TrivialAlgebroid};
use atiyah_core::exactcalc::MultiPoly;
use atiyah_core::liealg::{catalog, simple_and_maximal_ideals};
use atiyah_core::{int, Rational};
use common::*;
use proptest::prelude::*;

fn alg(key: &str, n: usize) -> TrivialAlgebroid {
    TrivialAlgebroid::new(Chart::new(n).unwrap(), catalog(key).unwrap())
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-2i64..=2, n).prop_map(|v| v.into_iter().map(int).collect())
}

fn jacobiator(a: &TrivialAlgebroid, x: &Section, y: &Section, z: &Section) -> Section {
    let t1 = a.bracket(x, &a.bracket(y, z).unwrap()).unwrap();
    let t2 = a.bracket(y, &a.bracket(z, x).unwrap()).unwrap();
    let t3 = a.bracket(z, &a.bracket(x, y).unwrap()).unwrap();
    &(&t1 + &t2) + &t3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn jacobi_sl2(x in section(2, 3, 2), y in section(2, 3, 2), z in section(2, 3, 2)) {
        prop_assert!(jacobiator(&alg("sl2", 2), &x, &y, &z).is_zero());
    }

    #[test]
    fn jacobi_gl2(x in section(2, 4, 2), y in section(2, 4, 2), z in section(2, 4, 2)) {
        prop_assert!(jacobiator(&alg("gl2", 2), &x, &y, &z).is_zero());
    }

    #[test]
    fn leibniz_and_anchor(x in section(3, 3, 2), y in section(3, 3, 2), f in poly(3, 2, 3)) {
        let a = alg("sl2", 3);
        let xy = a.bracket(&x, &y).unwrap();
        let lhs = a.bracket(&x, &y.mul_fn(&f)).unwrap();
        let rhs = &xy.mul_fn(&f) + &y.mul_fn(&x.v().apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.anchor(&xy).unwrap(), x.v().bracket(y.v()).unwrap());
        let yx = a.bracket(&y, &x).unwrap();
        prop_assert!((&xy + &yx).is_zero());
    }

    #[test]
    fn kernel_is_an_ideal(x in section(2, 4, 2), k in kernel_section(2, 4, 2)) {
        let a = alg("gl2", 2);
        prop_assert!(a.bracket(&x, &k).unwrap().is_kernel());
    }

    #[test]
    fn a_m_brackets_kernel_into_k_m(x in section(2, 3, 2), k in kernel_section(2, 3, 2), m in point(2)) {
        // force x into A(m) by subtracting its value at m
        let a = alg("sl2", 2);
        let (v, g) = a.eval_section(&x, &m).unwrap();
        let constant = Section::new(
            atiyah_core::exactcalc::PolyVectorField::new(v.iter().map(|c| MultiPoly::constant(2, c.clone())).collect()).unwrap(),
            g.iter().map(|c| MultiPoly::constant(2, c.clone())).collect(),
        ).unwrap();
        let xm = &x - &constant;
        let qa = PointIdealQuery::new(IdealKind::Am, m.clone(), None).unwrap();
        prop_assert!(a.ideal_membership(&xm, &qa).unwrap());
        let b = a.bracket(&xm, &k).unwrap();
        let qk = PointIdealQuery::new(IdealKind::Km, m, None).unwrap();
        prop_assert!(a.ideal_membership(&b, &qk).unwrap());
    }

    #[test]
    fn maximal_ideal_conjunction_is_k_m(k in kernel_section(2, 6, 1), m in point(2)) {
        let a = alg("sl2+sl2", 2);
        // bias toward vanishing at m so both outcomes occur
        let (_, g) = a.eval_section(&k, &m).unwrap();
        let shift: Vec<Rational> = g.iter().enumerate().map(|(i, c)| if i < 3 { c.clone() } else { int(0) }).collect();
        let k = &k - &Section::constant_kernel(2, &shift);
        let ideals = simple_and_maximal_ideals(a.fiber()).unwrap();
        let all = ideals.maximals.iter().all(|g0| {
            let q = PointIdealQuery::new(IdealKind::KmG0, m.clone(), Some(g0.clone())).unwrap();
            a.ideal_membership(&k, &q).unwrap()
        });
        let q = PointIdealQuery::new(IdealKind::Km, m, None).unwrap();
        prop_assert_eq!(all, a.ideal_membership(&k, &q).unwrap());
    }

    #[test]
    fn normalizer_matches_jet_test(x in section(2, 6, 2), m in point(2), which in 0usize..2, kill in any::<bool>()) {
        let a = alg("sl2+sl2", 2);
        let x = if kill {
            let (v, _) = a.eval_section(&x, &m).unwrap();
            let shift = atiyah_core::exactcalc::PolyVectorField::new(v.iter().map(|c| MultiPoly::constant(2, c.clone())).collect()).unwrap();
            &x - &Section::horizontal(shift, 6)
        } else {
            x
        };
        let g0 = simple_and_maximal_ideals(a.fiber()).unwrap().maximals[which].clone();
        prop_assert_eq!(
            a.normalizer_test(&x, &m, &g0).unwrap(),
            a.normalizer_jet_test(&x, &m, &g0).unwrap()
        );
    }

    #[test]
    fn poisson_matches_bracket(x in section(2, 4, 2), y in section(2, 4, 2)) {
        let a = alg("gl2", 2);
        let lhs = a.poisson_bracket(&FiberLinearFunction::of_section(&x), &FiberLinearFunction::of_section(&y)).unwrap();
        prop_assert_eq!(lhs, FiberLinearFunction::of_section(&a.bracket(&x, &y).unwrap()));
    }

    #[test]
    fn z_m_witness_sums_back(f in poly(2, 3, 4), m in point(2)) {
        let a = alg("gl2", 2);
        let f = &f - &MultiPoly::constant(2, f.eval(&m).unwrap());
        let c = Section::constant_kernel(2, &[int(0), int(0), int(0), int(1)]).mul_fn(&f);
        let pairs = a.z_m_witness(&c, &m).unwrap();
        let mut total = a.zero_section();
        for (p, z) in &pairs {
            let (v, _) = a.eval_section(p, &m).unwrap();
            prop_assert!(v.iter().all(|c| *c == int(0)));
            total = &total + &a.bracket(p, z).unwrap();
        }
        prop_assert_eq!(total, c);
    }
}

#[test]
fn poisson_jacobi_on_generators() {
    for key in ["sl2", "gl2", "so3"] {
        let a = alg(key, 2);
        let gens = FiberLinearFunction::generators(2, a.fiber_dim());
        for f in &gens {
            for g in &gens {
                for h in &gens {
                    let t1 = a.poisson_bracket(f, &a.poisson_bracket(g, h).unwrap()).unwrap();
                    let t2 = a.poisson_bracket(g, &a.poisson_bracket(h, f).unwrap()).unwrap();
                    let t3 = a.poisson_bracket(h, &a.poisson_bracket(f, g).unwrap()).unwrap();
                    assert!(t1.add(&t2).add(&t3).is_zero(), "{key}: ({f}, {g}, {h})");
                }
            }
        }
    }
}
