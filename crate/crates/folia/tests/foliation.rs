use folia::corpus;
use folia::foliation::{first_integral_check, rational_form_closed, wedge_lie, AffineForm};
use folia::form::{form_text, parse_curve, parse_form};
use folia::{Chart, Error, Foliation, ProjectiveMap};
use folia_algebra::ring::{q, qf};
use folia_algebra::{parse_polynomial, QPoly, Vars};
use proptest::prelude::*;

fn poly(s: &str) -> QPoly {
    parse_curve(s).unwrap()
}

fn euler_holds(f: &Foliation) -> bool {
    let e = &(&(&poly("x") * f.a()) + &(&poly("y") * f.b())) + &(&poly("z") * f.c());
    e.is_zero()
}

#[test]
fn affine_constructor_degrees() {
    let f = corpus::f1(2);
    assert_eq!(f.degree(), 2);
    assert!(euler_holds(&f));
    for c in f.components() {
        assert_eq!(c.total_degree(), Some(3));
    }
    let dx = parse_form("dx", &[]).unwrap();
    assert_eq!(dx.degree(), 0);
}

#[test]
fn homogeneous_form_of_f0() {
    for d in 2..6u32 {
        for lam in [q(2), qf(-1, 3), q(5)] {
            let f = corpus::f0(d, lam.clone());
            let e = d - 1;
            let l = folia::form::rat(&lam);
            let a = poly(&format!("-({l})*y*z^{d}"));
            let b = poly(&format!("z*(x*z^{e} + y^{d})"));
            let c = poly(&format!("y*(({l} - 1)*x*z^{e} - y^{d})"));
            let g = Foliation::new(a, b, c).unwrap();
            assert_eq!(f, g);
        }
    }
}

#[test]
fn abc_components_examples() {
    for d in 2..6u32 {
        let (a, b, c) = corpus::f2(d).abc().unwrap();
        assert!(a.is_zero());
        assert_eq!(b, poly(&format!("x^{d}")));
        assert_eq!(c, poly(&format!("y^{d}")));

        let lam = qf(3, 2);
        let (a, b, c) = corpus::f0(d, lam.clone()).abc().unwrap();
        // the normalization scales by 2 to clear the denominator of lambda
        let s = q(2);
        assert_eq!(a, poly(&format!("y^{d} + x*z^{}", d - 1)).scale(&s));
        assert_eq!(b, poly(&format!("y*z^{}", d - 1)).scale(&(lam * &s)));
        assert!(c.is_zero());
    }
    let (a, b, c) = corpus::entry("pencil", 0, None).unwrap().foliation.abc().unwrap();
    assert!(a.is_zero() && b.is_zero());
    assert!(c.is_constant() && !c.is_zero());
}

#[test]
fn abc_round_trip() {
    for name in ["f1", "f2", "h12", "jouanolou", "g"] {
        for d in 2..5 {
            let f = corpus::entry(name, d, None).unwrap().foliation;
            let (a, b, c) = f.abc().unwrap();
            assert!(!c.involves(2));
            assert_eq!(Foliation::from_abc(&a, &b, &c).unwrap(), f);
        }
    }
}

#[test]
fn pullback_examples() {
    let f = corpus::jouanolou(3);
    assert_eq!(f.pullback(&ProjectiveMap::identity()).unwrap(), f);
    let swap = ProjectiveMap::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    for d in 2..6 {
        let h = corpus::h1(d);
        assert_eq!(h.pullback(&swap).unwrap(), h);
    }
    // alpha x^d dx + beta dy under (x, y) -> (y/x, -alpha/(beta x))
    for d in 2..6u32 {
        let (al, be) = (q(2), q(3));
        let w = parse_form(&format!("2*x^{d}*dx + 3*dy"), &[]).unwrap();
        let m = ProjectiveMap::numeric([
            [q(0), q(1), q(0)],
            [q(0), q(0), -(al / be)],
            [q(1), q(0), q(0)],
        ]);
        assert_eq!(w.pullback(&m).unwrap(), corpus::f2(d));
    }
    let sing = ProjectiveMap::from_i64([[1, 0, 0], [1, 0, 0], [0, 0, 1]]);
    assert_eq!(f.pullback(&sing), Err(Error::SingularMap));
}

#[test]
fn rejects_bad_forms() {
    assert!(matches!(parse_form("x*dx + x*dy", &[]), Err(Error::NotPrimitive { factor }) if factor == "x"));
    let v = Vars::xyz();
    let x = QPoly::q_var(&v, 0);
    assert_eq!(Foliation::new(x.clone(), x.clone(), x.clone()), Err(Error::Euler));
}

#[test]
fn wedge_lie_examples() {
    // radial field against a homogeneous affine form of degree m
    let form = AffineForm::new(Chart::Z, poly("x^2*y - 3*y^3"), poly("x^3 + 2*x*y^2"));
    let (l1, l2, w) = wedge_lie(&form, &poly("x"), &poly("y"));
    assert_eq!(l1, form.a.scale(&q(4)));
    assert_eq!(l2, form.b.scale(&q(4)));
    assert!(w.is_zero());

    for d in 2..7u32 {
        let form = AffineForm::new(Chart::Z, poly("1"), poly(&format!("x^{d}")));
        let gamma = qf(1, 1 - d as i64);
        let p = poly("x").scale(&gamma);
        assert!(wedge_lie(&form, &p, &poly("y")).2.is_zero());
        // any other weight fails
        let (_, _, w) = wedge_lie(&form, &poly("x"), &poly("y"));
        assert!(!w.is_zero());
    }

    // X = d/dy on x dy - y dx + y^d dy, expanded by hand:
    // L1 = -1, L2 = d y^(d-1), wedge = -(x + y^d) + d y^d = -x + (d-1) y^d
    for d in 2..6u32 {
        let form = AffineForm::new(Chart::Z, poly("-y"), poly(&format!("x + y^{d}")));
        let (_, _, w) = wedge_lie(&form, &poly("0"), &poly("1"));
        assert_eq!(w, poly(&format!("-x + {}*y^{d}", d - 1)));
    }
}

#[test]
fn invariant_curves() {
    for d in 2..6u32 {
        let f2 = corpus::f2(d);
        assert!(f2.is_invariant_curve(&poly("x")));
        assert!(!f2.is_invariant_curve(&poly("y")));
        let lam = q(3);
        let f0 = corpus::f0(d, lam);
        let curve = poly(&format!("(1 - 3*{d})*x*z^{} + y^{d}", d - 1));
        assert!(f0.is_invariant_curve(&curve));
    }
}

#[test]
fn closed_forms_and_first_integrals() {
    let v = Vars::xyz();
    let p = |s: &str| parse_polynomial(s, &v).unwrap();
    // omega_1 / (x^2 y^3) for d = 3
    assert!(rational_form_closed(&p("y^3 - x^3*y"), &p("x^2*y^3"), &p("x^4"), &p("x^2*y^3")));
    // omega_2 / x^(d+2) for d = 3
    assert!(rational_form_closed(&p("x^3 - y^4"), &p("x^5"), &p("x*y^3"), &p("x^5")));
    assert!(rational_form_closed(&p("1"), &p("1"), &p("1"), &p("1")));
    assert!(!rational_form_closed(&p("y^3 - x^3*y"), &p("1"), &p("x^4"), &p("1")));

    // H = (x/y)^(d-1)/(d-1) + 1/x = (x^d + (d-1) y^(d-1)) / ((d-1) x y^(d-1))
    for d in 2..7u32 {
        let f = corpus::f1(d);
        let e = d - 1;
        let n = p(&format!("x^{d} + {e}*y^{e}"));
        let den = p(&format!("{e}*x*y^{e}"));
        assert!(first_integral_check(&n, &den, &f.affine(Chart::Z)));
        assert!(!first_integral_check(&p("x"), &p("y"), &f.affine(Chart::Z)));
    }
}

#[test]
fn text_round_trip_on_corpus() {
    for (name, _) in corpus::NAMES {
        for d in 2..7 {
            let e = corpus::entry(name, d, None).unwrap();
            for chart in [None, Some(Chart::Z), Some(Chart::X), Some(Chart::Y)] {
                let t = form_text(&e.foliation, chart);
                let back = parse_form(&t, &[]).unwrap();
                assert_eq!(back, e.foliation, "{name} d={d} {t}");
                assert_eq!(form_text(&back, chart), t);
            }
        }
    }
}

#[test]
fn parameters_and_errors() {
    let lam = ("lambda".to_string(), qf(-2, 7));
    let f = parse_form("x*dy - lambda*y*dx + y^3*dy", &[lam.clone()]).unwrap();
    assert_eq!(f, corpus::f0(3, qf(-2, 7)));
    let d = ("d".to_string(), q(4));
    let g = parse_form("x*dy - 2*y*dx + y^d*dy @ z=1", &[d]).unwrap();
    assert_eq!(g, corpus::f0(4, q(2)));
    let err = parse_form("x*dy - y*dx + y^2*dw", &[]).unwrap_err();
    assert!(matches!(err, Error::Parse(m) if m.contains("offset 18")));
    assert!(parse_form("x*dx*dy", &[]).is_err());
    assert!(parse_form("x*dy @ w=1", &[]).is_err());
}

fn arb_map() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-4i64..5)).prop_filter("invertible", |m| {
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        det != 0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pullback_is_functorial(m1 in arb_map(), m2 in arb_map(), which in 0usize..4) {
        let f = [corpus::jouanolou(2), corpus::f1(3), corpus::h12(2), corpus::f0(2, qf(3, 2))][which].clone();
        let (p1, p2) = (ProjectiveMap::from_i64(m1), ProjectiveMap::from_i64(m2));
        let lhs = f.pullback(&p1.then(&p2)).unwrap();
        let rhs = f.pullback(&p1).unwrap().pullback(&p2).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(euler_holds(&lhs));
        prop_assert_eq!(lhs.degree(), f.degree());
        for c in lhs.components() {
            prop_assert!(c.is_zero() || c.total_degree() == Some(f.degree() + 1));
        }
        // the inverse map undoes the pullback
        prop_assert_eq!(lhs.pullback(&p1.then(&p2).inverse().unwrap()).unwrap(), f);
    }

    #[test]
    fn chart_views_round_trip(m in arb_map()) {
        let f = corpus::jouanolou(2).pullback(&ProjectiveMap::from_i64(m)).unwrap();
        for chart in [Chart::Z, Chart::X, Chart::Y] {
            let a = f.affine(chart);
            prop_assert_eq!(Foliation::from_affine(chart, &a.a, &a.b).unwrap(), f.clone());
        }
        let (a, b, c) = f.abc().unwrap();
        prop_assert_eq!(Foliation::from_abc(&a, &b, &c).unwrap(), f.clone());
    }
}
