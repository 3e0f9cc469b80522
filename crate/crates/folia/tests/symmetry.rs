use folia::corpus;
use folia::form::{parse_curve, parse_form};
use folia::symmetry::{
    field_bracket, is_symmetry, iso_family_f0, iso_family_f1, iso_family_f2, symmetry_space, verify_isotropy_family, Sl3Element,
};
use folia::{Chart, Foliation, ProjectiveMap};
use folia_algebra::ring::{q, qf};
use folia_algebra::{QPoly, Vars, Q};
use proptest::prelude::*;

fn poly(s: &str) -> QPoly {
    parse_curve(s).unwrap()
}

#[test]
fn isotropy_dimensions() {
    for d in 2..5u32 {
        let dims = |f: &Foliation| symmetry_space(f).dimension();
        assert_eq!(dims(&corpus::f1(d)), 2);
        assert_eq!(dims(&corpus::f2(d)), 2);
        for lam in [q(2), qf(-1, 2), q(3), qf(1, d as i64)] {
            assert_eq!(dims(&corpus::f0(d, lam)), 1);
        }
        assert_eq!(dims(&corpus::h1(d)), 1);
        assert_eq!(dims(&corpus::h2(d)), 1);
        assert_eq!(dims(&corpus::h12(d)), 1);
        assert_eq!(dims(&corpus::jouanolou(d)), 0);
        assert_eq!(symmetry_space(&corpus::f1(d)).orbit_dimension(), 6);
    }
}

#[test]
fn homogeneous_isotropy_is_the_homotheties() {
    // (alpha x, alpha y) is generated by diag(1, 1, -2)
    let h = Sl3Element::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, -2]]).unwrap();
    for d in 2..5 {
        for f in [corpus::h1(d), corpus::h2(d), corpus::h12(d)] {
            assert!(symmetry_space(&f).contains(&h));
        }
    }
}

#[test]
fn two_dimensional_algebras_are_affine() {
    for d in 2..5 {
        for f in [corpus::f1(d), corpus::f2(d)] {
            let s = symmetry_space(&f);
            let (x, y) = s.affine_basis().expect("non-abelian");
            assert_eq!(x.bracket(&y), y);
            assert!(s.contains(&x) && s.contains(&y));
        }
    }
}

#[test]
fn kernel_is_closed_under_brackets() {
    for (name, _) in corpus::NAMES {
        if name == "pencil" {
            continue;
        }
        for d in 2..4 {
            let f = corpus::entry(name, d, None).unwrap().foliation;
            let s = symmetry_space(&f);
            assert!(s.dimension() <= 2, "{name} d={d}");
            for a in &s.basis {
                for b in &s.basis {
                    assert!(s.contains(&a.bracket(b)));
                }
            }
        }
    }
}

#[test]
fn kernel_agrees_with_chart_test() {
    // each kernel element is a symmetry in every chart; each other basis
    // direction is not
    for f in [corpus::f1(3), corpus::f0(3, q(2)), corpus::h12(2), corpus::g(2, q(1))] {
        let s = symmetry_space(&f);
        for a in &s.basis {
            for chart in [Chart::X, Chart::Y, Chart::Z] {
                let (p, r) = a.field(chart);
                assert!(is_symmetry(&f, chart, &p, &r).symmetric);
            }
        }
        for e in Sl3Element::basis() {
            if !s.contains(&e) {
                let (p, r) = e.field(Chart::Z);
                assert!(!is_symmetry(&f, Chart::Z, &p, &r).symmetric);
            }
        }
    }
}

#[test]
fn tau_in_chart_z() {
    // a_31 + (a_11 - a_33) x + a_21 y - a_13 x^2 - a_23 x y, and the y part
    let a = Sl3Element::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, -6]]).unwrap();
    let (p, r) = a.field(Chart::Z);
    assert_eq!(p, poly("7 + 7*x + 4*y - 3*x^2 - 6*x*y"));
    assert_eq!(r, poly("8 + 2*x + 11*y - 3*x*y - 6*y^2"));
}

#[test]
fn affine_symmetry_examples() {
    // alpha dx + beta x^d dy with gamma x d/dx + y d/dy
    for d in 2..6i64 {
        let f = parse_form(&format!("2*dx + 3*x^{d}*dy"), &[]).unwrap();
        let gamma = qf(1, 1 - d);
        let p = poly("x").scale(&gamma);
        let t = is_symmetry(&f, Chart::Z, &p, &poly("y"));
        assert!(t.symmetric);
        assert_eq!(t.lambda, Some(gamma));
        assert!(!is_symmetry(&f, Chart::Z, &poly("2*x"), &poly("y")).symmetric);
        // d/dy is always a symmetry here
        assert_eq!(is_symmetry(&f, Chart::Z, &poly("0"), &poly("1")).lambda, Some(q(0)));
    }
    let f = corpus::jouanolou(3);
    let t = is_symmetry(&f, Chart::Z, &poly("0"), &poly("0"));
    assert!(t.symmetric);
    assert_eq!(t.lambda, Some(q(0)));
    assert!(!is_symmetry(&f, Chart::Z, &poly("1"), &poly("y")).symmetric);
}

#[test]
fn isotropy_families() {
    for d in 2..5 {
        assert!(verify_isotropy_family(&corpus::f1(d), &iso_family_f1(d)));
        assert!(verify_isotropy_family(&corpus::f2(d), &iso_family_f2(d)));
        assert!(!verify_isotropy_family(&corpus::f2(d), &iso_family_f1(d)));
        assert!(!verify_isotropy_family(&corpus::f1(d), &iso_family_f2(d)));
        for lam in [q(2), q(-3), qf(1, d as i64)] {
            assert!(verify_isotropy_family(&corpus::f0(d, lam), &iso_family_f0(d)));
        }
    }
    let v = Vars::new(&["t"]);
    let t = QPoly::q_var(&v, 0);
    let z = QPoly::q_zero(&v);
    let one = QPoly::q_int(&v, 1);
    let shear = ProjectiveMap::symbolic(&v, [[one.clone(), t, z.clone()], [z.clone(), one.clone(), z.clone()], [z.clone(), z, one]]);
    assert!(!verify_isotropy_family(&corpus::f1(3), &shear));
}

fn arb_sl3() -> impl Strategy<Value = Sl3Element> {
    prop::array::uniform8(-5i64..6).prop_map(|c| Sl3Element::from_coordinates(&c.map(|v| Q::from_integer(v.into()))))
}

fn arb_form() -> impl Strategy<Value = Foliation> {
    (prop::collection::vec(-3i64..4, 6), prop::collection::vec(-3i64..4, 6)).prop_filter_map("valid", |(a, b)| {
        let mono = ["1", "x", "y", "x^2", "x*y", "y^2"];
        let s = |c: &[i64]| c.iter().zip(mono).map(|(k, m)| format!("({k})*{m}")).collect::<Vec<_>>().join(" + ");
        let f = parse_form(&format!("({})*dx + ({})*dy", s(&a), s(&b)), &[]).ok()?;
        (f.degree() == 2).then_some(f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_respects_brackets(a in arb_sl3(), b in arb_sl3()) {
        for chart in [Chart::Z, Chart::X] {
            let lhs = field_bracket(chart, &a.field(chart), &b.field(chart));
            prop_assert_eq!(lhs, a.bracket(&b).field(chart));
        }
    }

    #[test]
    fn generic_forms_have_no_affine_model_symmetry(f in arb_form()) {
        // model (c): d/dx + y d/dy, which is tau of this matrix over 3
        let s = symmetry_space(&f);
        prop_assert!(s.dimension() <= 2);
        let t = is_symmetry(&f, Chart::Z, &poly("1"), &poly("y"));
        let model = Sl3Element::from_i64([[-1, 0, 0], [0, 2, 0], [3, 0, -1]]).unwrap();
        prop_assert_eq!(t.symmetric, s.contains(&model));
    }
}
