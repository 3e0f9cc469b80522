use folia_algebra::{
    bareiss_det, gcd, linear_homogeneous_factors, parse_polynomial, resultant, squarefree_part, ExactMatrix,
    Inversion, PolyRing, PrimeField, QPoly, QuotientRing, Rationals, Ring, UniPoly, Vars, Q,
};

fn p(s: &str) -> QPoly {
    parse_polynomial(s, &Vars::xyz()).unwrap()
}

/// Inflection curve of the Jouanolou foliation of degree `d`.
fn jouanolou_curve(d: u32) -> QPoly {
    p(&format!(
        "x^{a}*z^{b} + y^{a}*x^{b} + z^{a}*y^{b} - 3*x^{d}*y^{d}*z^{d}",
        a = 2 * d + 1,
        b = d - 1
    ))
}

/// Resultant as the determinant of the Sylvester matrix.
fn sylvester(f: &QPoly, g: &QPoly, v: usize) -> QPoly {
    let ring = PolyRing::new(&Rationals, f.vars());
    let fc = f.to_univariate(v);
    let gc = g.to_univariate(v);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n;
    let mut rows = vec![vec![ring.zero(); size]; size];
    for i in 0..n {
        for (k, c) in fc.iter().enumerate() {
            rows[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in gc.iter().enumerate() {
            rows[n + i][i + n - k] = c.clone();
        }
    }
    bareiss_det(&ring, rows)
}

#[test]
fn gcd_examples() {
    assert_eq!(gcd(&p("x"), &p("y")), p("1"));
    assert_eq!(gcd(&p("x^2*y"), &p("x*y^2")), p("x*y"));
}

#[test]
fn resultant_examples() {
    let r = resultant(&p("x - y"), &p("x - z"), 0);
    assert!(r == p("y - z") || r == p("z - y"));
    assert!(resultant(&p("x^2"), &p("x"), 0).is_zero());
}

#[test]
fn resultant_matches_sylvester_determinant() {
    let f = p("x^3 - x*y*z + 2*y^3 - z");
    let g = p("3*x^2 - y*z + 5");
    let r = resultant(&f, &g, 0);
    let s = sylvester(&f, &g, 0);
    assert_eq!(r, s);
    // Jouanolou curve of degree 2 against its x-derivative
    let fj = jouanolou_curve(2);
    let dfj = fj.derivative(0);
    let r = resultant(&fj, &dfj, 0);
    assert!(!r.is_zero());
    let s = sylvester(&fj, &dfj, 0);
    assert!(r == s || r == -s);
}

#[test]
fn squarefree_examples() {
    assert_eq!(squarefree_part(&p("x^2*y")), (p("x*y"), false));
    let (sf, flag) = squarefree_part(&p("x^3*y^3"));
    assert!(!flag);
    assert_eq!(sf.primitive(), p("x*y"));
}

#[test]
fn jouanolou_curve_squarefree_over_q() {
    for d in 2..=8 {
        let f = jouanolou_curve(d);
        let (sf, flag) = squarefree_part(&f);
        assert!(flag, "d = {d}");
        assert_eq!(sf, f);
    }
}

#[test]
fn jouanolou_curve_coprime_to_derivative_mod_2() {
    let f2 = PrimeField::new(2);
    for d in 2..=8 {
        let f = jouanolou_curve(d).reduce_mod(&f2).unwrap();
        let g = gcd(&f, &f.derivative(0));
        assert!(g.is_constant(), "d = {d}: {g}");
    }
}

#[test]
fn linear_factor_examples() {
    let r = linear_homogeneous_factors(&p("x^3*y^3"));
    assert_eq!(r.lines, vec![(p("x"), 3), (p("y"), 3)]);
    let r = linear_homogeneous_factors(&p("y*z^5*(x*z^2 - 5*y^3)"));
    assert_eq!(r.lines, vec![(p("y"), 1), (p("z"), 5)]);
    assert_eq!(r.cofactor.primitive(), p("x*z^2 - 5*y^3"));
    let r = linear_homogeneous_factors(&p("x^2 + y^2"));
    assert!(r.lines.is_empty());
    assert_eq!(r.irrational_lines, p("x^2 + y^2"));
}

#[test]
fn nullspace_examples() {
    let m = ExactMatrix::from_i64(&[&[1, 1], &[2, 2]]);
    let b = m.nullspace();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0][0], -b[0][1].clone());
    assert!(ExactMatrix::identity(3).nullspace().is_empty());
}

#[test]
fn quotient_examples() {
    let q = |n: i64| Q::from_integer(n.into());
    // t^4 - 1, d = 3: the constant d + 1 inverts to 1/4
    let r = QuotientRing::new(UniPoly::new(&Rationals, vec![q(-1), q(0), q(0), q(0), q(1)])).unwrap();
    match r.invert(&UniPoly::constant(&Rationals, q(4))) {
        Inversion::Unit(i) => assert_eq!(i, UniPoly::constant(&Rationals, Q::new(1.into(), 4.into()))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn linear_subresultant_gives_the_common_root() {
    use folia_algebra::gcd::subresultant_linear;
    // common root y = 2x + 1 in y
    let f = p("(y - 2*x - 1)*(y^2 + x)");
    let g = p("(y - 2*x - 1)*(y + 3*x^2 - 5)");
    let (c1, c0) = subresultant_linear(&f, &g, 1).unwrap();
    assert!(!c1.is_zero());
    // c1 * y + c0 is a multiple of y - 2x - 1
    let lin = &(&c1 * &p("y")) + &c0;
    assert!(lin.div_exact(&p("y - 2*x - 1")).is_some());
    // no linear member when the gcd in y is constant and the sequence ends early
    assert!(subresultant_linear(&p("y^2 + 1"), &p("y^2 + 1"), 1).is_none());
}
