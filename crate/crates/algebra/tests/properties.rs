use folia_algebra::{
    gcd, resultant, rational_roots, ExactMatrix, Inversion, Monomial, QPoly, QuotientRing, Rationals,
    UniPoly, Vars, Q,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_poly(vars: Vars, max_deg: u32, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -5i64..=5), 0..=max_terms).prop_map(
        move |terms| {
            let mut p = QPoly::q_zero(&vars);
            for (e, c) in terms {
                if e.iter().sum::<u32>() <= max_deg {
                    p.add_term(Monomial::new(e), Q::from_integer(c.into()));
                }
            }
            p
        },
    )
}

fn xyz_poly() -> impl Strategy<Value = QPoly> {
    small_poly(Vars::xyz(), 3, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in xyz_poly(), g in xyz_poly(), h in xyz_poly()) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f - &f), &f.same_zero());
    }

    #[test]
    fn leibniz(f in xyz_poly(), g in xyz_poly(), v in 0usize..3) {
        let lhs = (&f * &g).derivative(v);
        let rhs = &(&f * &g.derivative(v)) + &(&g * &f.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_and_cofactors_coprime(a in xyz_poly(), b in xyz_poly(), c in xyz_poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let f = &a * &c;
        let g = &b * &c;
        let h = gcd(&f, &g);
        let fq = f.div_exact(&h);
        let gq = g.div_exact(&h);
        prop_assert!(fq.is_some() && gq.is_some());
        prop_assert!(gcd(&fq.unwrap(), &gq.unwrap()).is_constant());
        prop_assert!(h.div_exact(&gcd(&c, &c)).is_some());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in small_poly(Vars::xyz(), 2, 4), b in small_poly(Vars::xyz(), 2, 4), share in any::<bool>()) {
        let x = QPoly::q_var(&Vars::xyz(), 0);
        let y = QPoly::q_var(&Vars::xyz(), 1);
        // both must involve x; filtering instead rejects too often
        let a = if a.involves(0) { a } else { &a + &x };
        let b = if b.involves(0) { b } else { &b + &x.pow(2) };
        let (f, g) = if share {
            let l = &x - &y;
            (&a * &l, &b * &l)
        } else {
            (a.clone(), b.clone())
        };
        let r = resultant(&f, &g, 0);
        let common = gcd(&f, &g).involves(0);
        prop_assert_eq!(r.is_zero(), common);
    }

    #[test]
    fn nullspace_is_kernel(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..6)) {
        let m = ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect()).collect());
        let basis = m.nullspace();
        prop_assert_eq!(basis.len() + m.rank(), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
        }
        prop_assert_eq!(m.nullspace_fast().len(), basis.len());
    }

    #[test]
    fn nullspace_stable_under_row_permutation(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 2..5)) {
        let qrows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect()).collect();
        let mut rev = qrows.clone();
        rev.reverse();
        let a = ExactMatrix::from_rows(qrows).nullspace();
        let b = ExactMatrix::from_rows(rev).nullspace();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn quotient_inverse(m in prop::collection::vec(-4i64..=4, 1..5), e in prop::collection::vec(-4i64..=4, 1..5)) {
        let mut mc: Vec<Q> = m.iter().map(|&v| Q::from_integer(v.into())).collect();
        mc.push(Q::one());
        let Ok(ring) = QuotientRing::new(UniPoly::new(&Rationals, mc)) else { return Ok(()); };
        let el = UniPoly::new(&Rationals, e.iter().map(|&v| Q::from_integer(v.into())).collect());
        match ring.invert(&el) {
            Inversion::Unit(inv) => prop_assert!(ring.reduce(&inv.mul(&el)) == UniPoly::one(&Rationals)),
            Inversion::NonUnit { factor } => {
                prop_assert!(factor.deg() > 0);
                prop_assert!(ring.modulus().rem(&factor).is_zero());
                prop_assert!(ring.reduce(&el).rem(&factor).is_zero());
            }
        }
    }

    #[test]
    fn rational_roots_are_roots(rs in prop::collection::vec((-20i64..=20, 1i64..=6), 0..5), extra in 1i64..5) {
        let mut f = UniPoly::new(&Rationals, vec![Q::from_integer(extra.into()), Q::zero(), Q::one()]);
        for &(n, d) in &rs {
            f = f.mul(&UniPoly::new(&Rationals, vec![Q::new((-n).into(), d.into()), Q::one()]));
        }
        let got = rational_roots(&f);
        let total: u32 = got.iter().map(|r| r.1).sum();
        prop_assert_eq!(total as usize, rs.len());
        for (r, _) in got {
            prop_assert!(f.eval(&r).is_zero());
        }
    }
}
