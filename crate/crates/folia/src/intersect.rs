//! Local intersection numbers of plane curves at the origin, by Fulton's
//! algorithm: vanish at the origin, split off `y` when one curve contains
//! the axis, otherwise lower the degree of the restriction to `y = 0`.

use folia_algebra::{Monomial, QPoly, Q};
use num_traits::Zero;

fn ord_x(p: &QPoly) -> u32 {
    p.terms().map(|(m, _)| m.exps()[0]).min().unwrap_or(0)
}

/// `I_0(f, g)` for polynomials in variables 0 and 1; `None` when they share
/// a component through the origin.
pub fn intersection_at_origin(f: &QPoly, g: &QPoly) -> Option<u32> {
    let (mut f, mut g) = (f.clone(), g.clone());
    let zero = Q::zero();
    let y = f.same_var(1);
    let mut acc = 0u32;
    loop {
        if f.is_zero() || g.is_zero() {
            return None;
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Some(acc);
        }
        let f0 = f.eval_var(1, &zero);
        let g0 = g.eval_var(1, &zero);
        match (f0.is_zero(), g0.is_zero()) {
            (true, true) => return None,
            (true, false) => std::mem::swap(&mut f, &mut g),
            _ => {}
        }
        let f0 = f.eval_var(1, &zero);
        let g0 = g.eval_var(1, &zero);
        if g0.is_zero() {
            // g = y h and I(f, y) = ord_x f(x, 0)
            acc += ord_x(&f0);
            g = g.div_exact(&y).expect("y divides");
            continue;
        }
        let (r, s) = (f0.degree_in(0).unwrap(), g0.degree_in(0).unwrap());
        if r > s {
            std::mem::swap(&mut f, &mut g);
        }
        let (f0, g0) = (f.eval_var(1, &zero), g.eval_var(1, &zero));
        let (r, s) = (f0.degree_in(0).unwrap(), g0.degree_in(0).unwrap());
        let lf = f0.leading_coeff();
        let lg = g0.leading_coeff();
        let mut e = vec![0u32; f.nvars()];
        e[0] = s - r;
        let shifted = f.mul_monomial(&Monomial::new(e), &lg);
        g = &g.scale(&lf) - &shifted;
    }
}

/// `I_p(f, g)` at the rational point `(p0, p1)`.
pub fn intersection_at(f: &QPoly, g: &QPoly, p0: &Q, p1: &Q) -> Option<u32> {
    let tf = translate(f, p0, p1);
    let tg = translate(g, p0, p1);
    intersection_at_origin(&tf, &tg)
}

/// `p(x + p0, y + p1)`.
pub fn translate(p: &QPoly, p0: &Q, p1: &Q) -> QPoly {
    let x = &p.same_var(0) + &p.same_constant(p0.clone());
    let y = &p.same_var(1) + &p.same_constant(p1.clone());
    let mut imgs: Vec<QPoly> = (0..p.nvars()).map(|i| p.same_var(i)).collect();
    imgs[0] = x;
    imgs[1] = y;
    p.compose(&imgs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use folia_algebra::{parse_polynomial, Vars};

    fn p(s: &str) -> QPoly {
        parse_polynomial(s, &Vars::new(&["x", "y"])).unwrap()
    }

    #[test]
    fn textbook_values() {
        assert_eq!(intersection_at_origin(&p("y"), &p("y - x^2")), Some(2));
        assert_eq!(intersection_at_origin(&p("y^2 - x^3"), &p("x")), Some(2));
        assert_eq!(intersection_at_origin(&p("y^2 - x^3"), &p("y")), Some(3));
        // two cusps with different tangents
        assert_eq!(intersection_at_origin(&p("y^2 - x^3"), &p("x^2 - y^3")), Some(4));
        assert_eq!(intersection_at_origin(&p("x + 1"), &p("y")), Some(0));
        assert_eq!(intersection_at_origin(&p("x*y"), &p("y*(x + y)")), None);
        // Fulton's exercise: (y^2 - x^3) and (y^2 - x^3 - x^4): 3 + ... = 8
        assert_eq!(intersection_at_origin(&p("y^2 - x^3"), &p("y^2 - x^3 - x^4")), Some(8));
    }
}
