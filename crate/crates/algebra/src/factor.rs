//! Rational linear factors of ternary forms.

use num_traits::{One, Zero};

use crate::gcd::{gcd, squarefree_part};
use crate::poly::{Monomial, QPoly, Vars};
use crate::ring::{Rationals, Q};
use crate::roots::rational_roots;
use crate::upoly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactors {
    /// Rational lines (primitive) with multiplicities.
    pub lines: Vec<(QPoly, u32)>,
    /// What is left after removing the lines.
    pub cofactor: QPoly,
    /// Reduced product of the line components of the cofactor over the
    /// algebraic closure (1 when there are none). These lines are irrational.
    pub irrational_lines: QPoly,
}

/// Line factors `a*u + b*v` of a binary form (in `u` and one other variable `v`) of a
/// ternary polynomial, returned as coefficient pairs `(a, b)`.
fn binary_roots(g: &QPoly, u: usize) -> Vec<(Q, Q)> {
    // g(t, 1) as a univariate polynomial in t
    let deg = g.total_degree().unwrap_or(0);
    let mut coeffs = vec![Q::zero(); deg as usize + 1];
    for (m, c) in g.terms() {
        coeffs[m.exps()[u] as usize] += c;
    }
    let h = UniPoly::new(&Rationals, coeffs);
    let mut out = Vec::new();
    if h.deg() < deg as usize {
        // v divides g
        out.push((Q::zero(), Q::one()));
    }
    if h.deg() > 0 {
        for (r, _) in rational_roots(&h) {
            // root u = r*v, so the factor is u - r*v
            out.push((Q::one(), -r));
        }
    }
    out
}

fn line(vars: &Vars, a: &Q, b: &Q, c: &Q) -> QPoly {
    let mut p = QPoly::q_zero(vars);
    for (i, k) in [a, b, c].into_iter().enumerate() {
        let mut e = vec![0; 3];
        e[i] = 1;
        p.add_term(Monomial::new(e), k.clone());
    }
    p.primitive()
}

fn multiplicity(f: &QPoly, l: &QPoly) -> (u32, QPoly) {
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(l) {
        k += 1;
        cur = q;
    }
    (k, cur)
}

/// Hessian determinant of a ternary form.
pub fn hessian(f: &QPoly) -> QPoly {
    let h: Vec<Vec<QPoly>> = (0..3)
        .map(|i| (0..3).map(|j| f.derivative(i).derivative(j)).collect())
        .collect();
    let m = |i: usize, j: usize, k: usize, l: usize| &(&h[i][k] * &h[j][l]) - &(&h[i][l] * &h[j][k]);
    &(&(&h[0][0] * &m(1, 2, 1, 2)) - &(&h[0][1] * &m(1, 2, 0, 2))) + &(&h[0][2] * &m(1, 2, 0, 1))
}

/// Splits a form in `x, y, z` into rational lines and a cofactor.
///
/// Candidate lines come from the rational roots of the three coordinate
/// restrictions; each candidate is confirmed by exact division.
pub fn linear_homogeneous_factors(f: &QPoly) -> LinearFactors {
    assert_eq!(f.nvars(), 3, "expects a ternary form");
    assert!(!f.is_zero(), "zero has no factorization");
    let vars = f.vars().clone();
    let mut rest = f.clone();
    let mut lines: Vec<(QPoly, u32)> = Vec::new();
    for v in 0..3 {
        let k = rest.terms().map(|(m, _)| m.exps()[v]).min().unwrap_or(0);
        if k > 0 {
            let mut e = vec![0; 3];
            e[v] = k;
            let mono = QPoly::monomial(&Rationals, &vars, Monomial::new(e), Q::one());
            rest = rest.div_exact(&mono).expect("monomial divides");
            lines.push((QPoly::q_var(&vars, v), k));
        }
    }
    let mut candidates: Vec<QPoly> = Vec::new();
    if !rest.is_constant() {
        let zero = Q::zero();
        let gz = rest.eval_var(2, &zero);
        let gy = rest.eval_var(1, &zero);
        let gx = rest.eval_var(0, &zero);
        let rz = binary_roots(&gz, 0);
        let ry = binary_roots(&gy, 0);
        let rx = binary_roots(&gx, 1);
        for (a, b) in &rz {
            candidates.push(line(&vars, a, b, &zero));
        }
        for (a, c) in &ry {
            candidates.push(line(&vars, a, &zero, c));
        }
        for (b, c) in &rx {
            candidates.push(line(&vars, &zero, b, c));
        }
        for (a, b) in &rz {
            for (a2, c) in &ry {
                if a.is_zero() || b.is_zero() || a2.is_zero() || c.is_zero() {
                    continue;
                }
                candidates.push(line(&vars, &Q::one(), &(b / a), &(c / a2)));
            }
        }
    }
    let mut seen: Vec<QPoly> = Vec::new();
    for cand in candidates {
        if cand.total_degree() != Some(1) || seen.contains(&cand) {
            continue;
        }
        seen.push(cand.clone());
        let (k, q) = multiplicity(&rest, &cand);
        if k > 0 {
            rest = q;
            lines.push((cand, k));
        }
    }
    lines.sort_by(|a, b| b.0.leading().map(|t| t.0.clone()).cmp(&a.0.leading().map(|t| t.0.clone())).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
    let irrational_lines = irrational_line_part(&rest);
    LinearFactors { lines, cofactor: rest, irrational_lines }
}

/// Product of the components of `k` that are lines, for a form with no
/// rational line factors. On a reduced curve the Hessian vanishes exactly
/// along line components.
pub fn irrational_line_part(k: &QPoly) -> QPoly {
    if k.is_constant() {
        return k.same_one();
    }
    let (sf, _) = squarefree_part(k);
    let h = hessian(&sf);
    if h.is_zero() {
        return sf.primitive();
    }
    let g = gcd(&sf, &h);
    if g.is_constant() {
        g.same_one()
    } else {
        g.primitive()
    }
}

/// True when the polynomial has no repeated factor and no factor of the form
/// `x^a y^b z^c`. Convenience for tests.
pub fn is_reduced(f: &QPoly) -> bool {
    squarefree_part(f).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    fn xyz() -> (QPoly, QPoly, QPoly) {
        let v = Vars::xyz();
        (QPoly::q_var(&v, 0), QPoly::q_var(&v, 1), QPoly::q_var(&v, 2))
    }

    #[test]
    fn monomial_lines() {
        let (x, y, _) = xyz();
        let r = linear_homogeneous_factors(&(&x.pow(3) * &y.pow(3)));
        assert_eq!(r.lines, vec![(x.clone(), 3), (y.clone(), 3)]);
        assert!(r.cofactor.is_constant());
    }

    #[test]
    fn lines_and_cubic_cofactor() {
        let (x, y, z) = xyz();
        let cubic = &(&x * &z.pow(2)) - &y.pow(3).scale(&q(5));
        let f = &(&y * &z.pow(5)) * &cubic;
        let r = linear_homogeneous_factors(&f);
        assert_eq!(r.lines, vec![(y.clone(), 1), (z.clone(), 5)]);
        assert_eq!(r.cofactor.primitive(), cubic.primitive());
        assert!(r.irrational_lines.is_constant());
    }

    #[test]
    fn general_lines() {
        let (x, y, z) = xyz();
        let l1 = &(&x + &y.scale(&q(2))) - &z.scale(&q(3));
        let l2 = &x - &y;
        let f = &(&l1.pow(2) * &l2) * &(&x.pow(2) + &(&y * &z));
        let r = linear_homogeneous_factors(&f);
        assert_eq!(r.lines.len(), 2);
        assert!(r.lines.contains(&(l1.primitive(), 2)));
        assert!(r.lines.contains(&(l2.primitive(), 1)));
    }

    #[test]
    fn irrational_lines_flagged() {
        let (x, y, _) = xyz();
        let f = &x.pow(2) + &y.pow(2);
        let r = linear_homogeneous_factors(&f);
        assert!(r.lines.is_empty());
        assert_eq!(r.irrational_lines, f);
    }
}
