//! Greatest common divisors, resultants and squarefree parts.
//!
//! Multivariate gcds use the classical recursion: pick a main variable,
//! split off contents recursively, and run a subresultant remainder sequence
//! on the primitive parts. Over `Q` a modular shortcut certifies the common
//! coprime case before any of that runs.

use crate::poly::{Monomial, Polynomial, Vars};
use crate::ring::{Field, PrimeField, Rationals, Ring, WORD_PRIMES};
use crate::upoly::UniPoly;

/// `F[vars]` viewed as a coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    pub base: F,
    pub vars: Vars,
}

impl<F: Field> PolyRing<F> {
    pub fn new(base: &F, vars: &Vars) -> Self {
        PolyRing { base: base.clone(), vars: vars.clone() }
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Polynomial<F>;
    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(&self.base, &self.vars)
    }
    fn one(&self) -> Polynomial<F> {
        Polynomial::one(&self.base, &self.vars)
    }
    fn from_bigint(&self, n: &num_bigint::BigInt) -> Polynomial<F> {
        Polynomial::constant(&self.base, &self.vars, self.base.from_bigint(n))
    }
    fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a + b
    }
    fn sub(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a - b
    }
    fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a * b
    }
    fn neg(&self, a: &Polynomial<F>) -> Polynomial<F> {
        -a
    }
    fn is_zero(&self, a: &Polynomial<F>) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Polynomial<F>) -> Option<Polynomial<F>> {
        if a.is_zero() || !a.is_constant() {
            return None;
        }
        let c = self.base.inv(&a.constant_term())?;
        Some(Polynomial::constant(&self.base, &self.vars, c))
    }
    fn div_exact(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Option<Polynomial<F>> {
        a.div_exact(b)
    }
    fn write_elem(&self, a: &Polynomial<F>, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        a.write_with(f)
    }
    fn is_atomic(&self, a: &Polynomial<F>) -> bool {
        a.len() <= 1 && a.terms().all(|(_, c)| self.base.is_atomic(c))
    }
}

fn to_uni<F: Field>(f: &Polynomial<F>, v: usize) -> UniPoly<PolyRing<F>> {
    UniPoly::new(&PolyRing::new(f.ring(), f.vars()), f.to_univariate(v))
}

fn from_uni<F: Field>(u: &UniPoly<PolyRing<F>>, v: usize) -> Polynomial<F> {
    let r = u.ring();
    Polynomial::from_univariate(&r.base, &r.vars, v, u.coeffs())
}

/// Resultant of two univariate polynomials over an integral domain, by the
/// subresultant algorithm.
pub fn resultant_uni<R: Ring>(a: &UniPoly<R>, b: &UniPoly<R>) -> R::Elem {
    let ring = a.ring().clone();
    if a.is_zero() || b.is_zero() {
        return ring.zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = ring.one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = ring.neg(&s);
        }
    }
    if b.deg() == 0 {
        return ring.mul(&s, &ring.pow(&b.lc(), a.deg() as u32));
    }
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = ring.neg(&s);
        }
        let r = a.prem(&b);
        a = b;
        let div = ring.mul(&g, &ring.pow(&h, delta));
        b = r.div_scalar_exact(&div).expect("subresultant division is exact");
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            ring.div_exact(&ring.pow(&g, delta), &ring.pow(&h, delta - 1))
                .expect("subresultant division is exact")
        };
        if b.is_zero() {
            return ring.zero();
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let num = ring.pow(&b.lc(), da);
    let res = ring.div_exact(&num, &ring.pow(&h, da - 1)).expect("subresultant division is exact");
    ring.mul(&s, &res)
}

/// Last nonzero term of the subresultant remainder sequence; an associate
/// of the gcd up to content.
pub fn subresultant_last<R: Ring>(a: &UniPoly<R>, b: &UniPoly<R>) -> UniPoly<R> {
    let ring = a.ring().clone();
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        if b.deg() == 0 {
            return b;
        }
        let delta = (a.deg() - b.deg()) as u32;
        let r = a.prem(&b);
        if r.is_zero() {
            return b;
        }
        a = b;
        let div = ring.mul(&g, &ring.pow(&h, delta));
        b = r.div_scalar_exact(&div).expect("subresultant division is exact");
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            ring.div_exact(&ring.pow(&g, delta), &ring.pow(&h, delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Coefficients `(c1, c0)` of the member of degree 1 in `v` of the
/// subresultant remainder sequence of `f` and `g`, if there is one. Where
/// `c1` does not vanish, a common root in `v` is `-c0 / c1`.
pub fn subresultant_linear<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, v: usize) -> Option<(Polynomial<F>, Polynomial<F>)> {
    let ring = PolyRing::new(f.ring(), f.vars());
    let (mut a, mut b) = (to_uni(f, v), to_uni(g, v));
    if a.is_zero() || b.is_zero() {
        return None;
    }
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        if b.deg() == 1 {
            return Some((b.coeff(1), b.coeff(0)));
        }
        if b.deg() == 0 {
            return None;
        }
        let delta = (a.deg() - b.deg()) as u32;
        let r = a.prem(&b);
        if r.is_zero() {
            return None;
        }
        a = b;
        let div = ring.mul(&g, &ring.pow(&h, delta));
        b = r.div_scalar_exact(&div).expect("subresultant division is exact");
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            ring.div_exact(&ring.pow(&g, delta), &ring.pow(&h, delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// `Res_v(f, g)` as a polynomial in the remaining variables.
pub fn resultant<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, v: usize) -> Polynomial<F> {
    resultant_uni(&to_uni(f, v), &to_uni(g, v))
}

/// Gcd over a field, normalized to leading coefficient 1.
pub fn gcd<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let r = gcd_inner(f, g);
    normalize_monic(&r)
}

pub fn gcd_many<F: Field>(polys: &[Polynomial<F>]) -> Option<Polynomial<F>> {
    let mut it = polys.iter();
    let mut acc = it.next()?.clone();
    for p in it {
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
        acc = gcd_inner(&acc, p);
    }
    Some(normalize_monic(&acc))
}

fn normalize_monic<F: Field>(p: &Polynomial<F>) -> Polynomial<F> {
    if p.is_zero() {
        return p.clone();
    }
    let inv = p.ring().inv(&p.leading_coeff()).expect("nonzero field element");
    p.scale(&inv)
}

fn monomial_gcd<F: Field>(mono: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (m, _) = mono.leading().expect("nonzero");
    let n = g.nvars();
    let mut ex = vec![0u32; n];
    for (i, e) in ex.iter_mut().enumerate() {
        let low = g.terms().map(|(t, _)| t.exps()[i]).min().unwrap_or(0);
        *e = m.exps()[i].min(low);
    }
    Polynomial::monomial(g.ring(), g.vars(), Monomial::new(ex), g.ring().one())
}

/// Gcd of the coefficients of `f` seen as a polynomial in variable `v`.
pub fn content_in<F: Field>(f: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let coeffs: Vec<_> = f.to_univariate(v).into_iter().filter(|c| !c.is_zero()).collect();
    let mut acc = match coeffs.first() {
        Some(c) => c.clone(),
        None => return f.same_zero(),
    };
    for c in &coeffs[1..] {
        if acc.is_constant() {
            break;
        }
        acc = gcd_inner(&acc, c);
    }
    normalize_monic(&acc)
}

fn uni_content<F: Field>(u: &UniPoly<PolyRing<F>>) -> Polynomial<F> {
    let mut acc: Option<Polynomial<F>> = None;
    for c in u.coeffs() {
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => c.clone(),
            Some(a) if a.is_constant() => a,
            Some(a) => gcd_inner(&a, c),
        });
    }
    normalize_monic(&acc.unwrap_or_else(|| u.ring().zero()))
}

fn gcd_inner<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return f.same_one();
    }
    if f.len() == 1 {
        return monomial_gcd(f, g);
    }
    if g.len() == 1 {
        return monomial_gcd(g, f);
    }
    let n = f.nvars();
    for v in 0..n {
        let (a, b) = (f.involves(v), g.involves(v));
        if a && !b {
            return gcd_inner(&content_in(f, v), g);
        }
        if b && !a {
            return gcd_inner(f, &content_in(g, v));
        }
    }
    if f.ring().certify_coprime(f, g) {
        return f.same_one();
    }
    // main variable: smallest combined degree keeps the remainder sequence short
    let v = (0..n)
        .filter(|&v| f.involves(v))
        .min_by_key(|&v| {
            let (a, b) = (f.degree_in(v).unwrap(), g.degree_in(v).unwrap());
            (a.min(b), a + b)
        })
        .expect("nonconstant");
    let fu = to_uni(f, v);
    let gu = to_uni(g, v);
    let cf = uni_content(&fu);
    let cg = uni_content(&gu);
    let c = gcd_inner(&cf, &cg);
    let pf = fu.div_scalar_exact(&cf).expect("content divides");
    let pg = gu.div_scalar_exact(&cg).expect("content divides");
    let last = subresultant_last(&pf, &pg);
    if last.deg() == 0 {
        return c;
    }
    let cl = uni_content(&last);
    let pp = last.div_scalar_exact(&cl).expect("content divides");
    &c * &from_uni(&pp, v)
}

/// Squarefree part `F / gcd(F, dF/dx_1, ..., dF/dx_n)` and whether `F` was
/// already squarefree. Valid in characteristic zero.
pub fn squarefree_part<F: Field>(f: &Polynomial<F>) -> (Polynomial<F>, bool) {
    if f.is_zero() || f.is_constant() {
        return (f.clone(), true);
    }
    let mut g = f.clone();
    for v in 0..f.nvars() {
        if !f.involves(v) {
            continue;
        }
        g = gcd_inner(&g, &f.derivative(v));
        if g.is_constant() {
            return (f.clone(), true);
        }
    }
    let sf = f.div_exact(&g).expect("gcd divides");
    (sf, false)
}

/// Squarefree decomposition `F = c * prod_k S_k^k` with the `S_k` squarefree
/// and pairwise coprime. Entries with constant `S_k` are omitted.
pub fn squarefree_decomposition<F: Field>(f: &Polynomial<F>) -> Vec<(Polynomial<F>, u32)> {
    // F_0 = F, F_{k+1} = gcd(F_k, grad F_k); rad_k = F_k / F_{k+1}
    let mut out = Vec::new();
    if f.is_zero() || f.is_constant() {
        return out;
    }
    let mut fk = f.clone();
    let mut rads: Vec<Polynomial<F>> = Vec::new();
    while !fk.is_constant() {
        let mut g = fk.clone();
        for v in 0..fk.nvars() {
            if fk.involves(v) {
                g = gcd_inner(&g, &fk.derivative(v));
            }
        }
        let g = normalize_monic(&g);
        rads.push(fk.div_exact(&g).expect("gcd divides"));
        fk = g;
    }
    for k in 0..rads.len() {
        let next = rads.get(k + 1).cloned().unwrap_or_else(|| f.same_one());
        let s = rads[k].div_exact(&next).expect("radicals are nested");
        if !s.is_constant() {
            out.push((normalize_monic(&s), k as u32 + 1));
        }
    }
    out
}

/// Modular certificate that `gcd(f, g) = 1` over `Q`.
///
/// For each variable `v` occurring in both, a common factor involving `v`
/// would survive (with its degree in `v`) reduction modulo a prime and
/// evaluation of the other variables, as long as the leading coefficient of
/// `f` in `v` does not vanish there. A univariate gcd of degree 0 in the
/// image therefore rules such factors out.
pub fn coprime_by_reduction(f: &Polynomial<Rationals>, g: &Polynomial<Rationals>) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    let f = f.primitive();
    let g = g.primitive();
    let n = f.nvars();
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    for v in 0..n {
        if !(f.involves(v) && g.involves(v)) {
            continue;
        }
        let mut ok = false;
        'trials: for &p in WORD_PRIMES.iter().take(3) {
            let field = PrimeField::new(p);
            let (Some(fp), Some(gp)) = (f.reduce_mod(&field), g.reduce_mod(&field)) else {
                continue;
            };
            for _ in 0..2 {
                let pt: Vec<u64> = (0..n).map(|_| next() % p).collect();
                let fu = specialize(&fp, v, &pt);
                let gu = specialize(&gp, v, &pt);
                if fu.deg() != f.degree_in(v).unwrap() as usize || gu.is_zero() {
                    continue;
                }
                if fu.gcd(&gu).deg() == 0 {
                    ok = true;
                    break 'trials;
                }
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Univariate image in variable `v` after evaluating the others at `pt`.
fn specialize(f: &Polynomial<PrimeField>, v: usize, pt: &[u64]) -> UniPoly<PrimeField> {
    let field = *f.ring();
    let deg = f.degree_in(v).unwrap_or(0) as usize;
    let mut c = vec![0u64; deg + 1];
    for (m, a) in f.terms() {
        let mut t = *a;
        for (i, &e) in m.exps().iter().enumerate() {
            if i != v && e > 0 {
                t = field.mul(&t, &field.pow(&pt[i], e));
            }
        }
        let k = m.exps()[v] as usize;
        c[k] = field.add(&c[k], &t);
    }
    UniPoly::new(&field, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QPoly;
    use crate::ring::q;

    fn xyz() -> (QPoly, QPoly, QPoly) {
        let v = Vars::xyz();
        (QPoly::q_var(&v, 0), QPoly::q_var(&v, 1), QPoly::q_var(&v, 2))
    }

    #[test]
    fn gcd_examples() {
        let (x, y, _) = xyz();
        assert_eq!(gcd(&x, &y), x.same_one());
        assert_eq!(gcd(&(&x.pow(2) * &y), &(&x * &y.pow(2))), &x * &y);
        let f = &(&x + &y).pow(2) * &(&x - &y.scale(&q(3)));
        let g = &(&x + &y) * &(&x.pow(2) + &y);
        assert_eq!(gcd(&f, &g), &x + &y);
    }

    #[test]
    fn resultant_examples() {
        let (x, y, z) = xyz();
        let r = resultant(&(&x - &y), &(&x - &z), 0);
        assert!(r == &y - &z || r == &z - &y);
        assert!(resultant(&x.pow(2), &x, 0).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        let (x, y, _) = xyz();
        let (s, flag) = squarefree_part(&(&x.pow(2) * &y));
        assert_eq!((s, flag), (&x * &y, false));
        let (s, flag) = squarefree_part(&(&x.pow(3) * &y.pow(3)));
        assert_eq!((s, flag), (&x * &y, false));
        let dec = squarefree_decomposition(&(&x.pow(3) * &(&y + &x)));
        assert_eq!(dec, vec![(&y + &x, 1), (x.clone(), 3)]);
    }

    #[test]
    fn coprime_shortcut_agrees() {
        let (x, y, z) = xyz();
        let f = &x.pow(5) + &(&y.pow(3) * &z.pow(2));
        let g = f.derivative(0);
        assert!(coprime_by_reduction(&f, &(&g + &y)));
        assert!(!coprime_by_reduction(&(&f * &x), &(&g * &x)));
    }
}
