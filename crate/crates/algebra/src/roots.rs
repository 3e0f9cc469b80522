//! Rational roots of univariate polynomials over `Q`.
//!
//! Roots are found modulo a small prime at which the squarefree part stays
//! squarefree, lifted p-adically past the size bound from the rational root
//! theorem, reconstructed as fractions and checked exactly. Every rational
//! root is found this way, so the list is complete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::gcd::subresultant_last;
use crate::ring::{Integers, PrimeField, Rationals, Ring, Q};
use crate::upoly::UniPoly;

pub type QUPoly = UniPoly<Rationals>;
type ZUPoly = UniPoly<Integers>;

/// Primitive integer polynomial with positive leading coefficient.
pub fn to_primitive_integer(f: &QUPoly) -> ZUPoly {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return UniPoly::zero(&Integers);
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    UniPoly::new(&Integers, ints.into_iter().map(|c| c / &g).collect())
}

fn z_primitive(f: &ZUPoly) -> ZUPoly {
    let mut g = BigInt::zero();
    for c in f.coeffs() {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.lc().is_negative() {
        g = -g;
    }
    f.div_scalar_exact(&g).expect("content divides")
}

/// Gcd over `Z[t]`, primitive with positive leading coefficient.
pub fn z_gcd(a: &ZUPoly, b: &ZUPoly) -> ZUPoly {
    if a.is_zero() {
        return z_primitive(b);
    }
    if b.is_zero() {
        return z_primitive(a);
    }
    let last = subresultant_last(&z_primitive(a), &z_primitive(b));
    if last.deg() == 0 {
        return UniPoly::one(&Integers);
    }
    z_primitive(&last)
}

/// Squarefree part over `Q`, as a primitive integer polynomial.
pub fn squarefree_integer(f: &QUPoly) -> ZUPoly {
    let g = to_primitive_integer(f);
    if g.deg() == 0 {
        return g;
    }
    let d = z_gcd(&g, &g.derivative());
    if d.deg() == 0 {
        return g;
    }
    z_primitive(&g.div_exact(&d).expect("gcd divides"))
}

fn eval_q(f: &QUPoly, x: &Q) -> Q {
    f.eval(x)
}

/// Rational roots with multiplicities, in increasing order.
pub fn rational_roots(f: &QUPoly) -> Vec<(Q, u32)> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut out = Vec::new();
    let tz = f.trailing_zeros();
    let shifted = QUPoly::new(&Rationals, f.coeffs()[tz..].to_vec());
    if tz > 0 {
        out.push((Q::zero(), tz as u32));
    }
    if shifted.deg() == 0 {
        return out;
    }
    let g = squarefree_integer(&shifted);
    for r in squarefree_roots(&g) {
        let mut m = 0u32;
        let lin = QUPoly::new(&Rationals, vec![-r.clone(), Q::one()]);
        let mut cur = shifted.clone();
        while let Some(qt) = cur.div_exact(&lin) {
            m += 1;
            cur = qt;
        }
        debug_assert!(m > 0);
        out.push((r, m));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Rational roots of a squarefree primitive integer polynomial with nonzero
/// constant term.
fn squarefree_roots(g: &ZUPoly) -> Vec<Q> {
    let n = g.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = g.lc().abs();
    let a0 = g.coeff(0).abs();
    if n == 1 {
        return vec![Q::new(-g.coeff(0), g.coeff(1))];
    }
    let gq: QUPoly = g.map(&Rationals, |c| Q::from_integer(c.clone()));
    let (p, field) = good_prime(g);
    let gp = g.map(&field, |c| field.reduce_int(c));
    let roots_mod_p: Vec<u64> = (0..p).filter(|r| field.is_zero(&gp.eval(r))).collect();
    // M > 2 * |a0| * |lc|
    let bound = BigInt::from(2) * &a0 * &lc;
    let bp = BigInt::from(p);
    let mut out = Vec::new();
    for r in roots_mod_p {
        let (lifted, modulus) = hensel_lift(g, &BigInt::from(r), &bp, &bound);
        if let Some(cand) = reconstruct(&lifted, &modulus, &a0, &lc) {
            if eval_q(&gq, &cand).is_zero() {
                out.push(cand);
            }
        }
    }
    out
}

/// Smallest odd prime not dividing the leading coefficient at which `g`
/// stays squarefree.
fn good_prime(g: &ZUPoly) -> (u64, PrimeField) {
    let mut p = 3u64;
    loop {
        if crate::ring::is_small_prime(p) {
            let field = PrimeField::new(p);
            if field.reduce_int(&g.lc()) != 0 {
                let gp = g.map(&field, |c| field.reduce_int(c));
                if gp.gcd(&gp.derivative()).deg() == 0 {
                    return (p, field);
                }
            }
        }
        p += 2;
    }
}

fn eval_mod(g: &ZUPoly, x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in g.coeffs().iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Newton iteration for a simple root modulo `p` until the modulus exceeds
/// `bound`.
fn hensel_lift(g: &ZUPoly, r: &BigInt, p: &BigInt, bound: &BigInt) -> (BigInt, BigInt) {
    let dg = g.derivative();
    let mut m = p.clone();
    let mut x = r.clone();
    while &m <= bound {
        m = &m * &m;
        let fx = eval_mod(g, &x, &m);
        let dfx = eval_mod(&dg, &x, &m);
        let inv = inv_mod(&dfx, &m).expect("simple root stays simple");
        x = (x - fx * inv).mod_floor(&m);
    }
    (x, m)
}

/// Fraction `a/b` with `|a| <= n`, `0 < b <= d` and `a = b*r (mod m)`.
fn reconstruct(r: &BigInt, m: &BigInt, n: &BigInt, d: &BigInt) -> Option<Q> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1.abs() > n {
        let qt = r0.div_floor(&r1);
        let r2 = &r0 - &qt * &r1;
        let s2 = &s0 - &qt * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || &s1.abs() > d {
        return None;
    }
    Some(Q::new(r1, s1))
}

/// Number of distinct complex roots, via the squarefree part.
pub fn distinct_root_count(f: &QUPoly) -> usize {
    if f.is_zero() {
        return 0;
    }
    squarefree_integer(f).deg()
}

/// Exact small-integer helper for callers that need a machine value.
pub fn small(q: &Q) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qf};

    fn from_roots(rs: &[Q]) -> QUPoly {
        let mut f = QUPoly::one(&Rationals);
        for r in rs {
            f = f.mul(&QUPoly::new(&Rationals, vec![-r.clone(), Q::one()]));
        }
        f
    }

    #[test]
    fn finds_all_rational_roots() {
        let rs = [qf(-7, 3), q(0), qf(5, 2), q(11), qf(5, 2)];
        let mut f = from_roots(&rs);
        // an irreducible quadratic factor that contributes nothing
        f = f.mul(&QUPoly::new(&Rationals, vec![q(2), q(0), q(1)]));
        let got = rational_roots(&f);
        assert_eq!(got, vec![(qf(-7, 3), 1), (q(0), 1), (qf(5, 2), 2), (q(11), 1)]);
    }

    #[test]
    fn no_roots() {
        let f = QUPoly::new(&Rationals, vec![q(-2), q(0), q(1)]);
        assert!(rational_roots(&f).is_empty());
    }
}
