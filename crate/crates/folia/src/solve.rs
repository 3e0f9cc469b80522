//! Zero-dimensional solving of two affine equations.
//!
//! After a shear `x -> x - c*y` that makes the first equation monic in `y`,
//! the resultant `R(u) = Res_y(P, Q)` is split into squarefree layers
//! `R = prod m_k^k`. On each layer the `y`-coordinate is read off the gcd of
//! `P(t, y)` and `Q(t, y)` over `Q[t]/(m_k)`, splitting the modulus whenever
//! a leading coefficient vanishes on part of it. Rational roots of a layer
//! get their own pieces. A fibre gcd that is not a power of one linear
//! factor means two solutions share an `x`-coordinate, so the next shear is
//! tried. With `P` monic in `y`, the multiplicity `k` of a root of
//! `R` is the intersection multiplicity at the unique solution above it.

use folia_algebra::gcd::subresultant_linear;
use folia_algebra::{rational_roots, resultant, QPoly, QuotientRing, Rationals, Ring, UniPoly, Q};

pub type QU = UniPoly<Rationals>;

#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub ring: QuotientRing,
    pub x: QU,
    pub y: QU,
    pub mult: u32,
}

/// Squarefree decomposition of a nonzero univariate polynomial (Yun).
pub fn squarefree_layers(f: &QU) -> Vec<(QU, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

fn reduce_all(ring: &QuotientRing, v: &[QU]) -> Vec<QU> {
    v.iter().map(|c| ring.reduce(c)).collect()
}

/// Drops leading coefficients that vanish, splitting the ring where they
/// vanish only on part of it.
fn trim_split(ring: &QuotientRing, f: Vec<QU>) -> Vec<(QuotientRing, Vec<QU>)> {
    let mut f = reduce_all(ring, &f);
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    let Some(lc) = f.last().cloned() else {
        return vec![(ring.clone(), f)];
    };
    match ring.split_by_vanishing(&[lc]) {
        (None, _) => vec![(ring.clone(), f)],
        (Some(z), None) => {
            f.pop();
            trim_split(&z, f)
        }
        (Some(z), Some(u)) => {
            let mut out = trim_split(&u, f.clone());
            let mut g = f;
            g.pop();
            out.extend(trim_split(&z, g));
            out
        }
    }
}

/// Remainder of `a` by `b` whose leading coefficient is a unit.
fn rem_unit(ring: &QuotientRing, a: &[QU], b: &[QU]) -> Vec<QU> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = ring.inv(b.last().unwrap()).expect("unit leading coefficient");
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let q = ring.mul(r.last().unwrap(), &inv);
        for (i, bi) in b.iter().enumerate() {
            r[i + k] = ring.sub(&r[i + k], &ring.mul(&q, bi));
        }
        r.pop();
        r = reduce_all(ring, &r);
        while r.last().is_some_and(|c| c.is_zero()) && r.len() > db {
            r.pop();
        }
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// Monic gcd of two polynomials over `Q[t]/(m)`, one entry per piece of the
/// modulus on which it is uniform. An empty coefficient list means both
/// inputs vanish identically on that piece.
pub fn split_gcd(ring: &QuotientRing, a: &[QU], b: &[QU]) -> Vec<(QuotientRing, Vec<QU>)> {
    let mut out = Vec::new();
    for (r, b) in trim_split(ring, b.to_vec()) {
        let a = reduce_all(&r, a);
        if b.is_empty() {
            for (r2, a2) in trim_split(&r, a) {
                if a2.is_empty() {
                    out.push((r2, a2));
                } else {
                    let inv = r2.inv(a2.last().unwrap()).expect("unit");
                    out.push((r2.clone(), a2.iter().map(|c| r2.mul(c, &inv)).collect()));
                }
            }
        } else {
            let rem = rem_unit(&r, &a, &b);
            out.extend(split_gcd(&r, &b, &rem));
        }
    }
    out
}

/// Coefficients in `y` of `p(t, y)` over `Q[t]/(m)`, `p` in variables 0, 1.
fn fibre(ring: &QuotientRing, p: &QPoly) -> Vec<QU> {
    let cs = p.to_univariate(1);
    cs.iter()
        .map(|c| {
            let mut acc = QU::zero(&Rationals);
            for (m, v) in c.terms() {
                let e = m.exps()[0] as usize;
                acc = acc.add(&QU::monomial(&Rationals, e, v.clone()));
            }
            ring.reduce(&acc)
        })
        .collect()
}

fn to_uni_x(p: &QPoly) -> QU {
    let mut acc = QU::zero(&Rationals);
    for (m, v) in p.terms() {
        acc = acc.add(&QU::monomial(&Rationals, m.exps()[0] as usize, v.clone()));
    }
    acc
}

/// Rings for the rational roots of a monic squarefree `m` and for the rest.
fn rational_split(m: &QU) -> Vec<QuotientRing> {
    let mut rest = m.clone();
    let mut out = Vec::new();
    for (r, _) in rational_roots(m) {
        let lin = QU::new(&Rationals, vec![-r, Q::from_integer(1.into())]);
        rest = rest.div_rem(&lin).0;
        out.push(QuotientRing::new(lin).expect("linear"));
    }
    if rest.deg() > 0 {
        out.push(QuotientRing::new(rest.monic()).expect("factor of a squarefree polynomial"));
    }
    out
}

/// `y0` when the monic `h` equals `(y - y0)^e` with `e >= 1`.
fn single_root(ring: &QuotientRing, h: &[QU]) -> Option<QU> {
    let e = h.len().checked_sub(1).filter(|&e| e > 0)?;
    let ef = Q::from_integer((e as i64).into());
    let y0 = ring.reduce(&h[e - 1].neg().scale(&(Q::from_integer(1.into()) / ef)));
    // (y - y0)^e by repeated multiplication
    let mut p = vec![ring.one()];
    for _ in 0..e {
        let mut next = vec![ring.zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = ring.add(&next[i + 1], c);
            next[i] = ring.sub(&next[i], &ring.mul(c, &y0));
        }
        p = next;
    }
    (p.iter().zip(h).all(|(a, b)| ring.is_zero(&ring.sub(a, b)))).then_some(y0)
}

/// On a simple layer the fibre gcd is linear, and the degree-1
/// subresultant gives its root without running Euclid over the extension
/// (whose coefficients grow quickly). The root is checked on both
/// equations.
fn linear_root(ring: &QuotientRing, linear: &(QPoly, QPoly), p: &QPoly, q: &QPoly) -> Option<QU> {
    let c1 = ring.reduce(&to_uni_x(&linear.0));
    let c0 = ring.reduce(&to_uni_x(&linear.1));
    let inv = ring.inv(&c1)?;
    let y0 = ring.mul(&c0.neg(), &inv);
    let vanishes = |f: &QPoly| {
        let cs = fibre(ring, f);
        let v = cs.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, &y0), c));
        ring.is_zero(&v)
    };
    (vanishes(p) && vanishes(q)).then_some(y0)
}

/// Shears tried in order.
pub const SHEARS: [i64; 13] = [0, 1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11, -13];

/// All common zeros of `p` and `q` in the affine plane of variables 0 and 1
/// (other variables must not occur). `None` when the polynomials share a
/// factor or no tried shear separates the solutions.
pub fn solve_affine(p: &QPoly, q: &QPoly) -> Option<Vec<AffineSolution>> {
    let v = p.vars().clone();
    if p.is_zero() || q.is_zero() {
        return None;
    }
    let y = QPoly::q_var(&v, 1);
    let x = QPoly::q_var(&v, 0);
    'shear: for &c in SHEARS.iter() {
        let cq = Q::from_integer(c.into());
        let img = &x - &y.scale(&cq);
        let ps = p.substitute(0, &img);
        let qs = q.substitute(0, &img);
        let dy = ps.degree_in(1).unwrap_or(0);
        let lc = ps.to_univariate(1).pop().unwrap_or_else(|| ps.same_zero());
        if dy != ps.total_degree().unwrap_or(0) || !lc.is_constant() {
            continue;
        }
        if dy == 0 {
            // p is a nonzero constant
            return Some(Vec::new());
        }
        let r = resultant(&ps, &qs, 1);
        if r.is_zero() {
            return None;
        }
        let ru = to_uni_x(&r);
        let linear = subresultant_linear(&ps, &qs, 1);
        let mut sols = Vec::new();
        for (m, k) in squarefree_layers(&ru) {
            for ring in rational_split(&m) {
                if k == 1 {
                    if let Some(y0) = linear.as_ref().and_then(|l| linear_root(&ring, l, &ps, &qs)) {
                        let t = ring.generator();
                        let x0 = ring.reduce(&t.sub(&y0.scale(&cq)));
                        sols.push(AffineSolution { ring, x: x0, y: y0, mult: k });
                        continue;
                    }
                }
                for (piece, h) in split_gcd(&ring, &fibre(&ring, &ps), &fibre(&ring, &qs)) {
                    let Some(y0) = single_root(&piece, &h) else {
                        continue 'shear;
                    };
                    let t = piece.generator();
                    let x0 = piece.reduce(&t.sub(&y0.scale(&cq)));
                    sols.push(AffineSolution { ring: piece, x: x0, y: y0, mult: k });
                }
            }
        }
        return Some(sols);
    }
    None
}

/// Rational points among the solutions, for convenience.
pub fn rational_solutions(sols: &[AffineSolution]) -> Vec<(Q, Q, u32)> {
    sols.iter()
        .filter(|s| s.ring.degree() == 1)
        .map(|s| (s.ring.as_rational(&s.x).unwrap(), s.ring.as_rational(&s.y).unwrap(), s.mult))
        .collect()
}
