//! Invariants of a foliation at a singular point.
//!
//! At a point whose unit coordinate is `x_k`, the dual vector field of the
//! chart `x_k = 1` is translated to the origin, `X = X1 d/du + X2 d/dv`, with
//! coefficients in the point's ring. A condition on jet coefficients that
//! holds at some conjugates only splits the ring, so every profile is
//! uniform over the conjugates it represents.

use std::fmt;

use folia_algebra::{gcd, gcd_many, rational_roots, squarefree_part, Polynomial, QPoly, QuotientRing, Rationals, Ring, UniPoly, Vars, Q};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::foliation::{Chart, Foliation};
use crate::intersect::intersection_at_origin;
use crate::points::{singular_points, ProjectivePoint, SingularSet};
use crate::solve::QU;

pub type KPoly = Polynomial<QuotientRing>;

fn uv() -> Vars {
    Vars::new(&["u", "v"])
}

/// The dual vector field at a point, translated to the origin.
#[derive(Clone, Debug)]
pub struct Germ {
    pub point: ProjectivePoint,
    pub chart: Chart,
    pub x1: KPoly,
    pub x2: KPoly,
}

impl Germ {
    pub fn new(f: &Foliation, p: &ProjectivePoint) -> Germ {
        let ring = p.ring().clone();
        let chart = Chart::from_index(p.chart_index());
        let (i, j, k) = chart.indices();
        let (x1, x2) = f.affine(chart).vector_field();
        let v = uv();
        let c = p.coords();
        let mut imgs = vec![KPoly::one(&ring, &v); 3];
        imgs[i] = &KPoly::var(&ring, &v, 0) + &KPoly::constant(&ring, &v, c[i].clone());
        imgs[j] = &KPoly::var(&ring, &v, 1) + &KPoly::constant(&ring, &v, c[j].clone());
        imgs[k] = KPoly::one(&ring, &v);
        let lift = |q: &QPoly| q.map_coeffs(&ring, |c| ring.from_rational(c)).compose(&imgs);
        Germ { point: p.clone(), chart, x1: lift(&x1), x2: lift(&x2) }
    }

    pub fn ring(&self) -> &QuotientRing {
        self.point.ring()
    }

    fn restrict(&self, sub: &QuotientRing) -> Germ {
        let r = |p: &KPoly| p.map_coeffs(sub, |c| sub.reduce(c));
        Germ { point: self.point.restrict(sub), chart: self.chart, x1: r(&self.x1), x2: r(&self.x2) }
    }

    fn is_singular(&self) -> bool {
        let r = self.ring();
        r.is_zero(&self.x1.constant_term()) && r.is_zero(&self.x2.constant_term())
    }

    /// Coefficients of the degree-`k` parts of both components.
    fn jet(&self, k: u32) -> Vec<QU> {
        let mut out: Vec<QU> = self.x1.homogeneous_part(k).terms().map(|(_, c)| c.clone()).collect();
        out.extend(self.x2.homogeneous_part(k).terms().map(|(_, c)| c.clone()));
        out
    }

    /// `u X2_k - v X1_k`, the degree-`k` part of `det(X, R)`.
    fn radial_det(&self, k: u32) -> KPoly {
        let r = self.ring();
        let v = uv();
        let u = KPoly::var(r, &v, 0);
        let w = KPoly::var(r, &v, 1);
        &(&u * &self.x2.homogeneous_part(k)) - &(&w * &self.x1.homogeneous_part(k))
    }

    /// Linear part `[[dX1/du, dX1/dv], [dX2/du, dX2/dv]]` at the point.
    pub fn jacobian(&self) -> [[QU; 2]; 2] {
        [
            [self.x1.coeff_of(&[1, 0]), self.x1.coeff_of(&[0, 1])],
            [self.x2.coeff_of(&[1, 0]), self.x2.coeff_of(&[0, 1])],
        ]
    }

    fn trace_det(&self) -> (QU, QU) {
        let r = self.ring();
        let j = self.jacobian();
        let tr = r.add(&j[0][0], &j[1][1]);
        let det = r.sub(&r.mul(&j[0][0], &j[1][1]), &r.mul(&j[0][1], &j[1][0]));
        (tr, det)
    }

    /// The field with rational coefficients, at a rational point.
    pub fn rational_field(&self) -> Option<(QPoly, QPoly)> {
        if !self.point.is_rational() {
            return None;
        }
        let r = self.ring();
        let conv = |p: &KPoly| p.map_coeffs(&Rationals, |c| r.as_rational(c).unwrap());
        Some((conv(&self.x1), conv(&self.x2)))
    }

    /// The line `a u + b v = 0` through the point, as a projective line.
    fn line(&self, a: &Q, b: &Q) -> QPoly {
        let (i, j, k) = self.chart.indices();
        let s = self.point.rational_coords().expect("rational point");
        let mut l = [Q::zero(), Q::zero(), Q::zero()];
        l[i] = a.clone();
        l[j] = b.clone();
        l[k] = -(a * &s[i]) - b * &s[j];
        let v = Vars::xyz();
        let mut p = QPoly::q_zero(&v);
        for (idx, c) in l.into_iter().enumerate() {
            p = &p + &QPoly::q_var(&v, idx).scale(&c);
        }
        p.primitive()
    }
}

/// Splits `g` into pieces on which the first `k` in `from..=to` with a
/// nonzero `elems(k)` is constant (`None` when there is none).
fn first_nonzero<F: Fn(&Germ, u32) -> Vec<QU>>(g: Germ, from: u32, to: u32, elems: F) -> Vec<(Germ, Option<u32>)> {
    let mut out = Vec::new();
    let mut work = vec![(g, from)];
    while let Some((g, k)) = work.pop() {
        if k > to {
            out.push((g, None));
            continue;
        }
        let (zero, unit) = g.ring().split_by_vanishing(&elems(&g, k));
        if let Some(u) = unit {
            out.push((g.restrict(&u), Some(k)));
        }
        if let Some(z) = zero {
            work.push((g.restrict(&z), k + 1));
        }
    }
    out
}

fn split_on(g: Germ, e: QU) -> (Option<Germ>, Option<Germ>) {
    let (zero, unit) = g.ring().split_by_vanishing(&[e]);
    (zero.map(|z| g.restrict(&z)), unit.map(|u| g.restrict(&u)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Radial(u32),
    QuasiRadial(u32),
    Degenerate,
    Plain,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Radial(n) => write!(f, "radial({n})"),
            Classification::QuasiRadial(n) => write!(f, "quasi-radial({n})"),
            Classification::Degenerate => f.write_str("degenerate"),
            Classification::Plain => f.write_str("plain"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalProfile {
    pub point: ProjectivePoint,
    pub nu: u32,
    pub tau: u32,
    pub mu_is_one: bool,
    pub mu: Option<u32>,
    /// `tr^2 / det` of the linear part, present iff `mu_is_one`.
    pub bb: Option<QU>,
    pub kappa: Option<u32>,
    /// A non-invariant line with tangency order `kappa`, when one is rational.
    pub kappa_line: Option<QPoly>,
    /// Rational non-invariant lines with tangency order above `tau`.
    pub lambda: Vec<QPoly>,
    /// Irrational lines of the same kind, counted over the closure.
    pub lambda_irrational: usize,
    /// `kappa` was not computed although it matters: a non-degenerate
    /// algebraic point with index 4.
    pub undecided: bool,
    pub class: Classification,
}

impl LocalProfile {
    pub fn bb_rational(&self) -> Option<Q> {
        self.bb.as_ref().and_then(|b| self.point.ring().as_rational(b))
    }

    pub fn bb_is_four(&self) -> bool {
        self.bb_rational() == Some(Q::from_integer(4.into()))
    }

    pub fn bb_text(&self) -> Option<String> {
        let b = self.bb.as_ref()?;
        Some(match self.point.ring().as_rational(b) {
            Some(q) => folia_algebra::ring::rational_to_string(&q),
            None => b.to_string_in("t"),
        })
    }
}

/// Tangency data of the lines through a rational point.
#[derive(Clone, Debug, PartialEq)]
pub struct LineData {
    pub kappa: u32,
    pub kappa_direction: Option<(Q, Q)>,
    pub lambda: Vec<(Q, Q)>,
    pub lambda_irrational: usize,
}

fn ab_vars() -> Vars {
    Vars::new(&["a", "b"])
}

/// `Q_{i+1}(a, b) = a X1_i(b, -a) + b X2_i(b, -a)`.
pub fn q_form(x1: &QPoly, x2: &QPoly, i: u32) -> QPoly {
    let v = ab_vars();
    let a = QPoly::q_var(&v, 0);
    let b = QPoly::q_var(&v, 1);
    let imgs = [b.clone(), -&a];
    let p1 = x1.homogeneous_part(i).compose(&imgs);
    let p2 = x2.homogeneous_part(i).compose(&imgs);
    &(&a * &p1) + &(&b * &p2)
}

/// Distinct rational roots `(a : b)` of a binary form.
pub fn binary_rational_roots(h: &QPoly) -> Vec<(Q, Q)> {
    let deg = h.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Q::zero(); deg + 1];
    for (m, c) in h.terms() {
        coeffs[m.exps()[0] as usize] += c;
    }
    let uni = UniPoly::new(&Rationals, coeffs);
    let mut out = Vec::new();
    if uni.deg() > 0 {
        for (r, _) in rational_roots(&uni) {
            out.push((r, Q::one()));
        }
    }
    if uni.is_zero() || uni.deg() < deg {
        out.push((Q::one(), Q::zero()));
    }
    out
}

fn strip_factors(h: &QPoly, of: &QPoly) -> QPoly {
    let mut h = h.clone();
    loop {
        let g = gcd(&h, of);
        if g.is_constant() {
            return h;
        }
        h = h.div_exact(&g).expect("gcd divides");
    }
}

/// `kappa`, a line realizing it and `Lambda`, from the rational field at
/// the origin. Lines are directions `(a, b)` of `a u + b v = 0`.
pub fn line_data(x1: &QPoly, x2: &QPoly, tau: u32, d: u32) -> LineData {
    let qs: Vec<QPoly> = (tau..=d).map(|i| q_form(x1, x2, i)).collect();
    let nonzero: Vec<QPoly> = qs.iter().filter(|p| !p.is_zero()).cloned().collect();
    // common roots of every Q_i are the invariant lines
    let invariant = gcd_many(&nonzero).expect("Q_{tau+1} is nonzero");
    let mut kappa = tau;
    let mut top: Option<QPoly> = None;
    let mut acc: Option<QPoly> = None;
    for n in tau + 1..=d {
        let q = &qs[(n - 1 - tau) as usize];
        let g = match &acc {
            None => q.clone(),
            Some(a) if q.is_zero() => a.clone(),
            Some(a) => gcd(a, q),
        };
        let t = strip_factors(&g, &invariant);
        acc = Some(g);
        if t.is_constant() {
            break;
        }
        kappa = n;
        top = Some(t);
    }
    let kappa_direction = match &top {
        Some(t) => binary_rational_roots(t).into_iter().next(),
        None => generic_direction(&qs[0]),
    };
    let t1 = strip_factors(&qs[0], &invariant);
    let lambda = binary_rational_roots(&t1);
    let distinct = squarefree_part(&t1).0.total_degree().unwrap_or(0) as usize;
    LineData { kappa, kappa_direction, lambda_irrational: distinct - lambda.len(), lambda }
}

fn generic_direction(q: &QPoly) -> Option<(Q, Q)> {
    let small = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1), (1, 3), (3, 1)];
    small.iter().chain([(1, 4), (4, 1), (1, 5), (5, 1), (2, 3), (3, 2), (1, -3)].iter()).find_map(|&(a, b)| {
        let (a, b) = (Q::from_integer(a.into()), Q::from_integer(b.into()));
        (!q.evaluate(&[a.clone(), b.clone()]).is_zero()).then_some((a, b))
    })
}

fn rational_point(s: &ProjectivePoint) -> Result<()> {
    if s.is_rational() {
        Ok(())
    } else {
        Err(Error::Precondition("a rational point is required".into()))
    }
}

fn singular_germ(f: &Foliation, s: &ProjectivePoint) -> Result<Germ> {
    let g = Germ::new(f, s);
    if !g.is_singular() {
        return Err(Error::NotSingular);
    }
    Ok(g)
}

/// Outcome of the non-degeneracy test at a family of conjugate points.
#[derive(Clone, Debug)]
pub enum MuOne {
    Yes,
    No,
    /// Holds at the conjugates of `one` and fails at those of `degenerate`.
    Split { one: ProjectivePoint, degenerate: ProjectivePoint },
}

pub fn milnor_is_one(f: &Foliation, s: &ProjectivePoint) -> Result<MuOne> {
    let g = singular_germ(f, s)?;
    let (_, det) = g.trace_det();
    Ok(match split_on(g, det) {
        (None, Some(_)) => MuOne::Yes,
        (Some(_), None) => MuOne::No,
        (Some(z), Some(u)) => MuOne::Split { one: u.point, degenerate: z.point },
        (None, None) => unreachable!("the ring is nonzero"),
    })
}

/// Milnor number at a rational singular point, as the intersection number
/// of the two components of the local vector field.
pub fn milnor_number(f: &Foliation, s: &ProjectivePoint) -> Result<u32> {
    rational_point(s)?;
    let g = singular_germ(f, s)?;
    let (x1, x2) = g.rational_field().unwrap();
    intersection_at_origin(&x1, &x2).ok_or_else(|| Error::Internal("non-isolated singular point".into()))
}

pub fn bb_index(f: &Foliation, s: &ProjectivePoint) -> Result<QU> {
    let g = singular_germ(f, s)?;
    let r = g.ring();
    let (tr, det) = g.trace_det();
    let inv = r.inv(&det).ok_or_else(|| Error::Precondition("degenerate singular point".into()))?;
    Ok(r.mul(&r.mul(&tr, &tr), &inv))
}

/// `(nu, tau)` per piece of the point.
pub fn nu_tau(f: &Foliation, s: &ProjectivePoint) -> Result<Vec<(ProjectivePoint, u32, u32)>> {
    let g = singular_germ(f, s)?;
    let mut out = Vec::new();
    for (g, nu, tau) in nu_tau_pieces(g, f.degree())? {
        out.push((g.point, nu, tau));
    }
    Ok(out)
}

fn nu_tau_pieces(g: Germ, d: u32) -> Result<Vec<(Germ, u32, u32)>> {
    let mut out = Vec::new();
    for (g, nu) in first_nonzero(g, 1, d + 1, |g, k| g.jet(k)) {
        let nu = nu.ok_or_else(|| Error::Internal("zero vector field".into()))?;
        for (g, tau) in first_nonzero(g, nu, d + 1, |g, k| g.radial_det(k).terms().map(|(_, c)| c.clone()).collect()) {
            let tau = tau.ok_or_else(|| Error::Precondition("every line through the point is invariant".into()))?;
            out.push((g, nu, tau));
        }
    }
    Ok(out)
}

/// Tangency order of `F` with the line `l` at a rational point `s` of `l`;
/// `None` stands for an invariant line.
pub fn tangency_order(f: &Foliation, l: &QPoly, s: &ProjectivePoint) -> Result<Option<u32>> {
    rational_point(s)?;
    let l = l.with_vars(&Vars::xyz());
    if !(l.is_homogeneous() && l.total_degree() == Some(1)) {
        return Err(Error::Precondition("a line is a nonzero linear form".into()));
    }
    if !s.lies_on(&l) {
        return Err(Error::NotOnLine);
    }
    if f.is_invariant_curve(&l) {
        return Ok(None);
    }
    let g = Germ::new(f, s);
    let (x1, x2) = g.rational_field().unwrap();
    let (i, j, _) = g.chart.indices();
    let one = [0u32, 0, 0];
    let mut e = one;
    e[i] = 1;
    let a = l.coeff_of(&e);
    let mut e = one;
    e[j] = 1;
    let b = l.coeff_of(&e);
    Ok(Some(direction_order(&x1, &x2, &a, &b).expect("non-invariant line")))
}

/// Valuation at `t = 0` of `a X1(b t, -a t) + b X2(b t, -a t)`.
pub fn direction_order(x1: &QPoly, x2: &QPoly, a: &Q, b: &Q) -> Option<u32> {
    let t = Vars::new(&["t"]);
    let tt = QPoly::q_var(&t, 0);
    let imgs = [tt.scale(b), tt.scale(&-a)];
    let p = &x1.compose(&imgs).scale(a) + &x2.compose(&imgs).scale(b);
    p.order()
}

/// Profiles of a (family of) singular point(s); `mu` is the Milnor number
/// from elimination, used at algebraic degenerate points.
pub fn profile(f: &Foliation, s: &ProjectivePoint, mu: Option<u32>) -> Result<Vec<LocalProfile>> {
    let d = f.degree();
    let g = singular_germ(f, s)?;
    let (_, det) = g.trace_det();
    let (degenerate, regular) = split_on(g, det);
    let mut out = Vec::new();
    for (g, mu_is_one) in [(regular, true), (degenerate, false)] {
        let Some(g) = g else { continue };
        for (g, nu, tau) in nu_tau_pieces(g, d)? {
            let pieces = if mu_is_one {
                let (tr, det) = g.trace_det();
                let r = g.ring().clone();
                let bb = r.mul(&r.mul(&tr, &tr), &r.inv(&det).unwrap());
                let (four, other) = split_on(g, r.sub(&bb, &r.from_i64(4)));
                [four, other].into_iter().flatten().collect()
            } else {
                vec![g]
            };
            for g in pieces {
                out.push(finish(g, d, nu, tau, mu_is_one, mu)?);
            }
        }
    }
    Ok(out)
}

fn finish(g: Germ, d: u32, nu: u32, tau: u32, mu_is_one: bool, mu: Option<u32>) -> Result<LocalProfile> {
    let r = g.ring().clone();
    let bb = mu_is_one.then(|| {
        let (tr, det) = g.trace_det();
        r.mul(&r.mul(&tr, &tr), &r.inv(&det).unwrap())
    });
    let bb4 = bb.as_ref().is_some_and(|b| r.is_zero(&r.sub(b, &r.from_i64(4))));
    let mu = if mu_is_one {
        Some(1)
    } else if let Some((x1, x2)) = g.rational_field() {
        intersection_at_origin(&x1, &x2)
    } else {
        mu
    };
    let mut p = LocalProfile {
        point: g.point.clone(),
        nu,
        tau,
        mu_is_one,
        mu,
        bb,
        kappa: None,
        kappa_line: None,
        lambda: Vec::new(),
        lambda_irrational: 0,
        undecided: false,
        class: Classification::Plain,
    };
    if let Some((x1, x2)) = g.rational_field() {
        let data = line_data(&x1, &x2, tau, d);
        p.kappa = Some(data.kappa);
        p.kappa_line = data.kappa_direction.map(|(a, b)| g.line(&a, &b));
        p.lambda = data.lambda.iter().map(|(a, b)| g.line(a, b)).collect();
        p.lambda_irrational = data.lambda_irrational;
    } else {
        p.undecided = bb4;
    }
    p.class = if nu == 1 && tau >= 2 {
        Classification::Radial(tau - 1)
    } else if bb4 && p.kappa.is_some_and(|k| k >= 2) {
        Classification::QuasiRadial(p.kappa.unwrap() - 1)
    } else if !mu_is_one {
        Classification::Degenerate
    } else {
        Classification::Plain
    };
    Ok(p)
}

/// Singular points with their profiles.
#[derive(Clone, Debug)]
pub struct LocalSummary {
    pub singular: SingularSet,
    pub profiles: Vec<LocalProfile>,
}

pub fn classify(f: &Foliation) -> Result<LocalSummary> {
    let singular = singular_points(f)?;
    let mut profiles = Vec::new();
    for sp in &singular.points {
        profiles.extend(profile(f, &sp.point, Some(sp.milnor))?);
    }
    Ok(LocalSummary { singular, profiles })
}

#[derive(Clone, Debug, PartialEq)]
pub struct U1Report {
    pub member: bool,
    /// The singular set was certified complete; otherwise `member` only
    /// covers the points found.
    pub complete: bool,
    /// A point where `mu = 1` or `tau = 1` fails.
    pub witness: Option<String>,
}

/// Every singular point is non-degenerate with `tau = 1`.
pub fn u1_membership(f: &Foliation) -> Result<U1Report> {
    let s = classify(f)?;
    let bad = s.profiles.iter().find(|p| !p.mu_is_one || p.tau != 1);
    Ok(U1Report { member: bad.is_none(), complete: s.singular.complete, witness: bad.map(|p| p.point.to_string()) })
}
