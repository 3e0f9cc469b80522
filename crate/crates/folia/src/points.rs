//! Points of the projective plane with rational or algebraic coordinates.
//!
//! An algebraic point is a family of conjugate points: coordinates in
//! `Q[t]/(m)` for a squarefree `m`, one geometric point per root of `m`.
//! Rational points use `m = t`.

use std::cmp::Ordering;
use std::fmt;

use folia_algebra::{gcd_many, QPoly, QuotientRing, Rationals, Ring, UniPoly, Q};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::foliation::{Foliation, ProjectiveMap};
use crate::solve::{solve_affine, QU};

#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    ring: QuotientRing,
    coords: [QU; 3],
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, o: &Self) -> bool {
        self.ring == o.ring && self.coords == o.coords
    }
}

pub fn rational_ring() -> QuotientRing {
    QuotientRing::new(UniPoly::x(&Rationals)).expect("t is monic squarefree")
}

impl ProjectivePoint {
    pub fn rational(c: [Q; 3]) -> Result<Self> {
        let ring = rational_ring();
        let coords = c.map(|v| UniPoly::constant(&Rationals, v));
        let mut pts = Self::normalized(&ring, coords);
        match pts.len() {
            1 => Ok(pts.pop().unwrap()),
            _ => Err(Error::Precondition("all coordinates are zero".into())),
        }
    }

    pub fn from_i64(c: [i64; 3]) -> Result<Self> {
        Self::rational(c.map(|v| Q::from_integer(v.into())))
    }

    /// Normalizes: the first coordinate that is a unit becomes 1. The ring
    /// is split where different conjugates have different zero patterns.
    /// Pieces where every coordinate vanishes are dropped.
    pub fn normalized(ring: &QuotientRing, coords: [QU; 3]) -> Vec<Self> {
        let coords = coords.map(|c| ring.reduce(&c));
        let mut out = Vec::new();
        normalize_from(ring, coords, 0, &mut out);
        out
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn coords(&self) -> &[QU; 3] {
        &self.coords
    }

    /// Number of geometric points represented.
    pub fn count(&self) -> usize {
        self.ring.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.ring.degree() == 1
    }

    pub fn rational_coords(&self) -> Option<[Q; 3]> {
        if !self.is_rational() {
            return None;
        }
        Some(std::array::from_fn(|i| self.ring.as_rational(&self.coords[i]).unwrap()))
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart_index(&self) -> usize {
        (0..3).find(|&i| self.coords[i] == UniPoly::one(&Rationals)).expect("normalized point")
    }

    /// Restriction to a factor of the modulus.
    pub fn restrict(&self, sub: &QuotientRing) -> Self {
        ProjectivePoint { ring: sub.clone(), coords: self.coords.clone().map(|c| sub.reduce(&c)) }
    }

    /// Value of a polynomial in `x, y, z` at the point.
    pub fn eval(&self, p: &QPoly) -> QU {
        eval_at(&self.ring, p, &self.coords)
    }

    pub fn lies_on(&self, p: &QPoly) -> bool {
        self.ring.is_zero(&self.eval(p))
    }

    fn sort_key(&self) -> (usize, String) {
        (self.ring.degree(), self.to_string())
    }
}

/// Value of a polynomial in `x, y, z` (or any variables matched by
/// position) at coordinates in the quotient ring.
pub fn eval_at(ring: &QuotientRing, p: &QPoly, coords: &[QU]) -> QU {
    let pk = p.map_coeffs(ring, |c| UniPoly::constant(&Rationals, c.clone()));
    ring.reduce(&pk.evaluate(coords))
}

fn normalize_from(ring: &QuotientRing, coords: [QU; 3], i: usize, out: &mut Vec<ProjectivePoint>) {
    if i == 3 {
        return;
    }
    let (zero, unit) = ring.split_by_vanishing(&[coords[i].clone()]);
    if let Some(u) = unit {
        let c = coords.clone().map(|v| u.reduce(&v));
        let inv = u.inv(&c[i]).expect("unit");
        let scaled = c.map(|v| u.mul(&v, &inv));
        out.push(ProjectivePoint { ring: u, coords: scaled });
    }
    if let Some(z) = zero {
        let mut c = coords.map(|v| z.reduce(&v));
        c[i] = UniPoly::zero(&Rationals);
        normalize_from(&z, c, i + 1, out);
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.rational_coords() {
            let s: Vec<String> = c.iter().map(folia_algebra::ring::rational_to_string).collect();
            return write!(f, "[{}]", s.join(":"));
        }
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string_in("t")).collect();
        write!(f, "[{}] where {} = 0", s.join(":"), self.ring.modulus().to_string_in("t"))
    }
}

pub fn sort_points(pts: &mut [ProjectivePoint]) {
    pts.sort_by(|a, b| match (a.rational_coords(), b.rational_coords()) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.sort_key().cmp(&b.sort_key()),
    });
}

/// A singular point together with its Milnor number (uniform over the
/// conjugates it represents).
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub point: ProjectivePoint,
    pub milnor: u32,
}

#[derive(Clone, Debug)]
pub struct SingularSet {
    pub points: Vec<SingularPoint>,
    /// `sum of Milnor numbers == d^2 + d + 1`.
    pub complete: bool,
    /// Coordinate change used for elimination.
    pub map: ProjectiveMap,
}

impl SingularSet {
    pub fn milnor_sum(&self) -> u64 {
        self.points.iter().map(|p| p.milnor as u64 * p.point.count() as u64).sum()
    }
}

/// Deterministic list of changes `x -> x + c*y`, `z -> a*x + b*y + z`.
fn candidate_maps() -> impl Iterator<Item = ProjectiveMap> {
    let small = [0i64, 1, -1, 2, -2, 3];
    let mut out = Vec::new();
    for &a in &small {
        for &b in &small {
            for &c in &small {
                out.push((a, b, c));
            }
        }
    }
    out.sort_by_key(|&(a, b, c)| (a.abs().max(b.abs()).max(c.abs()), a.abs() + b.abs() + c.abs()));
    out.into_iter().map(|(a, b, c)| ProjectiveMap::from_i64([[1, c, 0], [0, 1, 0], [a, b, 1]]))
}

/// All singular points with Milnor numbers.
///
/// A coordinate change moves every singular point off the line `z = 0`;
/// the singular points are then the common zeros of the first two affine
/// components in the chart `z = 1`.
pub fn singular_points(f: &Foliation) -> Result<SingularSet> {
    let zero = Q::zero();
    let one = Q::one();
    for m in candidate_maps() {
        let g = f.pullback(&m)?;
        let at_inf: Vec<QPoly> = g.components().iter().map(|p| p.eval_var(2, &zero)).filter(|p| !p.is_zero()).collect();
        if at_inf.is_empty() || !gcd_many(&at_inf).unwrap().is_constant() {
            continue;
        }
        let p = g.a().eval_var(2, &one);
        let q = g.b().eval_var(2, &one);
        let Some(sols) = solve_affine(&p, &q) else {
            continue;
        };
        let me = m.numeric_entries().unwrap();
        let mut points = Vec::new();
        for s in sols {
            let local = [s.x.clone(), s.y.clone(), UniPoly::one(&Rationals)];
            let coords: [QU; 3] = std::array::from_fn(|i| {
                let mut acc = UniPoly::zero(&Rationals);
                for (j, lj) in local.iter().enumerate() {
                    acc = acc.add(&lj.scale(&me[i][j]));
                }
                s.ring.reduce(&acc)
            });
            for pt in ProjectivePoint::normalized(&s.ring, coords) {
                points.push(SingularPoint { point: pt, milnor: s.mult });
            }
        }
        for sp in &points {
            for c in f.components() {
                if !sp.point.lies_on(c) {
                    return Err(Error::Internal(format!("{} is not singular", sp.point)));
                }
            }
        }
        let mut pts: Vec<ProjectivePoint> = points.iter().map(|p| p.point.clone()).collect();
        sort_points(&mut pts);
        let ordered: Vec<SingularPoint> = pts
            .into_iter()
            .map(|p| points.iter().find(|q| q.point == p).unwrap().clone())
            .collect();
        let d = f.degree() as u64;
        let mut set = SingularSet { points: ordered, complete: false, map: m };
        set.complete = set.milnor_sum() == d * d + d + 1;
        return Ok(set);
    }
    Err(Error::Internal("no coordinate change separated the singular points".into()))
}
