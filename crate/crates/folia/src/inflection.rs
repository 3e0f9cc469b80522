//! Inflection divisor, flexes and the transverse inflection loci.
//!
//! `I_F = det(x, Z(x), Z^2(x))` over the three coordinates, with `Z` the
//! dual vector field. In an affine chart with vector field `X`, the
//! tangency of `F` with its own tangent line at a regular point `p` is read
//! off `D_j = X1 X^j(y) - X2 X^j(x)`: it equals `k` when `D_2..D_k` vanish
//! at `p` and `D_{k+1}` does not.

use std::fmt;

use folia_algebra::factor::irrational_line_part;
use folia_algebra::{
    gcd, gcd_many, linear_homogeneous_factors, rational_roots, squarefree_decomposition, squarefree_part,
    PrimeField, QPoly, QuotientRing, Rationals, Vars, Q,
};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::foliation::{Chart, Foliation};
use crate::points::{eval_at, ProjectivePoint};
use crate::solve::{solve_affine, AffineSolution, QU};

/// Factors with multiplicities. Factors are pairwise coprime, primitive
/// and either rational lines or squarefree forms free of rational lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Divisor {
    pub factors: Vec<(QPoly, u32)>,
}

impl Divisor {
    pub fn empty() -> Self {
        Divisor { factors: Vec::new() }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(p, k)| p.total_degree().unwrap_or(0) * k).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.factors.iter().all(|(_, k)| *k == 1)
    }

    pub fn product(&self) -> QPoly {
        let mut acc = QPoly::q_int(&Vars::xyz(), 1);
        for (p, k) in &self.factors {
            acc = &acc * &p.pow(*k);
        }
        acc
    }

    fn push(&mut self, p: QPoly, k: u32) {
        if !p.is_constant() {
            self.factors.push((p.primitive(), k));
        }
    }

    fn sort(&mut self) {
        self.factors
            .sort_by(|a, b| (a.0.total_degree(), a.0.to_string(), a.1).cmp(&(b.0.total_degree(), b.0.to_string(), b.1)));
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, k)| {
                let base = if p.len() == 1 { p.to_string() } else { format!("({p})") };
                if *k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// The determinant defining `I_F`, made primitive. Zero for foliations
/// of degree 0 or 1 whose leaves are lines.
pub fn inflection_polynomial(f: &Foliation) -> QPoly {
    let v = Vars::xyz();
    let z = f.dual_field();
    let zz: Vec<QPoly> = z.iter().map(|c| f.apply_field(c)).collect();
    let x: Vec<QPoly> = (0..3).map(|i| QPoly::q_var(&v, i)).collect();
    let m = [&x[..], &z[..], &zz[..]];
    let minor = |r: usize, a: usize, b: usize| &(&m[r][a] * &m[r + 1][b]) - &(&m[r][b] * &m[r + 1][a]);
    let det = &(&(&x[0] * &minor(1, 1, 2)) - &(&x[1] * &minor(1, 0, 2))) + &(&x[2] * &minor(1, 0, 1));
    if det.is_zero() {
        det
    } else {
        det.primitive()
    }
}

pub fn inflection_divisor(f: &Foliation) -> Result<Divisor> {
    let p = inflection_polynomial(f);
    if p.is_zero() {
        return Err(Error::Precondition("the inflection divisor is undefined: every leaf is a line".into()));
    }
    let lf = linear_homogeneous_factors(&p);
    let mut div = Divisor::empty();
    for (l, k) in lf.lines {
        div.push(l, k);
    }
    for (s, k) in squarefree_decomposition(&lf.cofactor) {
        div.push(s, k);
    }
    div.sort();
    Ok(div)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub total: Divisor,
    pub invariant: Divisor,
    pub transverse: Divisor,
}

/// Splits `I_F` into its invariant and transverse parts. Inside a
/// squarefree factor `S`, a component `C` is invariant iff it divides
/// `omega ^ dS`, so the invariant part is `gcd(S, omega ^ dS)`; it must be a
/// product of lines.
pub fn decompose_divisor(f: &Foliation) -> Result<Decomposition> {
    let total = inflection_divisor(f)?;
    let mut inv = Divisor::empty();
    let mut tr = Divisor::empty();
    for (s, k) in &total.factors {
        if s.total_degree() == Some(1) {
            if f.is_invariant_curve(s) {
                inv.push(s.clone(), *k);
            } else {
                tr.push(s.clone(), *k);
            }
            continue;
        }
        let w = f.curve_wedge(s);
        let mut all = vec![s.clone()];
        all.extend(w.into_iter().filter(|p| !p.is_zero()));
        let g = gcd_many(&all).unwrap();
        if g.is_constant() {
            tr.push(s.clone(), *k);
            continue;
        }
        let lines = irrational_line_part(&g);
        if lines.total_degree() != g.total_degree() {
            return Err(Error::Internal(format!("invariant component of the inflection divisor is not a union of lines: {g}")));
        }
        inv.push(g.clone(), *k);
        tr.push(s.div_exact(&g).expect("gcd divides"), *k);
    }
    inv.sort();
    tr.sort();
    Ok(Decomposition { total, invariant: inv, transverse: tr })
}

pub fn is_convex(f: &Foliation) -> Result<bool> {
    Ok(decompose_divisor(f)?.transverse.degree() == 0)
}

/// Reduced and transverse inflection divisor.
pub fn u2_membership(f: &Foliation) -> Result<bool> {
    let d = decompose_divisor(f)?;
    Ok(d.invariant.degree() == 0 && d.total.is_reduced())
}

/// Certificate that a form is squarefree over the complex numbers, from
/// its reduction mod 2: for each variable `v` the reduction keeps its
/// degree in `v` and is coprime to its derivative over `F_2(others)[v]`.
/// A repeated factor would make `Res_v(f, df/dv)` vanish, and with it the
/// reduction. `false` means the certificate does not apply.
pub fn squarefree_mod2(f: &QPoly) -> bool {
    let p2 = PrimeField::new(2);
    let Some(g) = f.reduce_mod(&p2) else { return false };
    (0..f.nvars()).filter(|&v| f.involves(v)).all(|v| {
        let dv = g.derivative(v);
        g.degree_in(v) == f.degree_in(v) && !dv.is_zero() && !gcd(&g, &dv).involves(v)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlexOrder {
    /// `Tang(F, T_p F, p)`; 1 at an ordinary point.
    Tang(u32),
    /// The tangent line is invariant.
    Trivial,
}

impl fmt::Display for FlexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlexOrder::Tang(k) => write!(f, "{k}"),
            FlexOrder::Trivial => f.write_str("trivial"),
        }
    }
}

/// The polynomials `D_2 .. D_{d+1}` of a chart.
#[derive(Clone, Debug)]
pub struct FlexSystem {
    pub chart: Chart,
    /// `dets[j - 2] = D_j`.
    pub dets: Vec<QPoly>,
    pub field: (QPoly, QPoly),
}

impl FlexSystem {
    pub fn new(f: &Foliation, chart: Chart) -> Self {
        let (i, j, _) = chart.indices();
        let (x1, x2) = f.affine(chart).vector_field();
        let apply = |h: &QPoly| &(&x1 * &h.derivative(i)) + &(&x2 * &h.derivative(j));
        let mut xs = x1.clone();
        let mut ys = x2.clone();
        let mut dets = Vec::new();
        for _ in 2..=f.degree() + 1 {
            xs = apply(&xs);
            ys = apply(&ys);
            dets.push(&(&x1 * &ys) - &(&x2 * &xs));
        }
        FlexSystem { chart, dets, field: (x1, x2) }
    }

    /// `X(h)` in this chart.
    pub fn apply(&self, h: &QPoly) -> QPoly {
        let (i, j, _) = self.chart.indices();
        &(&self.field.0 * &h.derivative(i)) + &(&self.field.1 * &h.derivative(j))
    }
}

fn regular_part(f: &Foliation, p: &ProjectivePoint) -> Option<ProjectivePoint> {
    let vals: Vec<QU> = f.components().iter().map(|c| p.eval(c)).collect();
    let (_, unit) = p.ring().split_by_vanishing(&vals);
    unit.map(|u| p.restrict(&u))
}

/// Flex orders at a regular point, one per piece of the point on which
/// the order is constant.
pub fn flex_orders(f: &Foliation, p: &ProjectivePoint) -> Result<Vec<(ProjectivePoint, FlexOrder)>> {
    let vals: Vec<QU> = f.components().iter().map(|c| p.eval(c)).collect();
    if let (Some(_), _) = p.ring().split_by_vanishing(&vals) {
        return Err(Error::SingularPoint);
    }
    let sys = FlexSystem::new(f, Chart::from_index(p.chart_index()));
    let mut out = Vec::new();
    let mut work = vec![(p.clone(), 0usize)];
    while let Some((q, idx)) = work.pop() {
        if idx == sys.dets.len() {
            out.push((q, FlexOrder::Trivial));
            continue;
        }
        let v = q.eval(&sys.dets[idx]);
        let (zero, unit) = q.ring().split_by_vanishing(&[v]);
        if let Some(u) = unit {
            out.push((q.restrict(&u), FlexOrder::Tang(idx as u32 + 1)));
        }
        if let Some(z) = zero {
            work.push((q.restrict(&z), idx + 1));
        }
    }
    Ok(out)
}

/// Flex order at a point where it is uniform (for instance a rational one).
pub fn flex_order(f: &Foliation, p: &ProjectivePoint) -> Result<FlexOrder> {
    let mut v = flex_orders(f, p)?;
    if v.len() != 1 {
        return Err(Error::Precondition("the flex order differs between conjugates".into()));
    }
    Ok(v.pop().unwrap().1)
}

#[derive(Clone, Debug)]
pub enum Sigma2 {
    /// A point with `Tang(F, T_p F, p) = d`.
    Found(ProjectivePoint),
    /// No such point. With `exhaustive` every solution of the elimination
    /// was examined, which proves absence; otherwise the search was
    /// inconclusive.
    NotFound { exhaustive: bool },
}

impl Sigma2 {
    pub fn member(&self) -> bool {
        matches!(self, Sigma2::Found(_))
    }
}

/// Searches for transverse flexes of maximal order `d - 1`, i.e. regular
/// points with `D_2 = .. = D_d = 0 != D_{d+1}`.
pub fn sigma2_membership(f: &Foliation) -> Result<Sigma2> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::Precondition("degree at least 2 is required".into()));
    }
    let is_witness = |p: &ProjectivePoint| -> Result<Option<ProjectivePoint>> {
        let Some(p) = regular_part(f, p) else { return Ok(None) };
        Ok(flex_orders(f, &p)?.into_iter().find(|(_, o)| *o == FlexOrder::Tang(d)).map(|(q, _)| q))
    };
    let mut exhaustive = true;

    // affine part z = 1
    let sys = FlexSystem::new(f, Chart::Z);
    let eqs: Vec<QPoly> = sys.dets[..(d - 1) as usize].to_vec();

    // small integer points first; elimination gets expensive quickly
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            let pt = [Q::from_integer(a.into()), Q::from_integer(b.into()), Q::one()];
            if eqs.iter().all(|e| e.evaluate(&pt).is_zero()) {
                if let Some(w) = is_witness(&ProjectivePoint::from_i64([a, b, 1])?)? {
                    return Ok(Sigma2::Found(w));
                }
            }
        }
    }
    let nonzero: Vec<QPoly> = eqs.iter().filter(|p| !p.is_zero()).cloned().collect();
    let curve = if nonzero.is_empty() { None } else { gcd_many(&nonzero) };
    match &curve {
        None => {
            // D_2..D_d vanish on the whole chart: every leaf is a line
            return Ok(Sigma2::NotFound { exhaustive: true });
        }
        Some(g) if !g.is_constant() => {
            let (red, _) = squarefree_part(g);
            let inv = gcd(&red, &sys.apply(&red));
            let tr = red.div_exact(&inv).expect("gcd divides");
            if !tr.is_constant() {
                if let Some(w) = point_on_curve(&tr, &is_witness)? {
                    return Ok(Sigma2::Found(w));
                }
                exhaustive = false;
            }
        }
        _ => {}
    }
    let g = curve.unwrap();
    let quotients: Vec<QPoly> = eqs.iter().map(|e| if e.is_zero() { e.clone() } else { e.div_exact(&g).unwrap() }).collect();
    match finite_zeros(&quotients) {
        Some(sols) => {
            for s in sols {
                let coords = [s.x.clone(), s.y.clone(), QU::one(&Rationals)];
                for p in ProjectivePoint::normalized(&s.ring, coords) {
                    if let Some(w) = is_witness(&p)? {
                        return Ok(Sigma2::Found(w));
                    }
                }
            }
        }
        None => exhaustive = false,
    }

    // the line z = 0: points [x : 1 : 0] in the chart y = 1, then [1 : 0 : 0]
    let sys_y = FlexSystem::new(f, Chart::Y);
    let zero = Q::zero();
    let restricted: Vec<QU> = sys_y.dets[..(d - 1) as usize].iter().map(|p| to_uni(&p.eval_var(2, &zero), 0)).collect();
    let nz: Vec<&QU> = restricted.iter().filter(|p| !p.is_zero()).collect();
    if nz.is_empty() {
        if !f.is_invariant_curve(&QPoly::q_var(&Vars::xyz(), 2)) {
            for c in -6i64..=6 {
                let p = ProjectivePoint::from_i64([c, 1, 0])?;
                if let Some(w) = is_witness(&p)? {
                    return Ok(Sigma2::Found(w));
                }
            }
            exhaustive = false;
        }
    } else {
        let mut h = nz[0].clone();
        for p in &nz[1..] {
            h = h.gcd(p);
        }
        if h.deg() > 0 {
            for ring in univariate_rings(&h) {
                let t = ring.generator();
                let coords = [t, QU::one(&Rationals), QU::zero(&Rationals)];
                for p in ProjectivePoint::normalized(&ring, coords) {
                    if let Some(w) = is_witness(&p)? {
                        return Ok(Sigma2::Found(w));
                    }
                }
            }
        }
    }
    if let Some(w) = is_witness(&ProjectivePoint::from_i64([1, 0, 0])?)? {
        return Ok(Sigma2::Found(w));
    }
    Ok(Sigma2::NotFound { exhaustive })
}

fn to_uni(p: &QPoly, v: usize) -> QU {
    let mut acc = QU::zero(&Rationals);
    for (m, c) in p.terms() {
        acc = acc.add(&QU::monomial(&Rationals, m.exps()[v] as usize, c.clone()));
    }
    acc
}

/// Quotient rings for the distinct roots of `h`: one per rational root and
/// one for the rest.
fn univariate_rings(h: &QU) -> Vec<QuotientRing> {
    let sf = h.div_rem(&h.gcd(&h.derivative())).0.monic();
    let mut rest = sf.clone();
    let mut out = Vec::new();
    for (r, _) in rational_roots(&sf) {
        let lin = QU::new(&Rationals, vec![-r, Q::from_integer(1.into())]);
        rest = rest.div_rem(&lin).0;
        out.push(QuotientRing::new(lin).expect("linear"));
    }
    if rest.deg() > 0 {
        out.push(QuotientRing::new(rest.monic()).expect("squarefree"));
    }
    out
}

/// Tries points of the affine curve `c = 0` on the lines `x = a`.
fn point_on_curve<W>(c: &QPoly, is_witness: &W) -> Result<Option<ProjectivePoint>>
where
    W: Fn(&ProjectivePoint) -> Result<Option<ProjectivePoint>>,
{
    for a in [0i64, 1, -1, 2, -2, 3, -3, 5, 7, -7] {
        let aq = Q::from_integer(a.into());
        let fibre = to_uni(&c.eval_var(0, &aq), 1);
        let rings = if fibre.is_zero() {
            // the line x = a is a component
            (-3i64..=3)
                .map(|b| QuotientRing::new(QU::new(&Rationals, vec![Q::from_integer((-b).into()), Q::from_integer(1.into())])).unwrap())
                .collect()
        } else if fibre.deg() == 0 {
            continue;
        } else {
            univariate_rings(&fibre)
        };
        for ring in rings {
            let coords = [ring.from_rational(&aq), ring.generator(), QU::one(&Rationals)];
            for p in ProjectivePoint::normalized(&ring, coords) {
                if let Some(w) = is_witness(&p)? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Common zeros of affine polynomials (variables 0 and 1) whose gcd is
/// constant; zero polynomials are ignored. `None` when elimination fails.
pub fn finite_zeros(polys: &[QPoly]) -> Option<Vec<AffineSolution>> {
    let ps: Vec<QPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    match ps.len() {
        0 => None,
        1 if ps[0].is_constant() => Some(Vec::new()),
        1 => None,
        _ => {
            let h = gcd(&ps[0], &ps[1]);
            if h.is_constant() {
                let sols = solve_affine(&ps[0], &ps[1])?;
                Some(sols.into_iter().flat_map(|s| filter(s, &ps[2..])).collect())
            } else {
                let mut first = vec![h.clone()];
                first.extend(ps[2..].iter().cloned());
                let mut out = finite_zeros(&first)?;
                let mut second = vec![ps[0].div_exact(&h).unwrap(), ps[1].div_exact(&h).unwrap()];
                second.extend(ps[2..].iter().cloned());
                out.extend(finite_zeros(&second)?);
                Some(out)
            }
        }
    }
}

/// Pieces of a solution on which every polynomial in `rest` vanishes.
fn filter(s: AffineSolution, rest: &[QPoly]) -> Vec<AffineSolution> {
    let coords = [s.x.clone(), s.y.clone(), QU::one(&Rationals)];
    let vals: Vec<QU> = rest.iter().map(|p| eval_at(&s.ring, p, &coords)).collect();
    match s.ring.split_by_vanishing(&vals) {
        (Some(z), _) => vec![AffineSolution { x: z.reduce(&s.x), y: z.reduce(&s.y), ring: z, mult: s.mult }],
        (None, _) => Vec::new(),
    }
}
