//! Epsilon families, their limits, and constructive degeneration
//! certificates onto `F1`, `F2` and `H12`.
//!
//! A certificate is a chain `source -> normalization -> epsilon family ->
//! limit -> conjugation`, each step a projective map, and replaying it must
//! land exactly on the canonical form of the target.

use std::fmt;

use folia_algebra::{linear_homogeneous_factors, QPoly, Vars, Q};
use num_traits::{One, Zero};

use crate::inflection::{decompose_divisor, sigma2_membership, Sigma2};
use crate::local::classify;
use crate::{corpus, Chart, Error, Foliation, ProjectiveMap, ProjectivePoint, Result};

pub const EPS: &str = "eps";

/// `phi_eps^* Omega` divided by `eps^k`, over `x, y, z, eps`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonFamily {
    pub comps: [QPoly; 3],
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonLimit {
    pub family: EpsilonFamily,
    pub limit: Foliation,
}

/// `diag(c_0 eps^e_0, c_1 eps^e_1, c_2 eps^e_2)`.
pub fn scaling_family(exps: [u32; 3], coeffs: [Q; 3]) -> ProjectiveMap {
    let v = Vars::new(&[EPS]);
    let e = QPoly::q_var(&v, 0);
    let z = QPoly::q_zero(&v);
    let entry = |i: usize| e.pow(exps[i]).scale(&coeffs[i]);
    ProjectiveMap::symbolic(
        &v,
        [[entry(0), z.clone(), z.clone()], [z.clone(), entry(1), z.clone()], [z.clone(), z, entry(2)]],
    )
}

/// Limit of `eps^-k phi_eps^* omega` as `eps -> 0`, with `k` the
/// `eps`-valuation of the pullback. A limit with a common factor is an
/// error naming the factor.
pub fn limit_family(f: &Foliation, phi: &ProjectiveMap) -> Result<EpsilonLimit> {
    if phi.params().names().iter().any(|n| n != EPS) {
        return Err(Error::Precondition(format!("family may only depend on {EPS}")));
    }
    let comps = f.pullback_symbolic(phi);
    let target = phi.target_vars();
    let e = target.index(EPS);
    let k = match e {
        None => 0,
        Some(e) => comps.iter().flat_map(|p| p.terms().map(move |(m, _)| m.exps()[e])).min().ok_or(Error::SingularMap)?,
    };
    let scaled: [QPoly; 3] = std::array::from_fn(|i| match e {
        None => comps[i].clone(),
        Some(e) => QPoly::from_terms(
            &folia_algebra::Rationals,
            &target,
            comps[i].terms().map(|(m, c)| {
                let mut ex = m.exps().to_vec();
                ex[e] -= k;
                (folia_algebra::Monomial::new(ex), c.clone())
            }),
        ),
    });
    let xyz = Vars::xyz();
    let at_zero: Vec<QPoly> = scaled
        .iter()
        .map(|p| match e {
            None => p.with_vars(&xyz),
            Some(e) => p.eval_var(e, &Q::zero()).with_vars(&xyz),
        })
        .collect();
    let [a, b, c]: [QPoly; 3] = at_zero.try_into().unwrap();
    let (limit, factor) = Foliation::saturate(a, b, c)?;
    if !factor.is_constant() {
        return Err(Error::DegenerateLimit { factor: factor.to_string() });
    }
    Ok(EpsilonLimit { family: EpsilonFamily { comps: scaled, k }, limit })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    F1,
    F2,
    H12,
}

impl Target {
    pub fn canonical(&self, d: u32) -> Foliation {
        match self {
            Target::F1 => corpus::f1(d),
            Target::F2 => corpus::f2(d),
            Target::H12 => corpus::h12(d),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Target::F1 => "f1",
            Target::F2 => "f2",
            Target::H12 => "h12",
        }
    }
}

/// What the normalization is built from.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Quasi-radial singularity of maximal order and a line of maximal
    /// tangency through it.
    QuasiRadial { point: ProjectivePoint, line: QPoly },
    /// Transverse flex of maximal order and its tangent line.
    Flex { point: ProjectivePoint, line: QPoly },
    /// Invariant line sent to infinity.
    InvariantLine { line: QPoly },
    /// One of the two normal forms that degenerate without the standard
    /// witness.
    NormalForm(&'static str),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::QuasiRadial { point, line } => write!(f, "quasi-radial point {point} with line {line} = 0"),
            Witness::Flex { point, line } => write!(f, "flex {point} with tangent line {line} = 0"),
            Witness::InvariantLine { line } => write!(f, "invariant line {line} = 0"),
            Witness::NormalForm(n) => write!(f, "normal form {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationCertificate {
    pub source: Foliation,
    pub target: Target,
    pub witness: Witness,
    pub normalization: ProjectiveMap,
    pub family: ProjectiveMap,
    pub k: u32,
    pub limit: Foliation,
    pub conjugation: ProjectiveMap,
    /// Further certificates starting from the target (used by `H12`).
    pub chained: Vec<DegenerationCertificate>,
}

impl DegenerationCertificate {
    /// Recomputes every step and compares with the recorded data and the
    /// canonical target.
    pub fn replay(&self) -> Result<bool> {
        let g = self.source.pullback(&self.normalization)?;
        let lim = limit_family(&g, &self.family)?;
        if lim.limit != self.limit || lim.family.k != self.k {
            return Ok(false);
        }
        let end = lim.limit.pullback(&self.conjugation)?;
        if end != self.target.canonical(self.source.degree()) {
            return Ok(false);
        }
        for c in &self.chained {
            if c.source != end || !c.replay()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Why no certificate was produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Absence {
    /// A necessary condition fails, so there is no degeneration.
    Obstruction(String),
    /// The sufficient condition fails; degeneration is not excluded.
    NoWitness(String),
    /// The search could not decide.
    Inconclusive(String),
}

impl Absence {
    pub fn reason(&self) -> &str {
        match self {
            Absence::Obstruction(s) | Absence::NoWitness(s) | Absence::Inconclusive(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Certified(Box<DegenerationCertificate>),
    Absent(Absence),
}

impl Outcome {
    pub fn certificate(&self) -> Option<&DegenerationCertificate> {
        match self {
            Outcome::Certified(c) => Some(c),
            Outcome::Absent(_) => None,
        }
    }
}

fn line_coeffs(l: &QPoly) -> [Q; 3] {
    let l = l.with_vars(&Vars::xyz());
    [l.coeff_of(&[1, 0, 0]), l.coeff_of(&[0, 1, 0]), l.coeff_of(&[0, 0, 1])]
}

fn dot(a: &[Q; 3], b: &[Q; 3]) -> Q {
    (0..3).map(|i| &a[i] * &b[i]).sum()
}

fn cross(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn unit(i: usize) -> [Q; 3] {
    std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() })
}

fn from_columns(c: [[Q; 3]; 3]) -> ProjectiveMap {
    ProjectiveMap::numeric(std::array::from_fn(|i| std::array::from_fn(|j| c[j][i].clone())))
}

/// A map sending `[0:0:1]` to `s` and pulling `l` back to a multiple of `x`.
pub fn point_line_normalization(s: &[Q; 3], l: &QPoly) -> Result<ProjectiveMap> {
    let lc = line_coeffs(l);
    if !dot(&lc, s).is_zero() {
        return Err(Error::NotOnLine);
    }
    let on_line = (0..3)
        .map(|i| cross(&lc, &unit(i)))
        .find(|p| cross(p, s).iter().any(|c| !c.is_zero()))
        .ok_or_else(|| Error::Precondition("degenerate line".into()))?;
    let off = (0..3).map(unit).find(|e| !dot(&lc, e).is_zero()).expect("nonzero line");
    Ok(from_columns([off, on_line, s.clone()]))
}

/// A map pulling `l` back to a multiple of `z`.
pub fn line_to_infinity(l: &QPoly) -> ProjectiveMap {
    let lc = line_coeffs(l);
    let off = (0..3).map(unit).find(|e| !dot(&lc, e).is_zero()).expect("nonzero line");
    let mut on: Vec<[Q; 3]> = Vec::new();
    for i in 0..3 {
        let p = cross(&lc, &unit(i));
        if p.iter().all(|c| c.is_zero()) {
            continue;
        }
        if on.iter().all(|q| cross(q, &p).iter().any(|c| !c.is_zero())) {
            on.push(p);
        }
        if on.len() == 2 {
            break;
        }
    }
    from_columns([on[0].clone(), on[1].clone(), off])
}

fn f1_conjugation(alpha: &Q, gamma: &Q) -> ProjectiveMap {
    let z = Q::zero();
    ProjectiveMap::numeric([
        [alpha.clone(), z.clone(), -gamma.clone()],
        [alpha.clone(), z.clone(), z.clone()],
        [z.clone(), alpha.clone(), z],
    ])
}

fn f2_conjugation(alpha: &Q, beta: &Q) -> ProjectiveMap {
    let z = Q::zero();
    ProjectiveMap::numeric([
        [z.clone(), z.clone(), -beta.clone()],
        [z.clone(), alpha.clone(), z.clone()],
        [alpha.clone(), z.clone(), z],
    ])
}

/// `(alpha, gamma)` when the chart `z = 1` form is
/// `alpha (x dy - y dx) + gamma y^d dy`.
fn read_theta_f1(f: &Foliation, d: u32) -> Option<(Q, Q)> {
    let a = f.affine(Chart::Z);
    let alpha = a.b.coeff_of(&[1, 0, 0]);
    let gamma = a.b.coeff_of(&[0, d, 0]);
    if alpha.is_zero() || gamma.is_zero() {
        return None;
    }
    let v = Vars::xyz();
    let y = QPoly::q_var(&v, 1);
    let expect_a = y.scale(&-alpha.clone());
    let expect_b = &QPoly::q_var(&v, 0).scale(&alpha) + &y.pow(d).scale(&gamma);
    (a.a == expect_a && a.b == expect_b).then_some((alpha, gamma))
}

/// `(alpha, beta)` when the chart `z = 1` form is `alpha dx + beta y^d dy`.
fn read_theta_f2(f: &Foliation, d: u32) -> Option<(Q, Q)> {
    let a = f.affine(Chart::Z);
    let alpha = a.a.constant_term();
    let beta = a.b.coeff_of(&[0, d, 0]);
    if alpha.is_zero() || beta.is_zero() {
        return None;
    }
    let v = Vars::xyz();
    let ok = a.a.is_constant() && a.b == QPoly::q_var(&v, 1).pow(d).scale(&beta);
    ok.then_some((alpha, beta))
}

fn finish(
    source: &Foliation,
    target: Target,
    witness: Witness,
    normalization: ProjectiveMap,
    family: ProjectiveMap,
    conj: impl Fn(&Foliation) -> Option<ProjectiveMap>,
) -> Result<Option<DegenerationCertificate>> {
    let g = source.pullback(&normalization)?;
    let lim = limit_family(&g, &family)?;
    let Some(conjugation) = conj(&lim.limit) else { return Ok(None) };
    let cert = DegenerationCertificate {
        source: source.clone(),
        target,
        witness,
        normalization,
        family,
        k: lim.family.k,
        limit: lim.limit,
        conjugation,
        chained: Vec::new(),
    };
    Ok(cert.replay()?.then_some(cert))
}

fn permutations() -> Vec<ProjectiveMap> {
    let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    perms
        .iter()
        .map(|p| {
            let cols: [[Q; 3]; 3] = std::array::from_fn(|j| unit(p[j]));
            from_columns(cols)
        })
        .collect()
}

/// `P(y)` when the chart `z = 1` form is `c (x dy - y dx) + P(y) dy`
/// (`c = 1` after scaling) with `deg P = d` and `P(0) = 0`.
fn sans_singularite_shape(f: &Foliation, d: u32) -> Option<QPoly> {
    let a = f.affine(Chart::Z);
    let v = Vars::xyz();
    let c = -a.a.coeff_of(&[0, 1, 0]);
    if c.is_zero() || a.a != QPoly::q_var(&v, 1).scale(&-c.clone()) {
        return None;
    }
    let p = (&a.b - &QPoly::q_var(&v, 0).scale(&c)).scale(&c.recip());
    let only_y = !p.involves(0) && !p.involves(2);
    (only_y && p.degree_in(1) == Some(d) && p.constant_term().is_zero()).then_some(p)
}

/// `P(y)` when the chart `z = 1` form is a multiple of `dx + P(y) dy`.
fn sans_inflex_shape(f: &Foliation, d: u32) -> Option<QPoly> {
    let a = f.affine(Chart::Z);
    if !a.a.is_constant() || a.a.is_zero() {
        return None;
    }
    let p = a.b.scale(&a.a.constant_term().recip());
    (!p.involves(0) && !p.involves(2) && p.degree_in(1) == Some(d)).then_some(p)
}

fn bespoke_f1(f: &Foliation, d: u32) -> Result<Option<DegenerationCertificate>> {
    for perm in permutations() {
        let g = f.pullback(&perm)?;
        let Some(p) = sans_singularite_shape(&g, d) else { continue };
        let lead = p.coeff_of(&[0, d, 0]);
        let family = scaling_family([0, d - 1, d], [lead, Q::one(), Q::one()]);
        let conj = |l: &Foliation| read_theta_f1(l, d).map(|(a, c)| f1_conjugation(&a, &c));
        if let Some(c) = finish(f, Target::F1, Witness::NormalForm("x dy - y dx + P(y) dy"), perm, family, conj)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn bespoke_f2(f: &Foliation, d: u32) -> Result<Option<DegenerationCertificate>> {
    for perm in permutations() {
        let g = f.pullback(&perm)?;
        let Some(p) = sans_inflex_shape(&g, d) else { continue };
        let lead = p.coeff_of(&[0, d, 0]);
        let family = scaling_family([0, d, d + 1], [lead, Q::one(), Q::one()]);
        let conj = |l: &Foliation| read_theta_f2(l, d).map(|(a, b)| f2_conjugation(&a, &b));
        if let Some(c) = finish(f, Target::F2, Witness::NormalForm("dx + P(y) dy"), perm, family, conj)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn degree_guard(f: &Foliation) -> Result<u32> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::Precondition("degree at least 2 is required".into()));
    }
    Ok(d)
}

/// Certificate onto `F1` from a quasi-radial singularity of maximal order,
/// or from the normal form `x dy - y dx + P(y) dy`.
pub fn certify_f1_degeneration(f: &Foliation) -> Result<Outcome> {
    let d = degree_guard(f)?;
    let summary = classify(f)?;
    for p in &summary.profiles {
        if !(p.mu_is_one && p.bb_is_four() && p.kappa == Some(d)) {
            continue;
        }
        let (Some(s), Some(line)) = (p.point.rational_coords(), &p.kappa_line) else { continue };
        let normalization = point_line_normalization(&s, line)?;
        let family = scaling_family([d, 1, 0], [Q::one(), Q::one(), Q::one()]);
        let conj = |l: &Foliation| read_theta_f1(l, d).map(|(a, c)| f1_conjugation(&a, &c));
        let witness = Witness::QuasiRadial { point: p.point.clone(), line: line.clone() };
        match finish(f, Target::F1, witness, normalization, family, conj)? {
            Some(c) => return Ok(Outcome::Certified(Box::new(c))),
            None => return Err(Error::Internal(format!("limit at {} is not of the expected shape", p.point))),
        }
    }
    if let Some(c) = bespoke_f1(f, d)? {
        return Ok(Outcome::Certified(Box::new(c)));
    }
    let bb4 = summary.profiles.iter().any(|p| p.mu_is_one && p.bb_is_four());
    if summary.singular.complete && !bb4 {
        // distinct values with the number of points carrying them
        let mut values: Vec<(String, usize)> = Vec::new();
        for p in summary.profiles.iter().filter(|p| p.mu_is_one) {
            let v = p.bb_text().unwrap_or_default();
            match values.iter_mut().find(|(w, _)| *w == v) {
                Some(e) => e.1 += p.point.count(),
                None => values.push((v, p.point.count())),
            }
        }
        let detail = if values.is_empty() {
            "there are none".to_string()
        } else {
            values.iter().map(|(v, n)| format!("BB = {v} at {n} point(s)")).collect::<Vec<_>>().join(", ")
        };
        return Ok(Outcome::Absent(Absence::Obstruction(format!(
            "no non-degenerate singularity with Baum-Bott index 4 ({detail})"
        ))));
    }
    if !summary.singular.complete || summary.profiles.iter().any(|p| p.undecided) {
        return Ok(Outcome::Absent(Absence::Inconclusive(
            "singular points or tangency data not fully decided".into(),
        )));
    }
    Ok(Outcome::Absent(Absence::NoWitness(
        "no quasi-radial singularity of maximal order; degeneration onto F1 is not excluded".into(),
    )))
}

/// Line through `p` along the foliation.
pub fn tangent_line(f: &Foliation, p: &[Q; 3]) -> QPoly {
    let z: Vec<Q> = f.dual_field().iter().map(|c| c.evaluate(p)).collect();
    let l = cross(p, &[z[0].clone(), z[1].clone(), z[2].clone()]);
    let v = Vars::xyz();
    let mut acc = QPoly::q_zero(&v);
    for (i, c) in l.iter().enumerate() {
        acc = &acc + &QPoly::q_var(&v, i).scale(c);
    }
    acc.primitive()
}

/// Certificate onto `F2` from a transverse flex of maximal order, or from
/// the normal form `dx + P(y) dy`.
pub fn certify_f2_degeneration(f: &Foliation) -> Result<Outcome> {
    let d = degree_guard(f)?;
    let dec = decompose_divisor(f)?;
    let tr = dec.transverse.degree();
    if tr + 1 < d {
        return Ok(Outcome::Absent(Absence::Obstruction(format!("deg I_tr = {tr} < d - 1 = {}", d - 1))));
    }
    let search = sigma2_membership(f)?;
    if let Sigma2::Found(p) = &search {
        let Some(s) = p.rational_coords() else {
            return Ok(Outcome::Absent(Absence::Inconclusive(format!("maximal flex found only at the algebraic point {p}"))));
        };
        let line = tangent_line(f, &s);
        let normalization = point_line_normalization(&s, &line)?;
        let family = scaling_family([d + 1, 1, 0], [Q::one(), Q::one(), Q::one()]);
        let conj = |l: &Foliation| read_theta_f2(l, d).map(|(a, b)| f2_conjugation(&a, &b));
        return match finish(f, Target::F2, Witness::Flex { point: p.clone(), line }, normalization, family, conj)? {
            Some(c) => Ok(Outcome::Certified(Box::new(c))),
            None => Err(Error::Internal(format!("limit at {p} is not of the expected shape"))),
        };
    }
    if let Some(c) = bespoke_f2(f, d)? {
        return Ok(Outcome::Certified(Box::new(c)));
    }
    Ok(Outcome::Absent(match search {
        Sigma2::NotFound { exhaustive: true } => {
            Absence::NoWitness("no transverse flex of maximal order; degeneration onto F2 is not excluded".into())
        }
        _ => Absence::Inconclusive("flex search did not finish".into()),
    }))
}

/// Linear change `(X, Y)` of the plane with `A dx + B dy` (homogeneous of
/// degree d in x, y) proportional to `(X^d + Y^d) dX + X^d dY`, where `X`
/// is a multiple of `l1`. Returned as the rows of `(X, Y)` in terms of
/// `(x, y)`.
fn h12_frame(a: &QPoly, b: &QPoly, l1: &[Q; 2], d: u32) -> Option<[[Q; 2]; 2]> {
    // complete l1 to a basis (l1, n) and write everything in (u, w) = (l1, n)
    let n: [Q; 2] = if l1[1].is_zero() { [Q::zero(), Q::one()] } else { [Q::one(), Q::zero()] };
    let det = &l1[0] * &n[1] - &l1[1] * &n[0];
    // x = (n1 u - l1_1 w) / det, y = (-n0 u + l1_0 w) / det
    let v = Vars::xyz();
    let (u, w) = (QPoly::q_var(&v, 0), QPoly::q_var(&v, 1));
    let xs = (&u.scale(&(&n[1] / &det)) - &w.scale(&(&l1[1] / &det)), &w.scale(&(&l1[0] / &det)) - &u.scale(&(&n[0] / &det)));
    let sub = |p: &QPoly| p.compose(&[xs.0.clone(), xs.1.clone(), QPoly::q_var(&v, 2)]);
    let (a2, b2) = (sub(a), sub(b));
    // dx = (n1 du - l1_1 dw)/det, dy = (-n0 du + l1_0 dw)/det
    let e = &a2.scale(&(&n[1] / &det)) - &b2.scale(&(&n[0] / &det));
    let f = &b2.scale(&(&l1[0] / &det)) - &a2.scale(&(&l1[1] / &det));
    // E du + F dw with E = e1 u^d + e2 m^d, F dm-part, m = t u + w
    let top = e.coeff_of(&[0, d, 0]);
    if top.is_zero() {
        return None;
    }
    let t = e.coeff_of(&[1, d - 1, 0]) / (Q::from_integer(d.into()) * &top);
    // in (u, m) coordinates: w = m - t u, dw = dm - t du
    let m_sub = |p: &QPoly| p.compose(&[u.clone(), &w - &u.scale(&t), QPoly::q_var(&v, 2)]);
    let (e3, f3) = (m_sub(&e), m_sub(&f));
    let e_u = &e3 - &f3.scale(&t);
    let (e1, e2, fc) = (e_u.coeff_of(&[d, 0, 0]), e_u.coeff_of(&[0, d, 0]), f3.coeff_of(&[d, 0, 0]));
    let ok = e_u == &u.pow(d).scale(&e1) + &w.pow(d).scale(&e2) && f3 == u.pow(d).scale(&fc);
    if !ok || e1.is_zero() || fc.is_zero() || e2.is_zero() {
        return None;
    }
    // (X, Y) = (u, (fc / e1) m) when e2 e1^(d-1) = fc^d
    let s = &fc / &e1;
    let pow = |q: &Q, k: u32| (0..k).fold(Q::one(), |acc, _| acc * q);
    if &e2 * &pow(&e1, d - 1) != pow(&fc, d) {
        return None;
    }
    // m = t u + w = t l1 + n
    let m = [&t * &l1[0] + &n[0], &t * &l1[1] + &n[1]];
    Some([l1.clone(), [&s * &m[0], &s * &m[1]]])
}

/// Certificate onto `H12`: an invariant line sent to infinity and the top
/// degree part normalized to `(x^d + y^d) dx + x^d dy`, then
/// `(x / eps, y / eps)`. The chained certificates continue onto `F1` and
/// `F2`.
pub fn certify_h12_degeneration(f: &Foliation) -> Result<Outcome> {
    let d = degree_guard(f)?;
    let dec = decompose_divisor(f)?;
    let lines: Vec<QPoly> = dec
        .invariant
        .factors
        .iter()
        .filter(|(c, _)| c.total_degree() == Some(1))
        .map(|(c, _)| c.clone())
        .collect();
    if dec.invariant.degree() == 0 {
        return Ok(Outcome::Absent(Absence::Obstruction("no invariant line".into())));
    }
    for line in &lines {
        let m1 = line_to_infinity(line);
        let g = f.pullback(&m1)?;
        let a = g.affine(Chart::Z);
        // the line at infinity is invariant, so the top part has no radial term
        let (ad, bd) = (a.a.homogeneous_part(d), a.b.homogeneous_part(d));
        let gtop = &(&ad * &QPoly::q_var(&Vars::xyz(), 0)) + &(&bd * &QPoly::q_var(&Vars::xyz(), 1));
        if gtop.is_zero() {
            continue;
        }
        for (l1, _) in linear_homogeneous_factors(&gtop).lines {
            let lc = line_coeffs(&l1);
            if !lc[2].is_zero() {
                continue;
            }
            let Some(frame) = h12_frame(&ad, &bd, &[lc[0].clone(), lc[1].clone()], d) else { continue };
            // new (X, Y) are given in old (x, y); the map sends new to old
            let det = &frame[0][0] * &frame[1][1] - &frame[0][1] * &frame[1][0];
            let inv = [
                [&frame[1][1] / &det, -&frame[0][1] / &det],
                [-&frame[1][0] / &det, &frame[0][0] / &det],
            ];
            let z = Q::zero();
            let m2 = ProjectiveMap::numeric([
                [inv[0][0].clone(), inv[0][1].clone(), z.clone()],
                [inv[1][0].clone(), inv[1][1].clone(), z.clone()],
                [z.clone(), z, Q::one()],
            ]);
            let normalization = m1.then(&m2);
            let family = scaling_family([0, 0, 1], [Q::one(), Q::one(), Q::one()]);
            let target = corpus::h12(d);
            let conj = |l: &Foliation| (*l == target).then(ProjectiveMap::identity);
            let witness = Witness::InvariantLine { line: line.clone() };
            if let Some(mut c) = finish(f, Target::H12, witness, normalization, family, conj)? {
                for next in [certify_f1_degeneration(&target)?, certify_f2_degeneration(&target)?] {
                    match next {
                        Outcome::Certified(n) => c.chained.push(*n),
                        Outcome::Absent(a) => return Err(Error::Internal(format!("H12 chain failed: {}", a.reason()))),
                    }
                }
                return Ok(Outcome::Certified(Box::new(c)));
            }
        }
    }
    Ok(Outcome::Absent(Absence::NoWitness(
        "no rational invariant line with top-degree part of H12 type was found".into(),
    )))
}
