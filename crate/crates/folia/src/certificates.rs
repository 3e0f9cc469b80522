//! Coordinates of `F(d)` in `P^(d^2+4d+2)`, the stored certificate
//! polynomials for `d = 3, 4, 5`, and the cubic ansatz fitted for `d >= 6`.
//!
//! A foliation `A alpha + B beta + C gamma` (with `alpha = y dz - z dy`,
//! `beta = z dx - x dz`, `gamma = x dy - y dx`) is the point whose odd
//! coordinates are the coefficients of `A` and even ones those of `B`,
//! block by block in the power of `z` and by decreasing power of `x`
//! inside a block, followed by the coefficients of `C(x, y)`.

use std::collections::BTreeMap;
use std::fmt;

use folia_algebra::parse::parse_definitions;
use folia_algebra::{ExactMatrix, Monomial, QPoly, Rationals, Vars, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::{corpus, inflection, Error, Foliation, ProjectiveMap, Result};

/// Number of coordinates, `d^2 + 4d + 3`.
pub fn xi_len(d: u32) -> usize {
    (d * d + 4 * d + 3) as usize
}

/// Exponents `(x, y, z)` of coordinate `i` (0-based) and whether it
/// belongs to `A` (0), `B` (1) or `C` (2).
pub fn xi_layout(d: u32) -> Vec<(usize, [u32; 3])> {
    let mut out = Vec::with_capacity(xi_len(d));
    for k in 0..=d {
        for i in 0..=d - k {
            let m = [d - k - i, i, k];
            out.push((0, m));
            out.push((1, m));
        }
    }
    for i in 0..=d {
        out.push((2, [d - i, i, 0]));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiPoint {
    pub degree: u32,
    /// Primitive integer coordinates, first nonzero one positive.
    pub coords: Vec<Q>,
}

impl XiPoint {
    pub fn new(degree: u32, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != xi_len(degree) {
            return Err(Error::Precondition(format!("expected {} coordinates", xi_len(degree))));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(XiPoint { degree, coords: primitive(coords) })
    }

    /// 1-based access, as coordinates are usually numbered.
    pub fn get(&self, i: usize) -> &Q {
        &self.coords[i - 1]
    }
}

impl fmt::Display for XiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(folia_algebra::ring::rational_to_string).collect();
        write!(f, "[{}]", s.join(":"))
    }
}

fn primitive(mut v: Vec<Q>) -> Vec<Q> {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    for (c, n) in v.iter_mut().zip(ints) {
        *c = Q::from_integer(n / &g * &sign);
    }
    v
}

/// `(A, B, C)` of homogeneous components over `x, y, z` and possibly
/// further parameters, which must come after `x, y, z`.
fn abc_of(comps: &[QPoly; 3]) -> Result<[QPoly; 3]> {
    let v = comps[0].vars().clone();
    let (x, y, z) = (QPoly::q_var(&v, 0), QPoly::q_var(&v, 1), QPoly::q_var(&v, 2));
    let zero = Q::zero();
    let c = comps[1].eval_var(2, &zero).div_exact(&x).ok_or_else(|| Error::Internal("b(x, y, 0) not divisible by x".into()))?;
    let b = (&comps[0] + &(&c * &y)).div_exact(&z).ok_or_else(|| Error::Internal("a + C y not divisible by z".into()))?;
    let a = (&(&c * &x) - &comps[1]).div_exact(&z).ok_or_else(|| Error::Internal("C x - b not divisible by z".into()))?;
    Ok([a, b, c])
}

/// Coordinates as polynomials in the parameters (variables after `x, y, z`).
pub fn xi_polys(comps: &[QPoly; 3], d: u32) -> Result<Vec<QPoly>> {
    let abc = abc_of(comps)?;
    let v = comps[0].vars().clone();
    let params = Vars::new(&v.names()[3..]);
    let mut table: Vec<BTreeMap<[u32; 3], QPoly>> = vec![BTreeMap::new(); 3];
    for (t, p) in abc.iter().enumerate() {
        for (m, c) in p.terms() {
            let e = m.exps();
            let key = [e[0], e[1], e[2]];
            let rest = QPoly::from_terms(&Rationals, &params, [(Monomial::new(e[3..].to_vec()), c.clone())]);
            let slot = table[t].entry(key).or_insert_with(|| QPoly::q_zero(&params));
            *slot = &*slot + &rest;
        }
    }
    Ok(xi_layout(d)
        .into_iter()
        .map(|(t, m)| table[t].get(&m).cloned().unwrap_or_else(|| QPoly::q_zero(&params)))
        .collect())
}

pub fn to_xi(f: &Foliation) -> Result<XiPoint> {
    let d = f.degree();
    if d < 1 {
        return Err(Error::Precondition("degree at least 1 is required".into()));
    }
    let polys = xi_polys(f.components(), d)?;
    XiPoint::new(d, polys.iter().map(|p| p.constant_term()).collect())
}

pub fn from_xi(p: &XiPoint) -> Result<Foliation> {
    let v = Vars::xyz();
    let mut abc = [QPoly::q_zero(&v), QPoly::q_zero(&v), QPoly::q_zero(&v)];
    for ((t, m), c) in xi_layout(p.degree).into_iter().zip(&p.coords) {
        abc[t].add_term(Monomial::new(m.to_vec()), c.clone());
    }
    Foliation::from_abc(&abc[0], &abc[1], &abc[2])
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificatePoly {
    pub name: String,
    /// Degree of the foliations it applies to.
    pub foliation_degree: u32,
    pub poly: QPoly,
}

impl CertificatePoly {
    pub fn eval(&self, p: &XiPoint) -> Result<Q> {
        if p.degree != self.foliation_degree {
            return Err(Error::Precondition(format!("{} applies to degree {}", self.name, self.foliation_degree)));
        }
        Ok(self.poly.evaluate(&p.coords))
    }

    /// Canonical text: the expanded polynomial in the form grammar.
    pub fn canonical_text(&self) -> String {
        self.poly.to_string()
    }
}

const P3_SOURCE: &str = include_str!("../data/p3.txt");
const P4_SOURCE: &str = include_str!("../data/p4.txt");
const P5_SOURCE: &str = include_str!("../data/p5.txt");

/// The stored source text for degree `d`.
pub fn certificate_source(d: u32) -> Option<&'static str> {
    match d {
        3 => Some(P3_SOURCE),
        4 => Some(P4_SOURCE),
        5 => Some(P5_SOURCE),
        _ => None,
    }
}

/// Hex SHA-256 of the stored source text.
pub fn source_checksum(d: u32) -> Option<String> {
    let digest = Sha256::digest(certificate_source(d)?.as_bytes());
    Some(digest.iter().map(|b| format!("{b:02x}")).collect())
}

pub fn xi_vars(d: u32) -> Vars {
    let names: Vec<String> = (1..=xi_len(d)).map(|i| format!("x{i}")).collect();
    Vars::new(&names)
}

/// Parses a certificate file: `name = expr;` definitions, `#` comments.
pub fn parse_certificate(name: &str, d: u32, text: &str) -> Result<CertificatePoly> {
    let body: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n");
    let defs = parse_definitions(&body, &xi_vars(d)).map_err(|e| Error::Parse(e.to_string()))?;
    let (_, poly) = defs.into_iter().last().ok_or_else(|| Error::Parse("no definitions".into()))?;
    Ok(CertificatePoly { name: name.to_string(), foliation_degree: d, poly })
}

/// `P_3`, `P_4` or `P_5`.
pub fn stored_certificate(d: u32) -> Result<CertificatePoly> {
    let src = certificate_source(d).ok_or_else(|| Error::Precondition("stored certificates exist for d = 3, 4, 5".into()))?;
    parse_certificate(&format!("P{d}"), d, src)
}

/// `F_2^d`, i.e. `[0:1:0:...:0:1]`.
pub fn f2_point(d: u32) -> XiPoint {
    to_xi(&corpus::f2(d)).expect("valid")
}

pub fn sampler(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer matrix with entries in `[-9, 9]`, redrawn until invertible.
pub fn random_map(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-9..=9)));
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 0 {
            return m;
        }
    }
}

/// Nonzero rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
pub fn random_lambda(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return Q::new(n.into(), rng.gen_range(1i64..=9).into());
        }
    }
}

/// `to_xi(phi^* F_0^d(lambda))`.
pub fn orbit_sample(d: u32, lambda: &Q, m: [[i64; 3]; 3]) -> Result<XiPoint> {
    to_xi(&corpus::f0(d, lambda.clone()).pullback(&ProjectiveMap::from_i64(m))?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub name: String,
    pub lambda: Q,
    pub seed: u64,
    pub samples: usize,
    pub zeros: usize,
    /// First sample with a nonzero value: the map and the value.
    pub failure: Option<([[i64; 3]; 3], Q)>,
    pub f2_value: Q,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.zeros == self.samples && !self.f2_value.is_zero()
    }
}

/// Evaluates the certificate at `samples` random points of the orbit of
/// `F_0^d(lambda)` and at `F_2^d`.
pub fn verify_certificate(pd: &CertificatePoly, lambda: &Q, samples: usize, seed: u64) -> Result<VerifyReport> {
    let d = pd.foliation_degree;
    if lambda.is_zero() {
        return Err(Error::Precondition("lambda must be nonzero".into()));
    }
    let mut rng = sampler(seed);
    let mut zeros = 0;
    let mut failure = None;
    for _ in 0..samples {
        let m = random_map(&mut rng);
        let v = pd.eval(&orbit_sample(d, lambda, m)?)?;
        if v.is_zero() {
            zeros += 1;
        } else if failure.is_none() {
            failure = Some((m, v));
        }
    }
    let f2_value = pd.eval(&f2_point(d))?;
    Ok(VerifyReport { name: pd.name.clone(), lambda: lambda.clone(), seed, samples, zeros, failure, f2_value })
}

/// Symbolic check: `lambda` and the map entries are polynomials in
/// parameters (names other than `x, y, z`). `true` when the certificate
/// vanishes identically on the pulled-back family.
pub fn verify_symbolic(pd: &CertificatePoly, lambda: &QPoly, map: &ProjectiveMap) -> Result<bool> {
    let d = pd.foliation_degree;
    let mut names: Vec<String> = map.params().names().to_vec();
    for n in lambda.vars().names() {
        if !["x", "y", "z"].contains(&n.as_str()) && !names.contains(n) {
            names.push(n.clone());
        }
    }
    let all = Vars::xyz().extended(&names);
    let var = |i| QPoly::q_var(&all, i);
    let (x, y, z) = (var(0), var(1), var(2));
    let l = lambda.with_vars(&all);
    let one = QPoly::q_int(&all, 1);
    let zd1 = z.pow(d - 1);
    // F_0^d(lambda) over x, y, z and the parameters
    let comps = [
        -&(&(&l * &y) * &z.pow(d)),
        &z * &(&(&x * &zd1) + &y.pow(d)),
        &y * &(&(&(&(&l - &one) * &x) * &zd1) - &y.pow(d)),
    ];
    let m: Vec<Vec<QPoly>> = (0..3).map(|i| (0..3).map(|j| map.entry(i, j).with_vars(&all)).collect()).collect();
    let mut images: Vec<QPoly> = (0..all.len()).map(var).collect();
    for (i, img) in images.iter_mut().take(3).enumerate() {
        *img = &(&(&m[i][0] * &x) + &(&m[i][1] * &y)) + &(&m[i][2] * &z);
    }
    let composed: Vec<QPoly> = comps.iter().map(|p| p.compose(&images)).collect();
    let pulled: [QPoly; 3] = std::array::from_fn(|j| {
        let mut acc = QPoly::q_zero(&all);
        for (i, c) in composed.iter().enumerate() {
            acc = &acc + &(c * &m[i][j]);
        }
        acc
    });
    let xi = xi_polys(&pulled, d)?;
    Ok(pd.poly.compose(&xi).is_zero())
}

/// Monomial `x_i x_j x_k` (1-based) of the cubic ansatz with its label.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzTerm {
    pub label: String,
    pub index: [usize; 3],
}

/// The cubic ansatz for `Q_d`: the alpha, beta, delta, gamma terms and the
/// entries `a_{r,j}`, `b_{r,j}` of the band matrix `M`.
pub fn qd_ansatz(d: u32) -> Vec<AnsatzTerm> {
    let d = d as usize;
    let n = d * d + 4 * d + 3;
    let c0 = d * d + 3 * d + 3;
    let mut t = Vec::new();
    let mut push = |label: String, index: [usize; 3]| t.push(AnsatzTerm { label, index });
    for i in 1..d {
        push(format!("alpha_{i}"), [c0, 2 * d + 2 * i + 1, d * d + 4 * d + 2 - i]);
    }
    for i in 0..5 {
        push(format!("beta_{i}"), [c0, 2 * d + 2 * i + 4, d * d + 4 * d + 2 - i]);
    }
    push("delta_0".into(), [c0 + 1, 2 * d + 4, d * d + 4 * d + 1]);
    push("delta_1".into(), [c0 + 1, 2 * d + 6, d * d + 4 * d]);
    for i in 1..d.saturating_sub(2) {
        push(format!("gamma_{i}"), [c0 + 1, 2 * d + 2 * i + 1, d * d + 4 * d + 1 - i]);
    }
    // (x_1 .. x_{d+1}) M (x_n, x_{n-1}, .., x_{n-d})^T
    let col = |j: usize| n + 1 - j;
    for r in 1..=d + 1 {
        if r % 2 == 1 {
            let k = (r + 1) / 2;
            for j in (2 * k).min(d + 1) + 1..=d + 1 {
                push(format!("a_{r},{j}"), [r, 2 * j - 2 * k - 3, col(j)]);
                push(format!("b_{r},{j}"), [r, 2 * j - 2 * k, col(j)]);
            }
        } else {
            let k = r / 2;
            if 2 * k - 1 <= d + 1 {
                push(format!("b_{r},{}", 2 * k - 1), [r, 2 * k, col(2 * k - 1)]);
            }
            for j in 2 * k..=d + 1 {
                push(format!("a_{r},{j}"), [r, 2 * j - 2 * k - 1, col(j)]);
                push(format!("b_{r},{j}"), [r, 2 * j - 2 * k + 2, col(j)]);
            }
        }
    }
    t
}

fn ansatz_row(terms: &[AnsatzTerm], p: &XiPoint) -> Vec<Q> {
    terms.iter().map(|t| p.get(t.index[0]) * p.get(t.index[1]) * p.get(t.index[2])).collect()
}

fn ansatz_poly(terms: &[AnsatzTerm], coeffs: &[Q], d: u32) -> QPoly {
    let v = xi_vars(d);
    let mut p = QPoly::q_zero(&v);
    for (t, c) in terms.iter().zip(coeffs) {
        let mut e = vec![0u32; v.len()];
        for i in t.index {
            e[i - 1] += 1;
        }
        p.add_term(Monomial::new(e), c.clone());
    }
    p
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    pub degree: u32,
    pub seed: u64,
    pub unknowns: usize,
    pub training_samples: usize,
    /// Dimension of the solution space of the training system.
    pub nullity: usize,
    /// Nonzero coefficients, normalized to `b_{2,1} = 1`.
    pub coefficients: Vec<(String, Q)>,
    pub certificate: CertificatePoly,
    pub held_out: usize,
    pub f2_value: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitOutcome {
    Fitted(Box<FitReport>),
    /// No admissible solution within the sample budget. This does not
    /// refute the existence of `Q_d`.
    Infeasible { reason: String, training_samples: usize },
}

/// Fits the cubic ansatz to random orbit points of `F_0^d(lambda)` for
/// random `lambda`, then checks `held_out` fresh points.
pub fn fit_qd(d: u32, budget: usize, held_out: usize, seed: u64) -> Result<FitOutcome> {
    if d < 6 {
        return Err(Error::Precondition("the cubic ansatz is for d >= 6".into()));
    }
    let terms = qd_ansatz(d);
    let b21 = terms.iter().position(|t| t.label == "b_2,1").expect("b_2,1 is in the ansatz");
    let mut rng = sampler(seed);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut target = terms.len() + 8;
    loop {
        let want = target.min(budget);
        while rows.len() < want {
            let lam = random_lambda(&mut rng);
            let m = random_map(&mut rng);
            rows.push(ansatz_row(&terms, &orbit_sample(d, &lam, m)?));
        }
        let basis = ExactMatrix::from_rows(rows.clone()).nullspace_fast();
        let nullity = basis.len();
        let Some(v) = basis.iter().find(|v| !v[b21].is_zero()) else {
            return Ok(FitOutcome::Infeasible {
                reason: if nullity == 0 { "the ansatz has no solution".into() } else { "every solution has b_2,1 = 0".into() },
                training_samples: rows.len(),
            });
        };
        let scale = v[b21].clone();
        let coeffs: Vec<Q> = v.iter().map(|c| c / &scale).collect();
        let cert = CertificatePoly { name: format!("Q{d}"), foliation_degree: d, poly: ansatz_poly(&terms, &coeffs, d) };
        // held-out samples come from the same stream, after the training ones
        let mut bad = None;
        for _ in 0..held_out {
            let lam = random_lambda(&mut rng);
            let m = random_map(&mut rng);
            let p = orbit_sample(d, &lam, m)?;
            if !cert.eval(&p)?.is_zero() {
                bad = Some(ansatz_row(&terms, &p));
                break;
            }
        }
        match bad {
            None => {
                let f2_value = cert.eval(&f2_point(d))?;
                let coefficients =
                    terms.iter().zip(&coeffs).filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t.label.clone(), c.clone())).collect();
                return Ok(FitOutcome::Fitted(Box::new(FitReport {
                    degree: d,
                    seed,
                    unknowns: terms.len(),
                    training_samples: rows.len(),
                    nullity,
                    coefficients,
                    certificate: cert,
                    held_out,
                    f2_value,
                })));
            }
            Some(row) if rows.len() < budget => {
                rows.push(row);
                target = rows.len() + 8;
            }
            Some(_) => {
                return Ok(FitOutcome::Infeasible {
                    reason: "a held-out sample falsified every fit within the budget".into(),
                    training_samples: rows.len(),
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Closed,
    NotClosed,
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosureVerdict {
    pub degree: u32,
    pub lambda: Q,
    pub closure: Closure,
    pub reason: String,
    /// The verdict rests on a fitted certificate checked on samples only.
    pub empirical: bool,
}

/// Whether the orbit of `F_0^d(lambda)` is closed in `F(d)`. The orbit is
/// closed exactly when `F_0^d(lambda)` does not degenerate onto `F_2^d`.
pub fn closure_conclusion(lambda: &Q, d: u32, samples: usize, seed: u64) -> Result<ClosureVerdict> {
    if lambda.is_zero() {
        return Err(Error::Precondition("lambda must be nonzero".into()));
    }
    if d < 2 {
        return Err(Error::Precondition("degree at least 2 is required".into()));
    }
    let verdict = |closure, reason: String, empirical| ClosureVerdict { degree: d, lambda: lambda.clone(), closure, reason, empirical };
    let f = corpus::f0(d, lambda.clone());
    if lambda.is_one() {
        // x dy - y dx + y^d dy is sent onto F_1^d by [x - z : x : y]
        let m = ProjectiveMap::from_i64([[1, 0, -1], [1, 0, 0], [0, 1, 0]]);
        if f.pullback(&m)? != corpus::f1(d) {
            return Err(Error::Internal("F_0(1) is not conjugate to F_1 by the expected map".into()));
        }
        return Ok(verdict(Closure::Closed, "conjugate to F1, whose orbit is closed".into(), false));
    }
    let lambda0 = Q::new((-1).into(), (d as i64 - 1).into());
    if d >= 3 && *lambda == lambda0 {
        let tr = inflection::decompose_divisor(&f)?.transverse.degree();
        if tr + 1 < d {
            return Ok(verdict(Closure::Closed, format!("deg I_tr = {tr} < d - 1, so no degeneration onto F2"), false));
        }
    }
    if (3..=5).contains(&d) {
        let p = stored_certificate(d)?;
        let r = verify_certificate(&p, lambda, samples, seed)?;
        if let Some((m, v)) = &r.failure {
            return Ok(verdict(Closure::Undecided, format!("{} is nonzero ({v}) at the orbit point of {m:?}", p.name), false));
        }
        let reason = format!("{} vanishes on {} orbit samples and equals {} at F2", p.name, r.samples, r.f2_value);
        return Ok(verdict(Closure::Closed, reason, false));
    }
    if d == 2 {
        if let crate::degeneration::Outcome::Certified(c) = crate::degeneration::certify_f2_degeneration(&f)? {
            return Ok(verdict(Closure::NotClosed, format!("degenerates onto F2 ({})", c.witness), false));
        }
        return Ok(verdict(Closure::Undecided, "no degeneration certificate onto F2 was found".into(), false));
    }
    match fit_qd(d, 4 * qd_ansatz(d).len(), samples, seed)? {
        FitOutcome::Fitted(r) => {
            let mut rng = sampler(seed.wrapping_add(1));
            for _ in 0..samples {
                let m = random_map(&mut rng);
                if !r.certificate.eval(&orbit_sample(d, lambda, m)?)?.is_zero() {
                    return Ok(verdict(Closure::Undecided, format!("fitted Q{d} does not vanish on this orbit"), true));
                }
            }
            let reason = format!("fitted Q{d} vanishes on {samples} samples of this orbit and equals {} at F2", r.f2_value);
            Ok(verdict(Closure::Closed, reason, true))
        }
        FitOutcome::Infeasible { reason, .. } => Ok(verdict(Closure::Undecided, format!("no Q{d} fitted: {reason}"), true)),
    }
}
