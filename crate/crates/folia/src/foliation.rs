//! Foliations of the projective plane as homogeneous 1-forms.
//!
//! A degree-`d` foliation is stored as `a dx + b dy + c dz` with `a, b, c`
//! homogeneous of degree `d + 1`, `x a + y b + z c = 0` and no common factor.
//! The stored triple is canonical: integer coefficients with joint content 1
//! and the leading term of the first nonzero component positive, so two
//! foliations are equal exactly when their forms are proportional.

use std::fmt;

use folia_algebra::{gcd_many, Monomial, QPoly, Vars, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The three standard affine charts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    Z,
    X,
    Y,
}

impl Chart {
    /// `(i, j, k)`: the affine coordinates are `x_i, x_j` and `x_k = 1`.
    pub fn indices(self) -> (usize, usize, usize) {
        match self {
            Chart::Z => (0, 1, 2),
            Chart::X => (1, 2, 0),
            Chart::Y => (0, 2, 1),
        }
    }

    pub fn from_index(k: usize) -> Chart {
        match k {
            0 => Chart::X,
            1 => Chart::Y,
            _ => Chart::Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::Z => "z=1",
            Chart::X => "x=1",
            Chart::Y => "y=1",
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `A dx_i + B dx_j` in a chart. Polynomials live over `x, y, z` but do not
/// involve the chart's fixed coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm {
    pub chart: Chart,
    pub a: QPoly,
    pub b: QPoly,
}

impl AffineForm {
    pub fn new(chart: Chart, a: QPoly, b: QPoly) -> Self {
        AffineForm { chart, a, b }
    }

    /// The dual vector field `(-B, A)` in the chart coordinates.
    pub fn vector_field(&self) -> (QPoly, QPoly) {
        (-&self.b, self.a.clone())
    }

    pub fn vars(&self) -> (usize, usize) {
        let (i, j, _) = self.chart.indices();
        (i, j)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, _) = self.chart.indices();
        let v = Vars::xyz();
        write!(f, "({})*d{} + ({})*d{} @ {}", self.a, v.name(i), self.b, v.name(j), self.chart)
    }
}

/// Positive rational `c` such that every component divided by `c` has
/// integer coefficients with no common divisor.
fn joint_content(ps: &[&QPoly]) -> Q {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for p in ps {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    if num.is_zero() {
        Q::one()
    } else {
        Q::new(num, den)
    }
}

/// Scales a list of polynomials to the projective normal form described in
/// the module docs.
pub fn normalize_projective(ps: &[QPoly]) -> Vec<QPoly> {
    let refs: Vec<&QPoly> = ps.iter().collect();
    let mut c = joint_content(&refs);
    if let Some(first) = ps.iter().find(|p| !p.is_zero()) {
        if first.leading_coeff().is_negative() {
            c = -c;
        }
    }
    ps.iter().map(|p| p.scale(&c.recip())).collect()
}

fn xyz_vars() -> (QPoly, QPoly, QPoly) {
    let v = Vars::xyz();
    (QPoly::q_var(&v, 0), QPoly::q_var(&v, 1), QPoly::q_var(&v, 2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Foliation {
    degree: u32,
    comps: [QPoly; 3],
}

impl Foliation {
    /// Validates and normalizes a homogeneous form.
    pub fn new(a: QPoly, b: QPoly, c: QPoly) -> Result<Self> {
        let v = Vars::xyz();
        let comps = [a.with_vars(&v), b.with_vars(&v), c.with_vars(&v)];
        if comps.iter().all(|p| p.is_zero()) {
            return Err(Error::ZeroForm);
        }
        let mut deg = None;
        for p in comps.iter().filter(|p| !p.is_zero()) {
            if !p.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            let e = p.total_degree().unwrap();
            if deg.is_some_and(|d| d != e) {
                return Err(Error::NotHomogeneous);
            }
            deg = Some(e);
        }
        let deg = deg.unwrap();
        if deg == 0 {
            return Err(Error::Euler);
        }
        let (x, y, z) = xyz_vars();
        let euler = &(&(&x * &comps[0]) + &(&y * &comps[1])) + &(&z * &comps[2]);
        if !euler.is_zero() {
            return Err(Error::Euler);
        }
        let nz: Vec<QPoly> = comps.iter().filter(|p| !p.is_zero()).cloned().collect();
        let g = gcd_many(&nz).expect("nonempty");
        if !g.is_constant() {
            return Err(Error::NotPrimitive { factor: g.primitive().to_string() });
        }
        Ok(Self::from_normalized(deg - 1, comps))
    }

    fn from_normalized(degree: u32, comps: [QPoly; 3]) -> Self {
        let n = normalize_projective(&comps);
        let [a, b, c]: [QPoly; 3] = n.try_into().expect("three components");
        Foliation { degree, comps: [a, b, c] }
    }

    /// Removes a common factor instead of rejecting it. Useful for limits and
    /// for forms built by hand where a power of a coordinate may factor out.
    pub fn saturate(a: QPoly, b: QPoly, c: QPoly) -> Result<(Self, QPoly)> {
        let v = Vars::xyz();
        let comps = [a.with_vars(&v), b.with_vars(&v), c.with_vars(&v)];
        let nz: Vec<QPoly> = comps.iter().filter(|p| !p.is_zero()).cloned().collect();
        let g = gcd_many(&nz).ok_or(Error::ZeroForm)?;
        if g.is_constant() {
            return Ok((Self::new(a, b, c)?, QPoly::q_int(&v, 1)));
        }
        let g = g.primitive();
        let reduced: Vec<QPoly> = comps.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
        let [a, b, c]: [QPoly; 3] = reduced.try_into().unwrap();
        Ok((Self::new(a, b, c)?, g))
    }

    /// Homogenizes `A dx_i + B dx_j` given in `chart`.
    pub fn from_affine(chart: Chart, a: &QPoly, b: &QPoly) -> Result<Self> {
        let v = Vars::xyz();
        let (a, b) = (a.with_vars(&v), b.with_vars(&v));
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroForm);
        }
        let (i, j, k) = chart.indices();
        if a.involves(k) || b.involves(k) {
            return Err(Error::Precondition(format!("affine form in chart {chart} involves {}", v.name(k))));
        }
        let deg = a.total_degree().unwrap_or(0).max(b.total_degree().unwrap_or(0));
        let w = QPoly::q_var(&v, k);
        let ah = homogenize(&a, k, deg);
        let bh = homogenize(&b, k, deg);
        let mut comps = [QPoly::q_zero(&v), QPoly::q_zero(&v), QPoly::q_zero(&v)];
        comps[i] = &w * &ah;
        comps[j] = &w * &bh;
        comps[k] = -&(&(&QPoly::q_var(&v, i) * &ah) + &(&QPoly::q_var(&v, j) * &bh));
        // the line at infinity may split off once when the top part is radial
        let mut d = deg + 1;
        while comps.iter().all(|p| p.is_zero() || divisible_by_var(p, k)) && d > 1 {
            for p in comps.iter_mut() {
                *p = p.div_exact(&w).expect("checked");
            }
            d -= 1;
        }
        let [a, b, c] = comps;
        Self::new(a, b, c)
    }

    /// `A alpha + B beta + C gamma` with `alpha = y dz - z dy`,
    /// `beta = z dx - x dz`, `gamma = x dy - y dx`.
    pub fn from_abc(a: &QPoly, b: &QPoly, c: &QPoly) -> Result<Self> {
        let (x, y, z) = xyz_vars();
        let v = Vars::xyz();
        let (a, b, c) = (a.with_vars(&v), b.with_vars(&v), c.with_vars(&v));
        let fa = &(&b * &z) - &(&c * &y);
        let fb = &(&c * &x) - &(&a * &z);
        let fc = &(&a * &y) - &(&b * &x);
        Self::new(fa, fb, fc)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn a(&self) -> &QPoly {
        &self.comps[0]
    }

    pub fn b(&self) -> &QPoly {
        &self.comps[1]
    }

    pub fn c(&self) -> &QPoly {
        &self.comps[2]
    }

    pub fn components(&self) -> &[QPoly; 3] {
        &self.comps
    }

    /// The unique `(A, B, C)` with `C` free of `z` reproducing the form.
    pub fn abc(&self) -> Result<(QPoly, QPoly, QPoly)> {
        let (x, y, z) = xyz_vars();
        let zero = Q::zero();
        let b0 = self.comps[1].eval_var(2, &zero);
        let c = b0
            .div_exact(&x)
            .ok_or_else(|| Error::Internal("b(x,y,0) is not divisible by x".into()))?;
        let bb = (&self.comps[0] + &(&c * &y))
            .div_exact(&z)
            .ok_or_else(|| Error::Internal("a + C y is not divisible by z".into()))?;
        let aa = (&(&c * &x) - &self.comps[1])
            .div_exact(&z)
            .ok_or_else(|| Error::Internal("C x - b is not divisible by z".into()))?;
        Ok((aa, bb, c))
    }

    /// Homogeneous vector field `Z` with `omega = Z x R` (defined up to
    /// multiples of the radial field).
    pub fn dual_field(&self) -> [QPoly; 3] {
        let (a, b, c) = self.abc().expect("valid foliation");
        [a, b, c]
    }

    pub fn affine(&self, chart: Chart) -> AffineForm {
        let (i, j, k) = chart.indices();
        let one = Q::one();
        AffineForm::new(chart, self.comps[i].eval_var(k, &one), self.comps[j].eval_var(k, &one))
    }

    pub fn pullback(&self, m: &ProjectiveMap) -> Result<Foliation> {
        if !m.is_numeric() {
            return Err(Error::Precondition("numeric map expected".into()));
        }
        if m.det().is_zero() {
            return Err(Error::SingularMap);
        }
        let [a, b, c] = pullback_components(&self.comps, m);
        Foliation::new(a, b, c)
    }

    /// Pullback by a map with parameter entries; the result lives over
    /// `x, y, z` followed by the map's parameters.
    pub fn pullback_symbolic(&self, m: &ProjectiveMap) -> [QPoly; 3] {
        pullback_components(&self.comps, m)
    }

    /// The three coefficients of `omega ^ dC` on `dy^dz, dz^dx, dx^dy`.
    pub fn curve_wedge(&self, curve: &QPoly) -> [QPoly; 3] {
        let v = Vars::xyz();
        let c = curve.with_vars(&v);
        let g = [c.derivative(0), c.derivative(1), c.derivative(2)];
        let w = &self.comps;
        [
            &(&w[1] * &g[2]) - &(&w[2] * &g[1]),
            &(&w[2] * &g[0]) - &(&w[0] * &g[2]),
            &(&w[0] * &g[1]) - &(&w[1] * &g[0]),
        ]
    }

    pub fn is_invariant_curve(&self, curve: &QPoly) -> bool {
        let c = curve.with_vars(&Vars::xyz());
        if c.is_constant() {
            return true;
        }
        self.curve_wedge(&c).iter().all(|p| p.is_zero() || p.div_exact(&c).is_some())
    }

    /// Dual field applied to a polynomial, `Z(f) = A f_x + B f_y + C f_z`.
    pub fn apply_field(&self, f: &QPoly) -> QPoly {
        let z = self.dual_field();
        let mut acc = QPoly::q_zero(&Vars::xyz());
        for (i, zi) in z.iter().enumerate() {
            acc = &acc + &(zi * &f.derivative(i));
        }
        acc
    }

    /// Components as `a; b; c`.
    pub fn homogeneous_text(&self) -> String {
        format!("{}; {}; {}", self.comps[0], self.comps[1], self.comps[2])
    }
}

impl fmt::Display for Foliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dx + ({})*dy + ({})*dz", self.comps[0], self.comps[1], self.comps[2])
    }
}

fn divisible_by_var(p: &QPoly, k: usize) -> bool {
    p.terms().all(|(m, _)| m.exps()[k] > 0)
}

/// `w^deg p(x/w, ...)` with `w = x_k`.
fn homogenize(p: &QPoly, k: usize, deg: u32) -> QPoly {
    let mut out = p.same_zero();
    for (m, c) in p.terms() {
        let mut e = m.exps().to_vec();
        e[k] += deg - m.degree();
        out.add_term(Monomial::new(e), c.clone());
    }
    out
}

/// `phi^* (a, b, c)` for `x_i -> sum_j M[i][j] x_j`.
pub fn pullback_components(comps: &[QPoly; 3], m: &ProjectiveMap) -> [QPoly; 3] {
    let target = m.target_vars();
    let xs: Vec<QPoly> = (0..3).map(|i| QPoly::q_var(&target, i)).collect();
    let entries: Vec<Vec<QPoly>> = m.entries.iter().map(|r| r.iter().map(|e| e.with_vars(&target)).collect()).collect();
    let images: Vec<QPoly> = (0..3)
        .map(|i| {
            let mut acc = QPoly::q_zero(&target);
            for (j, xj) in xs.iter().enumerate() {
                acc = &acc + &(&entries[i][j] * xj);
            }
            acc
        })
        .collect();
    let composed: Vec<QPoly> = comps.iter().map(|p| p.with_vars(&Vars::xyz()).compose(&images)).collect();
    let mut out = [QPoly::q_zero(&target), QPoly::q_zero(&target), QPoly::q_zero(&target)];
    for (j, o) in out.iter_mut().enumerate() {
        for (i, ci) in composed.iter().enumerate() {
            *o = &*o + &(ci * &entries[i][j]);
        }
    }
    out
}

/// A 3x3 matrix acting by `x_i -> sum_j M[i][j] x_j`; entries may be
/// polynomials in parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveMap {
    params: Vars,
    entries: Vec<Vec<QPoly>>,
}

impl ProjectiveMap {
    pub fn numeric(m: [[Q; 3]; 3]) -> Self {
        let params = Vars::new::<&str>(&[]);
        let entries = m
            .iter()
            .map(|r| r.iter().map(|c| QPoly::q_const(&params, c.clone())).collect())
            .collect();
        ProjectiveMap { params, entries }
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Self {
        Self::numeric(m.map(|r| r.map(|c| Q::from_integer(c.into()))))
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// Entries are polynomials over `params` (which must not use the names
    /// `x`, `y`, `z`).
    pub fn symbolic(params: &Vars, entries: [[QPoly; 3]; 3]) -> Self {
        assert!(params.names().iter().all(|n| !["x", "y", "z"].contains(&n.as_str())));
        let entries = entries.iter().map(|r| r.iter().map(|e| e.with_vars(params)).collect()).collect();
        ProjectiveMap { params: params.clone(), entries }
    }

    pub fn params(&self) -> &Vars {
        &self.params
    }

    pub fn entry(&self, i: usize, j: usize) -> &QPoly {
        &self.entries[i][j]
    }

    pub fn is_numeric(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_constant())
    }

    pub fn numeric_entries(&self) -> Option<[[Q; 3]; 3]> {
        if !self.is_numeric() {
            return None;
        }
        Some(std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].constant_term())))
    }

    /// `x, y, z` followed by the parameters.
    pub fn target_vars(&self) -> Vars {
        Vars::xyz().extended(self.params.names())
    }

    pub fn det(&self) -> QPoly {
        let e = &self.entries;
        let m = |i: usize, j: usize, k: usize, l: usize| &(&e[i][k] * &e[j][l]) - &(&e[i][l] * &e[j][k]);
        &(&(&e[0][0] * &m(1, 2, 1, 2)) - &(&e[0][1] * &m(1, 2, 0, 2))) + &(&e[0][2] * &m(1, 2, 0, 1))
    }

    /// Matrix product `self * other`; pulling back by it equals pulling back
    /// by `self` and then by `other`.
    pub fn then(&self, other: &ProjectiveMap) -> ProjectiveMap {
        let names: Vec<String> = {
            let mut n: Vec<String> = self.params.names().to_vec();
            for s in other.params.names() {
                if !n.contains(s) {
                    n.push(s.clone());
                }
            }
            n
        };
        let params = Vars::new(&names);
        let a: Vec<Vec<QPoly>> = self.entries.iter().map(|r| r.iter().map(|e| e.with_vars(&params)).collect()).collect();
        let b: Vec<Vec<QPoly>> = other.entries.iter().map(|r| r.iter().map(|e| e.with_vars(&params)).collect()).collect();
        let entries = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let mut acc = QPoly::q_zero(&params);
                        for k in 0..3 {
                            acc = &acc + &(&a[i][k] * &b[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        ProjectiveMap { params, entries }
    }

    /// Image `M p` of a point given in the new coordinates.
    pub fn apply(&self, p: &[Q; 3]) -> Option<[Q; 3]> {
        let m = self.numeric_entries()?;
        Some(std::array::from_fn(|i| (0..3).map(|j| &m[i][j] * &p[j]).sum()))
    }

    pub fn inverse(&self) -> Option<ProjectiveMap> {
        let m = self.numeric_entries()?;
        let det = self.det().constant_term();
        if det.is_zero() {
            return None;
        }
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]]
        };
        let inv: [[Q; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let s = if (i + j) % 2 == 0 { Q::one() } else { -Q::one() };
                s * cof(j, i) / &det
            })
        });
        Some(ProjectiveMap::numeric(inv))
    }

    /// Substitutes values for some parameters.
    pub fn specialize(&self, values: &[(&str, Q)]) -> ProjectiveMap {
        let mut entries = self.entries.clone();
        for row in entries.iter_mut() {
            for e in row.iter_mut() {
                for (name, val) in values {
                    if let Some(i) = self.params.index(name) {
                        *e = e.eval_var(i, val);
                    }
                }
            }
        }
        let remaining: Vec<String> = self
            .params
            .names()
            .iter()
            .filter(|n| !values.iter().any(|(v, _)| v == n))
            .cloned()
            .collect();
        let params = Vars::new(&remaining);
        let entries = entries.iter().map(|r| r.iter().map(|e| e.with_vars(&params)).collect()).collect();
        ProjectiveMap { params, entries }
    }
}

impl fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

/// Lie derivative of an affine form along a polynomial field `(p, q)` in the
/// same chart, and the coefficient of `L_X omega ^ omega` on `dx_i ^ dx_j`.
pub fn wedge_lie(form: &AffineForm, p: &QPoly, q: &QPoly) -> (QPoly, QPoly, QPoly) {
    let (i, j) = form.vars();
    let apply = |f: &QPoly| &(p * &f.derivative(i)) + &(q * &f.derivative(j));
    let (a, b) = (&form.a, &form.b);
    let l1 = &(&apply(a) + &(a * &p.derivative(i))) + &(b * &q.derivative(i));
    let l2 = &(&apply(b) + &(a * &p.derivative(j))) + &(b * &q.derivative(j));
    let wedge = &(&l1 * b) - &(&l2 * a);
    (l1, l2, wedge)
}

/// Whether `(p/q) dx + (r/s) dy` is closed, in the variables `x, y`.
pub fn rational_form_closed(p: &QPoly, q: &QPoly, r: &QPoly, s: &QPoly) -> bool {
    assert!(!q.is_zero() && !s.is_zero(), "zero denominator");
    // d/dy (p/q) - d/dx (r/s), cleared by q^2 s^2
    let lhs = &(&(&p.derivative(1) * q) - &(p * &q.derivative(1))) * &(s * s);
    let rhs = &(&(&r.derivative(0) * s) - &(r * &s.derivative(0))) * &(q * q);
    (&lhs - &rhs).is_zero()
}

/// Whether `H = n/d` satisfies `dH ^ (A dx + B dy) = 0`.
pub fn first_integral_check(n: &QPoly, d: &QPoly, form: &AffineForm) -> bool {
    assert!(!d.is_zero(), "zero denominator");
    let (i, j) = form.vars();
    let hx = &(&n.derivative(i) * d) - &(n * &d.derivative(i));
    let hy = &(&n.derivative(j) * d) - &(n * &d.derivative(j));
    (&(&hx * &form.b) - &(&hy * &form.a)).is_zero()
}
