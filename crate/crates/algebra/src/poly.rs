//! Sparse multivariate polynomials in graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::{PrimeField, Rationals, Ring, Q};

/// An ordered list of variable names; the order fixes the monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn xyz() -> Self {
        Self::new(&["x", "y", "z"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    /// This list followed by `extra` names that are not already present.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Vars {
        let mut v: Vec<String> = self.0.to_vec();
        for e in extra {
            if !v.iter().any(|n| n == e.as_ref()) {
                v.push(e.as_ref().to_string());
            }
        }
        Vars(v.into())
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Exponent vector ordered by total degree, ties broken lexicographically
/// with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial<R: Ring> {
    ring: R,
    vars: Vars,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for Polynomial<R> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

pub type QPoly = Polynomial<Rationals>;

impl<R: Ring> Polynomial<R> {
    pub fn zero(ring: &R, vars: &Vars) -> Self {
        Polynomial { ring: ring.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &R, vars: &Vars, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, vars);
        if !ring.is_zero(&c) {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(ring: &R, vars: &Vars) -> Self {
        Self::constant(ring, vars, ring.one())
    }

    pub fn var(ring: &R, vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(ring, vars, Monomial::new(e), ring.one())
    }

    pub fn monomial(ring: &R, vars: &Vars, m: Monomial, c: R::Elem) -> Self {
        assert_eq!(m.exps().len(), vars.len());
        let mut p = Self::zero(ring, vars);
        if !ring.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, R::Elem)>>(ring: &R, vars: &Vars, it: I) -> Self {
        let mut p = Self::zero(ring, vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeff_of(&self, exps: &[u32]) -> R::Elem {
        self.coeff(&Monomial::new(exps.to_vec()))
    }

    pub fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.ring.add(v, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exps()[i] > 0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> R::Elem {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Homogeneous in the variables listed in `which` (others are parameters).
    pub fn is_homogeneous_in(&self, which: &[usize]) -> bool {
        let deg = |m: &Monomial| which.iter().map(|&i| m.exps()[i]).sum::<u32>();
        let mut it = self.terms.keys().map(deg);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut p = Self::zero(&self.ring, &self.vars);
        for (m, c) in &self.terms {
            if m.degree() == k {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    /// Part of total degree `k` in the variables of `which`.
    pub fn homogeneous_part_in(&self, which: &[usize], k: u32) -> Self {
        let mut p = Self::zero(&self.ring, &self.vars);
        for (m, c) in &self.terms {
            if which.iter().map(|&i| m.exps()[i]).sum::<u32>() == k {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(&self.ring, &self.vars);
        }
        let mut p = Self::zero(&self.ring, &self.vars);
        for (m, v) in &self.terms {
            let w = self.ring.mul(v, c);
            if !self.ring.is_zero(&w) {
                p.terms.insert(m.clone(), w);
            }
        }
        p
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &R::Elem) -> Self {
        let mut p = Self::zero(&self.ring, &self.vars);
        for (m, v) in &self.terms {
            let w = self.ring.mul(v, c);
            if !self.ring.is_zero(&w) {
                p.terms.insert(m.mul(mono), w);
            }
        }
        p
    }

    pub fn var_power(&self, i: usize, e: u32) -> Self {
        let mut ex = vec![0; self.nvars()];
        ex[i] = e;
        Self::monomial(&self.ring, &self.vars, Monomial::new(ex), self.ring.one())
    }

    pub fn same_var(&self, i: usize) -> Self {
        Self::var(&self.ring, &self.vars, i)
    }

    pub fn same_constant(&self, c: R::Elem) -> Self {
        Self::constant(&self.ring, &self.vars, c)
    }

    pub fn same_zero(&self) -> Self {
        Self::zero(&self.ring, &self.vars)
    }

    pub fn same_one(&self) -> Self {
        Self::one(&self.ring, &self.vars)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.same_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = self.same_zero();
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[i] -= 1;
            let w = self.ring.mul(c, &self.ring.from_i64(e as i64));
            p.add_term(Monomial::new(ex), w);
        }
        p
    }

    pub fn evaluate(&self, point: &[R::Elem]) -> R::Elem {
        assert_eq!(point.len(), self.nvars());
        let mut acc = self.ring.zero();
        let mut cache: Vec<Vec<R::Elem>> = point.iter().map(|v| vec![self.ring.one(), v.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                while pw.len() <= e as usize {
                    let nx = self.ring.mul(pw.last().unwrap(), &point[i]);
                    pw.push(nx);
                }
                t = self.ring.mul(&t, &pw[e as usize]);
            }
            acc = self.ring.add(&acc, &t);
        }
        acc
    }

    /// Substitutes a constant for variable `i`; the variable stays in the list.
    pub fn eval_var(&self, i: usize, v: &R::Elem) -> Self {
        let mut p = self.same_zero();
        let mut pw: Vec<R::Elem> = vec![self.ring.one()];
        for (m, c) in &self.terms {
            let e = m.exps()[i] as usize;
            while pw.len() <= e {
                let nx = self.ring.mul(pw.last().unwrap(), v);
                pw.push(nx);
            }
            let mut ex = m.exps().to_vec();
            ex[i] = 0;
            p.add_term(Monomial::new(ex), self.ring.mul(c, &pw[e]));
        }
        p
    }

    /// Replaces each variable `i` by `images[i]`; images share a target list.
    pub fn compose(&self, images: &[Polynomial<R>]) -> Polynomial<R> {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut cache: Vec<Vec<Polynomial<R>>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&self.ring, &target), p.clone()])
            .collect();
        let mut acc = Polynomial::zero(&self.ring, &target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.ring, &target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                while pw.len() <= e as usize {
                    let nx = pw.last().unwrap() * &images[i];
                    pw.push(nx);
                }
                t = &t * &pw[e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `image` for variable `i`.
    pub fn substitute(&self, i: usize, image: &Polynomial<R>) -> Self {
        let imgs: Vec<_> = (0..self.nvars())
            .map(|j| if j == i { image.clone() } else { self.same_var(j) })
            .collect();
        self.compose(&imgs)
    }

    /// Re-expresses the polynomial over `target`; `map[i]` is the target
    /// index of variable `i`.
    pub fn remap(&self, target: &Vars, map: &[usize]) -> Self {
        let mut p = Polynomial::zero(&self.ring, target);
        for (m, c) in &self.terms {
            let mut ex = vec![0; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                ex[map[i]] += e;
            }
            p.add_term(Monomial::new(ex), c.clone());
        }
        p
    }

    /// Re-expresses over `target` by matching names; panics on a missing name
    /// that is actually used.
    pub fn with_vars(&self, target: &Vars) -> Self {
        let map: Vec<usize> = (0..self.nvars())
            .map(|i| match target.index(self.vars.name(i)) {
                Some(j) => j,
                None => {
                    assert!(!self.involves(i), "variable {} missing from target", self.vars.name(i));
                    0
                }
            })
            .collect();
        let mut p = Polynomial::zero(&self.ring, target);
        for (m, c) in &self.terms {
            let mut ex = vec![0; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    ex[map[i]] += e;
                }
            }
            p.add_term(Monomial::new(ex), c.clone());
        }
        p
    }

    pub fn map_coeffs<S: Ring, F: Fn(&R::Elem) -> S::Elem>(&self, target: &S, f: F) -> Polynomial<S> {
        let mut p = Polynomial::zero(target, &self.vars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    /// Coefficients with respect to variable `i`, lowest power first.
    pub fn to_univariate(&self, i: usize) -> Vec<Polynomial<R>> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![self.same_zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut ex = m.exps().to_vec();
            let e = ex[i] as usize;
            ex[i] = 0;
            out[e].terms.insert(Monomial::new(ex), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_univariate(ring: &R, vars: &Vars, i: usize, coeffs: &[Polynomial<R>]) -> Self {
        let mut p = Self::zero(ring, vars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut ex = m.exps().to_vec();
                ex[i] += e as u32;
                p.add_term(Monomial::new(ex), v.clone());
            }
        }
        p
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        if other.is_zero() {
            return None;
        }
        let (lm, lc) = other.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = self.same_zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qc = self.ring.div_exact(&c, &lc)?;
            let qm = m.div(&lm);
            rem = &rem - &other.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn write_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg_c = self.ring.neg(c);
            // print a leading minus when the negated coefficient is "simpler"
            let negative = !self.ring.is_atomic(c) && self.ring.is_atomic(&neg_c);
            let shown = if negative { &neg_c } else { c };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let is_unit = self.ring.is_one(shown);
            let mono_deg = m.degree();
            if mono_deg == 0 {
                self.write_coeff(shown, f)?;
                continue;
            }
            if !is_unit {
                self.write_coeff(shown, f)?;
                write!(f, "*")?;
            }
            let mut first_var = true;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", self.vars.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }

    fn write_coeff(&self, c: &R::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ring.is_atomic(c) {
            self.ring.write_elem(c, f)
        } else {
            write!(f, "(")?;
            self.ring.write_elem(c, f)?;
            write!(f, ")")
        }
    }
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f)
    }
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), self.ring.neg(c));
        }
        p
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        let mut p = self.same_zero();
        for (m, c) in &self.terms {
            p.terms.insert(m.clone(), self.ring.neg(c));
        }
        p
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut p = self.same_zero();
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                p.add_term(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $m(self, rhs: Polynomial<R>) -> Polynomial<R> {
                (&self).$m(&rhs)
            }
        }
        impl<R: Ring> $tr<&Polynomial<R>> for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $m(self, rhs: &Polynomial<R>) -> Polynomial<R> {
                (&self).$m(rhs)
            }
        }
        impl<R: Ring> $tr<Polynomial<R>> for &Polynomial<R> {
            type Output = Polynomial<R>;
            fn $m(self, rhs: Polynomial<R>) -> Polynomial<R> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        -&self
    }
}

impl QPoly {
    /// Polynomial over `Q` in the given variable names.
    pub fn q_zero(vars: &Vars) -> Self {
        Self::zero(&Rationals, vars)
    }

    pub fn q_const(vars: &Vars, c: Q) -> Self {
        Self::constant(&Rationals, vars, c)
    }

    pub fn q_var(vars: &Vars, i: usize) -> Self {
        Self::var(&Rationals, vars, i)
    }

    pub fn q_int(vars: &Vars, n: i64) -> Self {
        Self::constant(&Rationals, vars, Q::from_integer(BigInt::from(n)))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::one();
        }
        Q::new(num, den)
    }

    /// Integer-cleared, content 1, leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Image modulo `p`; `None` when some denominator vanishes there.
    pub fn reduce_mod(&self, field: &PrimeField) -> Option<Polynomial<PrimeField>> {
        let mut p = Polynomial::zero(field, &self.vars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), field.reduce(c)?);
        }
        Some(p)
    }

    /// Largest absolute value of a numerator or denominator.
    pub fn height(&self) -> BigInt {
        let mut h = BigInt::zero();
        for c in self.terms.values() {
            h = h.max(c.numer().abs()).max(c.denom().clone());
        }
        h
    }

    /// Integer lift of coefficients with denominators cleared by their lcm.
    pub fn clear_denominators(&self) -> (Self, BigInt) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        (self.scale(&Q::from_integer(den.clone())), den)
    }

    /// Sign of the leading coefficient, used by projective normalizations.
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            _ => 1,
        }
    }

    /// Polynomial built from integer coefficients on explicit exponent vectors.
    pub fn from_int_terms(vars: &Vars, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            &Rationals,
            vars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), Q::from_integer(BigInt::from(*c)))),
        )
    }
}

/// `self` and `other` span the same line over the coefficient field.
pub fn proportional(a: &QPoly, b: &QPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    a.primitive() == b.primitive() || a.primitive() == -b.primitive()
}
