//! Dense univariate polynomials over any [`Ring`].

use std::fmt;

use crate::ring::{Field, Ring};

#[derive(Clone, Debug)]
pub struct UniPoly<R: Ring> {
    ring: R,
    /// Coefficients, constant term first, no trailing zeros.
    c: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: &R, mut c: Vec<R::Elem>) -> Self {
        while c.last().is_some_and(|v| ring.is_zero(v)) {
            c.pop();
        }
        UniPoly { ring: ring.clone(), c }
    }

    pub fn zero(ring: &R) -> Self {
        UniPoly { ring: ring.clone(), c: Vec::new() }
    }

    pub fn constant(ring: &R, v: R::Elem) -> Self {
        Self::new(ring, vec![v])
    }

    pub fn one(ring: &R) -> Self {
        Self::constant(ring, ring.one())
    }

    /// The indeterminate.
    pub fn x(ring: &R) -> Self {
        Self::new(ring, vec![ring.zero(), ring.one()])
    }

    /// `c * x^k`.
    pub fn monomial(ring: &R, k: usize, c: R::Elem) -> Self {
        let mut v = vec![ring.zero(); k + 1];
        v[k] = c;
        Self::new(ring, v)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// have already excluded zero.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.c.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn lc(&self) -> R::Elem {
        self.c.last().cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| self.ring.add(&self.coeff(i), &o.coeff(i))).collect();
        Self::new(&self.ring, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| self.ring.sub(&self.coeff(i), &o.coeff(i))).collect();
        Self::new(&self.ring, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ring, self.c.iter().map(|v| self.ring.neg(v)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut v = vec![self.ring.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let t = self.ring.mul(a, b);
                v[i + j] = self.ring.add(&v[i + j], &t);
            }
        }
        Self::new(&self.ring, v)
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        Self::new(&self.ring, self.c.iter().map(|v| self.ring.mul(v, s)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ring.zero(); k];
        v.extend(self.c.iter().cloned());
        Self::new(&self.ring, v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for a in self.c.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), a);
        }
        acc
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.ring);
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(&self.ring, a.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| self.ring.mul(a, &self.ring.from_i64(i as i64)))
            .collect();
        Self::new(&self.ring, v)
    }

    /// Multiplicity of 0 as a root.
    pub fn trailing_zeros(&self) -> usize {
        self.c.iter().take_while(|v| self.ring.is_zero(v)).count()
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-division by zero");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut e = self.deg() - db + 1;
        while !r.is_zero() && r.deg() >= db {
            let k = r.deg() - db;
            let t = b.shift(k).scale(&r.lc());
            r = r.scale(&lb).sub(&t);
            e -= 1;
        }
        r.scale(&self.ring.pow(&lb, e as u32))
    }

    /// Division by `b` when exact in the coefficient ring.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![self.ring.zero(); self.deg() - db + 1];
        while !r.is_zero() && r.deg() >= db {
            let k = r.deg() - db;
            let qc = self.ring.div_exact(&r.lc(), &lb)?;
            r = r.sub(&b.shift(k).scale(&qc));
            q[k] = qc;
        }
        r.is_zero().then(|| Self::new(&self.ring, q))
    }

    /// Exact division of every coefficient by `s`.
    pub fn div_scalar_exact(&self, s: &R::Elem) -> Option<Self> {
        let v: Option<Vec<_>> = self.c.iter().map(|a| self.ring.div_exact(a, s)).collect();
        v.map(|v| Self::new(&self.ring, v))
    }

    pub fn map<S: Ring, F: Fn(&R::Elem) -> S::Elem>(&self, target: &S, f: F) -> UniPoly<S> {
        UniPoly::new(target, self.c.iter().map(f).collect())
    }
}

impl<F: Field> UniPoly<F> {
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.deg();
        let inv = self.ring.inv(&b.lc()).expect("field element");
        let mut r = self.clone();
        if r.is_zero() || r.deg() < db {
            return (Self::zero(&self.ring), r);
        }
        let mut q = vec![self.ring.zero(); r.deg() - db + 1];
        while !r.is_zero() && r.deg() >= db {
            let k = r.deg() - db;
            let qc = self.ring.mul(&r.lc(), &inv);
            r = r.sub(&b.shift(k).scale(&qc));
            q[k] = qc;
        }
        (Self::new(&self.ring, q), r)
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ring.inv(&self.lc()).expect("field element");
        self.scale(&inv)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let ring = self.ring.clone();
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(&ring), Self::zero(&ring));
        let (mut t0, mut t1) = (Self::zero(&ring), Self::one(&ring));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = ring.inv(&r0.lc()).expect("field element");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in("t", f)
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn write_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if self.ring.is_zero(a) {
                continue;
            }
            let na = self.ring.neg(a);
            let negative = !self.ring.is_atomic(a) && self.ring.is_atomic(&na);
            let shown = if negative { &na } else { a };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = self.ring.is_one(shown);
            if i == 0 || !unit {
                if self.ring.is_atomic(shown) {
                    self.ring.write_elem(shown, f)?;
                } else {
                    write!(f, "(")?;
                    self.ring.write_elem(shown, f)?;
                    write!(f, ")")?;
                }
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{i}")?,
            }
        }
        Ok(())
    }

    pub fn to_string_in(&self, var: &str) -> String {
        struct W<'a, R: Ring>(&'a UniPoly<R>, &'a str);
        impl<R: Ring> fmt::Display for W<'_, R> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_in(self.1, f)
            }
        }
        W(self, var).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, Rationals};

    fn up(v: &[i64]) -> UniPoly<Rationals> {
        UniPoly::new(&Rationals, v.iter().map(|&a| q(a)).collect())
    }

    #[test]
    fn euclid() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = up(&[-2, 1, 1]);
        let b = up(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn prem_identity() {
        let a = up(&[1, 2, 3, 4]);
        let b = up(&[1, 0, 2]);
        let r = a.prem(&b);
        assert!(r.deg() < 2);
        let lb = q(2).pow(2);
        let (qt, rr) = a.scale(&lb).div_rem(&b);
        let _ = qt;
        assert_eq!(r, rr);
    }

    #[test]
    fn display() {
        assert_eq!(up(&[-1, 0, 1]).to_string(), "t^2 - 1");
        assert_eq!(up(&[0, -2]).to_string(), "-2*t");
    }
}
