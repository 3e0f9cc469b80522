//! The ring `Q[t]/(m)` for a monic squarefree `m`.
//!
//! Since `m` is squarefree the ring is a product of number fields, one per
//! irreducible factor. An element is a unit exactly when it shares no factor
//! with `m`; otherwise the gcd splits `m` and the caller continues on each
//! piece separately.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::ring::{Rationals, Ring, Q};
use crate::upoly::UniPoly;

pub type QUPoly = UniPoly<Rationals>;

#[derive(Debug, Error, PartialEq)]
pub enum QuotientError {
    #[error("modulus must be monic of positive degree")]
    NotMonic,
    #[error("modulus is not squarefree")]
    NotSquarefree,
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    m: Arc<QUPoly>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.m, &other.m) || *self.m == *other.m
    }
}

/// Outcome of an inversion attempt.
#[derive(Clone, Debug, PartialEq)]
pub enum Inversion {
    Unit(QUPoly),
    /// `factor` is a nontrivial monic divisor of the modulus on which the
    /// element vanishes.
    NonUnit { factor: QUPoly },
}

impl QuotientRing {
    pub fn new(m: QUPoly) -> Result<Self, QuotientError> {
        if m.deg() == 0 || m.lc() != Q::from_integer(1.into()) {
            return Err(QuotientError::NotMonic);
        }
        if m.gcd(&m.derivative()).deg() > 0 {
            return Err(QuotientError::NotSquarefree);
        }
        Ok(QuotientRing { m: Arc::new(m) })
    }

    /// Builds the ring after making `m` monic and squarefree.
    pub fn from_any(m: &QUPoly) -> Result<Self, QuotientError> {
        let m = m.monic();
        let g = m.gcd(&m.derivative());
        let sf = m.div_rem(&g).0.monic();
        Self::new(sf)
    }

    pub fn modulus(&self) -> &QUPoly {
        &self.m
    }

    pub fn degree(&self) -> usize {
        self.m.deg()
    }

    pub fn reduce(&self, a: &QUPoly) -> QUPoly {
        a.rem(&self.m)
    }

    /// The class of `t`.
    pub fn generator(&self) -> QUPoly {
        self.reduce(&UniPoly::x(&Rationals))
    }

    pub fn from_rational(&self, c: &Q) -> QUPoly {
        UniPoly::constant(&Rationals, c.clone())
    }

    pub fn invert(&self, a: &QUPoly) -> Inversion {
        let a = self.reduce(a);
        let (g, s, _) = a.ext_gcd(&self.m);
        if g.deg() == 0 && !g.is_zero() {
            Inversion::Unit(self.reduce(&s))
        } else if a.is_zero() {
            Inversion::NonUnit { factor: (*self.m).clone() }
        } else {
            Inversion::NonUnit { factor: g }
        }
    }

    /// Splits along `gcd(m, lift(e_i))`: the first ring is where every `e_i`
    /// vanishes, the second where they generate the unit ideal.
    pub fn split_by_vanishing(&self, elems: &[QUPoly]) -> (Option<QuotientRing>, Option<QuotientRing>) {
        let mut g = (*self.m).clone();
        for e in elems {
            if g.deg() == 0 {
                break;
            }
            g = g.gcd(e);
        }
        let g = g.monic();
        if g.deg() == 0 {
            return (None, Some(self.clone()));
        }
        if g.deg() == self.m.deg() {
            return (Some(self.clone()), None);
        }
        let rest = self.m.div_rem(&g).0.monic();
        (
            Some(QuotientRing { m: Arc::new(g) }),
            Some(QuotientRing { m: Arc::new(rest) }),
        )
    }

    /// Ring for a monic divisor of the modulus.
    pub fn sub_ring(&self, factor: &QUPoly) -> QuotientRing {
        debug_assert!(self.m.rem(factor).is_zero());
        QuotientRing { m: Arc::new(factor.monic()) }
    }

    /// Element as a polynomial in `t`, reduced.
    pub fn lift(&self, a: &QUPoly) -> QUPoly {
        self.reduce(a)
    }

    /// Image of a rational polynomial evaluated at an element.
    pub fn eval(&self, p: &QUPoly, at: &QUPoly) -> QUPoly {
        let mut acc = UniPoly::zero(&Rationals);
        for c in p.coeffs().iter().rev() {
            acc = self.reduce(&acc.mul(at)).add(&UniPoly::constant(&Rationals, c.clone()));
        }
        acc
    }

    /// The rational value when the element is constant.
    pub fn as_rational(&self, a: &QUPoly) -> Option<Q> {
        let a = self.reduce(a);
        match a.degree() {
            None => Some(Q::zero()),
            Some(0) => Some(a.coeff(0)),
            _ => None,
        }
    }
}

impl Ring for QuotientRing {
    type Elem = QUPoly;
    fn zero(&self) -> QUPoly {
        UniPoly::zero(&Rationals)
    }
    fn one(&self) -> QUPoly {
        UniPoly::one(&Rationals)
    }
    fn from_bigint(&self, n: &num_bigint::BigInt) -> QUPoly {
        UniPoly::constant(&Rationals, Q::from_integer(n.clone()))
    }
    fn add(&self, a: &QUPoly, b: &QUPoly) -> QUPoly {
        a.add(b)
    }
    fn sub(&self, a: &QUPoly, b: &QUPoly) -> QUPoly {
        a.sub(b)
    }
    fn mul(&self, a: &QUPoly, b: &QUPoly) -> QUPoly {
        self.reduce(&a.mul(b))
    }
    fn neg(&self, a: &QUPoly) -> QUPoly {
        a.neg()
    }
    fn is_zero(&self, a: &QUPoly) -> bool {
        self.reduce(a).is_zero()
    }
    fn inv(&self, a: &QUPoly) -> Option<QUPoly> {
        match self.invert(a) {
            Inversion::Unit(i) => Some(i),
            Inversion::NonUnit { .. } => None,
        }
    }
    fn div_exact(&self, a: &QUPoly, b: &QUPoly) -> Option<QUPoly> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn write_elem(&self, a: &QUPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        a.write_in("t", f)
    }
    fn is_atomic(&self, a: &QUPoly) -> bool {
        a.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
            && a.coeffs().iter().all(|c| Rationals.is_atomic(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qf};

    fn up(v: &[i64]) -> QUPoly {
        UniPoly::new(&Rationals, v.iter().map(|&a| q(a)).collect())
    }

    #[test]
    fn inverse_of_t_mod_t2_minus_2() {
        let r = QuotientRing::new(up(&[-2, 0, 1])).unwrap();
        let inv = r.inv(&up(&[0, 1])).unwrap();
        assert_eq!(inv, UniPoly::new(&Rationals, vec![q(0), qf(1, 2)]));
    }

    #[test]
    fn inverse_of_constant() {
        let r = QuotientRing::new(up(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.inv(&up(&[4])).unwrap(), UniPoly::constant(&Rationals, qf(1, 4)));
    }

    #[test]
    fn non_unit_reports_factor() {
        let r = QuotientRing::new(up(&[-1, 0, 1])).unwrap();
        assert_eq!(r.invert(&up(&[-1, 1])), Inversion::NonUnit { factor: up(&[-1, 1]) });
    }

    #[test]
    fn rejects_non_squarefree() {
        assert_eq!(QuotientRing::new(up(&[1, 2, 1])).unwrap_err(), QuotientError::NotSquarefree);
    }

    #[test]
    fn split() {
        let r = QuotientRing::new(up(&[-1, 0, 1])).unwrap();
        let (zero, unit) = r.split_by_vanishing(&[up(&[-1, 1])]);
        assert_eq!(zero.unwrap().modulus(), &up(&[-1, 1]));
        assert_eq!(unit.unwrap().modulus(), &up(&[1, 1]));
    }
}
