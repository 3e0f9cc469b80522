//! Coefficient domains.
//!
//! A [`Ring`] value is a context object: it knows how to build and combine
//! its elements. This keeps runtime moduli (a prime `p`, a polynomial `m(t)`)
//! out of the element type while letting polynomial code stay generic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Polynomial;

pub type Q = BigRational;

pub trait Ring: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + fmt::Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `a / b` when `b` divides `a` exactly.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn write_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    /// True when the element prints as a single token (no `+`/`-` inside),
    /// so a polynomial printer can omit parentheses.
    fn is_atomic(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn display<'a>(&'a self, a: &'a Self::Elem) -> ElemDisplay<'a, Self> {
        ElemDisplay { ring: self, elem: a }
    }
}

/// Marker for rings in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Cheap sufficient test that `gcd(f, g) = 1`; `false` means "unknown".
    fn certify_coprime(&self, _f: &Polynomial<Self>, _g: &Polynomial<Self>) -> bool {
        false
    }
}

pub struct ElemDisplay<'a, R: Ring + ?Sized> {
    ring: &'a R,
    elem: &'a R::Elem,
}

impl<R: Ring> fmt::Display for ElemDisplay<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ring.write_elem(self.elem, f)
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_bigint(&self, n: &BigInt) -> Q {
        Q::from_integer(n.clone())
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Q) -> bool {
        a.is_one()
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn div_exact(&self, a: &Q, b: &Q) -> Option<Q> {
        (!b.is_zero()).then(|| a / b)
    }
    fn write_elem(&self, a: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(a, f)
    }
    fn is_atomic(&self, a: &Q) -> bool {
        !a.is_negative()
    }
}

impl Field for Rationals {
    fn certify_coprime(&self, f: &Polynomial<Self>, g: &Polynomial<Self>) -> bool {
        crate::gcd::coprime_by_reduction(f, g)
    }
}

/// `p/q` with `q` omitted when it is 1.
pub fn write_rational(a: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if a.denom().is_one() {
        write!(f, "{}", a.numer())
    } else {
        write!(f, "{}/{}", a.numer(), a.denom())
    }
}

pub fn rational_to_string(a: &Q) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integers, used for fraction-free elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (qt, r) = a.div_rem(b);
        r.is_zero().then_some(qt)
    }
    fn write_elem(&self, a: &BigInt, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }
    fn is_atomic(&self, a: &BigInt) -> bool {
        !a.is_negative()
    }
}

/// The prime field `F_p` for a word-sized prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime and below 2^62; primality is the caller's promise.
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 62), "modulus out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Image of a rational number, `None` if `p` divides the denominator.
    pub fn reduce(&self, a: &Q) -> Option<u64> {
        let n = self.reduce_int(a.numer());
        let d = self.reduce_int(a.denom());
        let di = self.inv(&d)?;
        Some(self.mul(&n, &di))
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits")
    }

    fn pow_u64(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_int(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow_u64(*a, self.p - 2))
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn write_elem(&self, a: &u64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }
}

impl Field for PrimeField {}

/// Primes just below 2^61 used by modular shortcuts.
pub const WORD_PRIMES: [u64; 6] = [
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
];

pub fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}
