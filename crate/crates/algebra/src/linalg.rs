//! Exact linear algebra: fraction-free elimination over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::{PrimeField, Ring, Q, WORD_PRIMES};

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged matrix");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Q::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Q>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = ExactMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let s: Q = (0..self.cols).map(|k| self.get(i, k) * o.get(k, j)).sum();
                m.set(i, j, s);
            }
        }
        m
    }

    /// Rows scaled to primitive integer vectors.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| primitive_integer_vector(self.row(i))).collect()
    }

    /// Fraction-free row echelon form of the integer-scaled rows and the
    /// pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m = self.integer_rows();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                let f = m[i][c].clone();
                for j in c + 1..self.cols {
                    let v = &m[r][c] * &m[i][j] - &f * &m[r][j];
                    m[i][j] = v.div_exact_big(&prev);
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Basis of `{v : M v = 0}`, each vector a primitive integer vector whose
    /// last nonzero entry is positive.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (u, pivots) = self.bareiss_echelon();
        nullspace_from_echelon(&u, &pivots, self.cols)
    }

    /// Nullspace computed modulo word primes and confirmed exactly.
    ///
    /// The rank over `F_p` never exceeds the rank over `Q`, so once the
    /// reconstructed vectors check exactly their count equals the nullity.
    /// Falls back to [`ExactMatrix::nullspace`] if reconstruction fails.
    pub fn nullspace_fast(&self) -> Vec<Vec<Q>> {
        let rows = self.integer_rows();
        let mut acc_mod = BigInt::one();
        let mut acc: Option<(Vec<usize>, Vec<Vec<BigInt>>)> = None;
        for &p in WORD_PRIMES.iter() {
            let field = PrimeField::new(p);
            let mrows: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|v| field.reduce_int(v)).collect())
                .collect();
            let (basis, pivots) = nullspace_mod(&field, mrows, self.cols);
            let bp = BigInt::from(p);
            match &mut acc {
                None => {
                    let lifted = basis
                        .iter()
                        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                        .collect();
                    acc = Some((pivots, lifted));
                    acc_mod = bp;
                }
                Some((piv0, vecs)) => {
                    if *piv0 != pivots {
                        // unlucky prime; restart from this one only if it has higher rank
                        if pivots.len() > piv0.len() {
                            let lifted = basis
                                .iter()
                                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                                .collect();
                            acc = Some((pivots, lifted));
                            acc_mod = bp;
                        }
                        continue;
                    }
                    for (v, w) in vecs.iter_mut().zip(&basis) {
                        for (a, &b) in v.iter_mut().zip(w) {
                            *a = crt(a, &acc_mod, &BigInt::from(b), &bp);
                        }
                    }
                    acc_mod = &acc_mod * &bp;
                }
            }
            let (_, vecs) = acc.as_ref().unwrap();
            if let Some(cands) = reconstruct_all(vecs, &acc_mod) {
                if cands.iter().all(|v| self.mul_vec(v).iter().all(|x| x.is_zero())) {
                    return cands.into_iter().map(|v| normalize_vector(&v)).collect();
                }
            }
        }
        self.nullspace()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let rows: Vec<Vec<Q>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        bareiss_det(&crate::ring::Rationals, rows)
    }
}

trait DivExactBig {
    fn div_exact_big(&self, d: &BigInt) -> BigInt;
}

impl DivExactBig for BigInt {
    fn div_exact_big(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "Bareiss division must be exact");
        q
    }
}

fn primitive_integer_vector(row: &[Q]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in row {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn normalize_vector(v: &[Q]) -> Vec<Q> {
    let mut ints = primitive_integer_vector(v);
    if ints.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -c.clone();
        }
    }
    ints.into_iter().map(Q::from_integer).collect()
}

fn nullspace_from_echelon(u: &[Vec<BigInt>], pivots: &[usize], cols: usize) -> Vec<Vec<Q>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x = vec![Q::zero(); cols];
        x[f] = Q::one();
        for k in (0..pivots.len()).rev() {
            let pc = pivots[k];
            let mut s = Q::zero();
            for j in pc + 1..cols {
                if !x[j].is_zero() && !u[k][j].is_zero() {
                    s += Q::from_integer(u[k][j].clone()) * &x[j];
                }
            }
            x[pc] = -s / Q::from_integer(u[k][pc].clone());
        }
        out.push(normalize_vector(&x));
    }
    out
}

/// Reduced echelon nullspace over `F_p`: basis vectors (one per free column)
/// and pivot columns.
fn nullspace_mod(field: &PrimeField, mut m: Vec<Vec<u64>>, cols: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let t = field.mul(&f, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&m[k][f]);
            }
            v
        })
        .collect();
    (basis, pivots)
}

fn crt(a: &BigInt, m: &BigInt, b: &BigInt, n: &BigInt) -> BigInt {
    // x = a (mod m), x = b (mod n)
    let e = m.extended_gcd(n);
    let mn = m * n;
    let t = ((b - a) * e.x).mod_floor(n);
    (a + m * t).mod_floor(&mn)
}

fn reconstruct_all(vecs: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<Q>>> {
    let bound = m.sqrt() / BigInt::from(2);
    vecs.iter()
        .map(|v| v.iter().map(|x| rat_reconstruct(x, m, &bound)).collect::<Option<Vec<Q>>>())
        .collect()
}

fn rat_reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Q> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || &s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Q::new(r1, s1))
}

/// Determinant over an integral domain by Bareiss elimination.
pub fn bareiss_det<R: Ring>(ring: &R, mut m: Vec<Vec<R::Elem>>) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !ring.is_zero(&m[i][k])) {
                Some(p) => {
                    m.swap(k, p);
                    sign = !sign;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = ring.sub(&ring.mul(&m[k][k], &m[i][j]), &ring.mul(&m[i][k], &m[k][j]));
                m[i][j] = ring.div_exact(&v, &prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        ring.neg(&d)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    #[test]
    fn nullspace_rank_one() {
        let m = ExactMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![q(-1), q(1)]]);
        assert_eq!(m.nullspace_fast(), ns);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(ExactMatrix::identity(3).nullspace().is_empty());
        assert!(ExactMatrix::identity(3).nullspace_fast().is_empty());
    }

    #[test]
    fn determinant() {
        let m = ExactMatrix::from_i64(&[&[0, 2, 1], &[1, 1, 1], &[3, 0, 5]]);
        // cofactor expansion along the first row: -2*(5-3) + 1*(0-3)
        assert_eq!(m.determinant(), q(-7));
    }
}
