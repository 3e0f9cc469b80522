//! Infinitesimal symmetries: the kernel of `A -> L_{tau(A)} omega ^ omega`
//! on sl3, symmetry tests for single fields, and isotropy families.
//!
//! The kernel is computed on the homogeneous form on C^3, where `tau(A)`
//! is the linear field `sum_j (sum_i x_i A_ij) d/dx_j`. This is valid in
//! every chart at once.

use std::collections::BTreeMap;
use std::fmt;

use folia_algebra::{ExactMatrix, Monomial, QPoly, Vars, Q};
use num_traits::{One, Zero};

use crate::foliation::wedge_lie;
use crate::{Chart, Error, Foliation, ProjectiveMap, Result};

/// A traceless 3x3 rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl3Element {
    m: [[Q; 3]; 3],
}

impl Sl3Element {
    pub fn new(m: [[Q; 3]; 3]) -> Result<Self> {
        let tr = &(&m[0][0] + &m[1][1]) + &m[2][2];
        if !tr.is_zero() {
            return Err(Error::Precondition(format!("trace {tr} is not zero")));
        }
        Ok(Sl3Element { m })
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|r| r.map(|c| Q::from_integer(c.into()))))
    }

    pub fn zero() -> Self {
        Sl3Element { m: std::array::from_fn(|_| std::array::from_fn(|_| Q::zero())) }
    }

    /// `E_01, E_02, E_10, E_12, E_20, E_21, E_00 - E_22, E_11 - E_22`.
    pub fn basis() -> Vec<Sl3Element> {
        let mut out = Vec::with_capacity(8);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let mut e = Self::zero();
                    e.m[i][j] = Q::one();
                    out.push(e);
                }
            }
        }
        for i in 0..2 {
            let mut e = Self::zero();
            e.m[i][i] = Q::one();
            e.m[2][2] = -Q::one();
            out.push(e);
        }
        out
    }

    /// Coordinates in [`Sl3Element::basis`].
    pub fn coordinates(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(8);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    out.push(self.m[i][j].clone());
                }
            }
        }
        out.push(self.m[0][0].clone());
        out.push(self.m[1][1].clone());
        out
    }

    pub fn from_coordinates(c: &[Q]) -> Self {
        let mut acc = Self::zero();
        for (e, k) in Self::basis().iter().zip(c) {
            acc = acc.add(&e.scale(k));
        }
        acc
    }

    pub fn matrix(&self) -> &[[Q; 3]; 3] {
        &self.m
    }

    pub fn add(&self, o: &Self) -> Self {
        Sl3Element { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] + &o.m[i][j])) }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Sl3Element { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] * c)) }
    }

    fn product(&self, o: &Self) -> [[Q; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &self.m[i][k] * &o.m[k][j]).sum()))
    }

    /// `AB - BA`.
    pub fn bracket(&self, o: &Self) -> Self {
        let (ab, ba) = (self.product(o), o.product(self));
        Sl3Element { m: std::array::from_fn(|i| std::array::from_fn(|j| &ab[i][j] - &ba[i][j])) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|c| c.is_zero())
    }

    /// The linear field `(x y z) A (d/dx, d/dy, d/dz)^T` on C^3.
    pub fn homogeneous_field(&self) -> [QPoly; 3] {
        let v = Vars::xyz();
        std::array::from_fn(|j| {
            let mut acc = QPoly::q_zero(&v);
            for i in 0..3 {
                acc = &acc + &QPoly::q_var(&v, i).scale(&self.m[i][j]);
            }
            acc
        })
    }

    /// `tau(A)` in an affine chart, as the pair of components along the
    /// chart's two coordinates (polynomials in `x, y, z` with the chart
    /// variable set to 1).
    pub fn field(&self, chart: Chart) -> (QPoly, QPoly) {
        let (i, j, k) = chart.indices();
        let z = self.homogeneous_field();
        let v = Vars::xyz();
        let one = Q::one();
        let p = &z[i] - &(&QPoly::q_var(&v, i) * &z[k]);
        let q = &z[j] - &(&QPoly::q_var(&v, j) * &z[k]);
        (p.eval_var(k, &one), q.eval_var(k, &one))
    }
}

impl fmt::Display for Sl3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| r.iter().map(crate::form::rat).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Bracket of two polynomial vector fields in the chart variables `(i, j)`.
pub fn field_bracket(chart: Chart, x: &(QPoly, QPoly), y: &(QPoly, QPoly)) -> (QPoly, QPoly) {
    let (i, j, _) = chart.indices();
    let apply = |v: &(QPoly, QPoly), f: &QPoly| &(&v.0 * &f.derivative(i)) + &(&v.1 * &f.derivative(j));
    (&apply(x, &y.0) - &apply(y, &x.0), &apply(x, &y.1) - &apply(y, &x.1))
}

/// `L_Z Omega` for the linear field of `a` and the homogeneous form of `f`.
fn lie_derivative(f: &Foliation, a: &Sl3Element) -> [QPoly; 3] {
    let z = a.homogeneous_field();
    let w = f.components();
    std::array::from_fn(|j| {
        let mut acc = QPoly::q_zero(&Vars::xyz());
        for i in 0..3 {
            acc = &acc + &(&z[i] * &w[j].derivative(i));
            acc = &acc + &w[i].scale(&a.m[j][i]);
        }
        acc
    })
}

fn cross(u: &[QPoly; 3], v: &[QPoly; 3]) -> [QPoly; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

#[derive(Clone, Debug)]
pub struct SymmetrySpace {
    pub basis: Vec<Sl3Element>,
}

impl SymmetrySpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn orbit_dimension(&self) -> usize {
        8 - self.basis.len()
    }

    /// Whether `a` lies in the span of the basis.
    pub fn contains(&self, a: &Sl3Element) -> bool {
        let mut rows: Vec<Vec<Q>> = self.basis.iter().map(|b| b.coordinates()).collect();
        let r0 = ExactMatrix::from_rows(rows.clone()).rank();
        rows.push(a.coordinates());
        ExactMatrix::from_rows(rows).rank() == r0
    }

    /// For a two-dimensional non-abelian algebra, a basis `(X, Y)` with
    /// `[X, Y] = Y`.
    pub fn affine_basis(&self) -> Option<(Sl3Element, Sl3Element)> {
        let [a, b] = self.basis.as_slice() else { return None };
        let y = a.bracket(b);
        if y.is_zero() {
            return None;
        }
        for e in [a, b] {
            let c = e.bracket(&y);
            // c is a multiple of y since the derived algebra is spanned by y
            let (k, l) = (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .find(|&(i, j)| !y.m[i][j].is_zero())?;
            let ratio = &c.m[k][l] / &y.m[k][l];
            if !ratio.is_zero() && c == y.scale(&ratio) {
                return Some((e.scale(&(Q::one() / ratio)), y));
            }
        }
        None
    }
}

/// Kernel of `A -> L_{tau(A)} Omega ^ Omega` on sl3.
pub fn symmetry_space(f: &Foliation) -> SymmetrySpace {
    let basis = Sl3Element::basis();
    let w = f.components();
    let mut rows: BTreeMap<(usize, Monomial), Vec<Q>> = BTreeMap::new();
    for (col, e) in basis.iter().enumerate() {
        let wedge = cross(&lie_derivative(f, e), w);
        for (comp, p) in wedge.iter().enumerate() {
            for (m, c) in p.terms() {
                rows.entry((comp, m.clone())).or_insert_with(|| vec![Q::zero(); 8])[col] = c.clone();
            }
        }
    }
    let matrix = if rows.is_empty() {
        ExactMatrix::zeros(0, 8)
    } else {
        ExactMatrix::from_rows(rows.into_values().collect())
    };
    let kernel = if matrix.rows() == 0 {
        (0..8).map(|i| (0..8).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
    } else {
        matrix.nullspace()
    };
    SymmetrySpace { basis: kernel.iter().map(|c| Sl3Element::from_coordinates(c)).collect() }
}

/// Result of testing one field.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryTest {
    pub symmetric: bool,
    /// The constant with `L_X omega = lambda omega`, when `X` is affine and
    /// a symmetry.
    pub lambda: Option<Q>,
}

/// Tests `L_X omega ^ omega = 0` for a polynomial field `X = (p, q)` in the
/// given chart.
pub fn is_symmetry(f: &Foliation, chart: Chart, p: &QPoly, q: &QPoly) -> SymmetryTest {
    let form = f.affine(chart);
    let v = Vars::xyz();
    let (p, q) = (p.with_vars(&v), q.with_vars(&v));
    let (l1, l2, wedge) = wedge_lie(&form, &p, &q);
    if !wedge.is_zero() {
        return SymmetryTest { symmetric: false, lambda: None };
    }
    let affine = [&p, &q].iter().all(|c| c.total_degree().is_none_or(|d| d <= 1));
    if !affine {
        return SymmetryTest { symmetric: true, lambda: None };
    }
    let (num, den) = if form.a.is_zero() { (&l2, &form.b) } else { (&l1, &form.a) };
    let lambda = den.leading().map(|(m, c)| &num.coeff(m) / c).unwrap_or_else(Q::zero);
    debug_assert!((&l1 - &form.a.scale(&lambda)).is_zero() && (&l2 - &form.b.scale(&lambda)).is_zero());
    SymmetryTest { symmetric: true, lambda: Some(lambda) }
}

/// Checks `phi^* Omega ^ Omega = 0` identically in the parameters of a
/// symbolic map.
pub fn verify_isotropy_family(f: &Foliation, family: &ProjectiveMap) -> bool {
    if family.det().is_zero() {
        return false;
    }
    let target = family.target_vars();
    let pulled = f.pullback_symbolic(family);
    let w: [QPoly; 3] = std::array::from_fn(|i| f.components()[i].with_vars(&target));
    cross(&pulled, &w).iter().all(|c| c.is_zero())
}

fn family(ex: u32, ey: u32) -> ProjectiveMap {
    let params = Vars::new(&["alpha", "beta"]);
    let alpha = QPoly::q_var(&params, 0);
    let z = QPoly::q_zero(&params);
    let one = QPoly::q_int(&params, 1);
    ProjectiveMap::symbolic(
        &params,
        [
            [alpha.pow(ex), z.clone(), z.clone()],
            [z.clone(), alpha.pow(ey), z.clone()],
            [QPoly::q_var(&params, 1), z, one],
        ],
    )
}

/// `(alpha^(d-1) x, alpha^d y) / (1 + beta x)`.
pub fn iso_family_f1(d: u32) -> ProjectiveMap {
    family(d - 1, d)
}

/// `(alpha^(d+1) x, alpha^d y) / (1 + beta x)`.
pub fn iso_family_f2(d: u32) -> ProjectiveMap {
    family(d + 1, d)
}

/// `(alpha^d x, alpha y)`.
pub fn iso_family_f0(d: u32) -> ProjectiveMap {
    family(d, 1).specialize(&[("beta", Q::zero())])
}
