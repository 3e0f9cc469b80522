//! Exact algebra for plane foliation computations: sparse multivariate
//! polynomials over `Q`, `F_p` and `Q[t]/(m)`, gcds and resultants, rational
//! roots, linear factors of ternary forms and fraction-free linear algebra.

pub mod factor;
pub mod gcd;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod ring;
pub mod roots;
pub mod upoly;

pub use factor::{hessian, linear_homogeneous_factors, LinearFactors};
pub use gcd::{gcd, gcd_many, resultant, squarefree_decomposition, squarefree_part, PolyRing};
pub use linalg::{bareiss_det, ExactMatrix};
pub use parse::{parse_definitions, parse_polynomial, ParseError};
pub use poly::{Monomial, Polynomial, QPoly, Vars};
pub use quotient::{Inversion, QuotientRing};
pub use ring::{q, qf, Field, Integers, PrimeField, Rationals, Ring, Q};
pub use roots::rational_roots;
pub use upoly::UniPoly;
