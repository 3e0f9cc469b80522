//! Degree-`d` holomorphic foliations of the projective plane: exact local
//! and global invariants, inflection divisors, isotropy, degenerations and
//! orbit-closure certificates.

pub mod certificates;
pub mod corpus;
pub mod degeneration;
pub mod error;
pub mod foliation;
pub mod form;
pub mod inflection;
pub mod intersect;
pub mod local;
pub mod points;
pub mod solve;
pub mod symmetry;

pub use error::{Error, Result};
pub use foliation::{AffineForm, Chart, Foliation, ProjectiveMap};
pub use points::{singular_points, ProjectivePoint, SingularPoint, SingularSet};
