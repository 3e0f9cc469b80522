use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("the zero form does not define a foliation")]
    ZeroForm,
    #[error("components are not homogeneous of a common degree")]
    NotHomogeneous,
    #[error("Euler relation x*a + y*b + z*c = 0 fails")]
    Euler,
    #[error("form is not primitive: common factor {factor}")]
    NotPrimitive { factor: String },
    #[error("projective map is singular")]
    SingularMap,
    #[error("inconsistent data: {0}")]
    Internal(String),
    #[error("point is singular for the foliation")]
    SingularPoint,
    #[error("point is not singular for the foliation")]
    NotSingular,
    #[error("point does not lie on the line")]
    NotOnLine,
    #[error("limit form has the common factor {factor}")]
    DegenerateLimit { factor: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
