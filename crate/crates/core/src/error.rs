use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A root that is needed does not live in the current cyclotomic field.
    #[error("extend field: polynomial {poly} does not split over Q(zeta_{conductor})")]
    ExtendField { poly: String, conductor: u32 },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("axioms fail: {0}")]
    Axioms(String),

    #[error("no antipode: {0}")]
    NoAntipode(String),

    #[error("no adapted basis: {0}")]
    NoAdaptedBasis(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An identity that holds for every correct implementation failed.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Mathematical errors (as opposed to usage or parse errors).
    pub fn is_mathematical(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::Precondition(_) | Error::AmbientMismatch { .. } | Error::Shape(_))
    }
}
