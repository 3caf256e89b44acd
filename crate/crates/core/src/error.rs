use std::fmt;

use thiserror::Error;

/// A `(filtration degree, differential length)` pair the engine could not
/// decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PagePosition {
    pub degree: usize,
    pub length: usize,
}

impl fmt::Display for PagePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, r={})", self.degree, self.length)
    }
}

fn list(positions: &[PagePosition]) -> String {
    positions.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),

    #[error("degree {degree} is out of range (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },

    #[error("cup product of ({p},{i}) and ({q},{j}) is not recorded")]
    MissingProduct { p: usize, i: usize, q: usize, j: usize },

    #[error("torsion-differential-unknown: cannot rule out the untwisted torsion differential at {}", list(.0))]
    TorsionDifferentialUnknown(Vec<PagePosition>),

    #[error("higher-differential-unknown: cannot rule out differentials at {}", list(.0))]
    HigherDifferentialUnknown(Vec<PagePosition>),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("inadmissible twist: {0}")]
    InadmissibleTwist(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("method not applicable: {0}")]
    MethodNotApplicable(String),

    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors where the engine declines to answer, as opposed to
    /// malformed input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::TorsionDifferentialUnknown(_)
                | Error::HigherDifferentialUnknown(_)
                | Error::Unsupported(_)
                | Error::InadmissibleTwist(_)
                | Error::HypothesisViolated(_)
                | Error::MethodNotApplicable(_)
                | Error::MissingProduct { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
