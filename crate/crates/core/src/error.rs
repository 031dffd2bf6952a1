use std::fmt;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The spike norm is outside the regime where the requested quantity is defined.
    #[error("h = {h} is out of regime: {reason}")]
    OutOfRegime { h: f64, reason: String },

    /// The contour does not satisfy the enclosure or half-plane requirements.
    #[error("contour geometry: {0}")]
    Geometry(String),

    /// The saddle point z0(h) falls at or below the largest sample eigenvalue.
    #[error("saddle collision: z0(h) = {z0} does not exceed lambda_1 = {lambda1}")]
    SaddleCollision { z0: f64, lambda1: f64 },

    /// A numerical routine failed to converge or factorize.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// The input carries no information (for instance a zero trace).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The test cannot be applied at these dimensions.
    #[error("test not applicable: {0}")]
    Inapplicable(String),

    /// Malformed eigenvalue input.
    #[error("parse error at {location}: {message}")]
    Parse { location: Location, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Where a parse error occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    Offset(u64),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Offset(o) => write!(f, "byte offset {o}"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn out_of_regime(h: f64, reason: impl Into<String>) -> Error {
    Error::OutOfRegime {
        h,
        reason: reason.into(),
    }
}
