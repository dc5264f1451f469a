use num_bigint::{BigInt, BigUint};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("gcd is {0}, generators must be coprime")]
    GcdNotOne(BigUint),

    /// A denumerant table would need more entries than the configured cap.
    #[error("resource limit: {requested} table entries requested, cap is {cap}")]
    ResourceLimit { requested: String, cap: usize },

    #[error("p = {p} is outside the closed-form validity range 0..={max}")]
    OutOfValidityRange { p: u64, max: BigInt },

    #[error("no closed-form case applies to these parameters")]
    NoClosedFormCase,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal assertion failed: {0}")]
    AssertionFailure(String),
}

impl Error {
    pub(crate) fn resource(requested: impl ToString, cap: usize) -> Self {
        Error::ResourceLimit {
            requested: requested.to_string(),
            cap,
        }
    }

    /// Short stable tag, used in reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::GcdNotOne(_) => "GcdNotOne",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::OutOfValidityRange { .. } => "OutOfValidityRange",
            Error::NoClosedFormCase => "NoClosedFormCase",
            Error::Unsupported(_) => "Unsupported",
            Error::AssertionFailure(_) => "AssertionFailure",
        }
    }
}
