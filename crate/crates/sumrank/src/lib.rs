//! Folded linearized Reed-Solomon (FLRS) and folded skew Reed-Solomon (FSRS)
//! codes in the sum-rank and skew metrics: construction, interpolation-based
//! list / probabilistic-unique decoding, and a sum-rank channel simulator.

pub mod codes;
pub mod decode;
pub mod field;
mod fqpoly;
pub mod linalg;
pub mod sim;
pub mod skew;
pub mod textio;

use std::fmt;

#[derive(Debug)]
pub enum Error {
    InvalidParameter(String),
    ContextMismatch,
    DivisionByZero,
    NonzeroDerivation,
    NotPIndependent,
    Parse(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::ContextMismatch => write!(f, "field context mismatch"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonzeroDerivation => {
                write!(f, "operation requires a zero derivation")
            }
            Error::NotPIndependent => write!(f, "evaluation points are not P-independent"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
