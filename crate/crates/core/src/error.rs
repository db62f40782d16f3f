use std::fmt;

use thiserror::Error;

/// A hypothesis of one of the genus or classification routines that the
/// given instance does not satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precondition {
    QComposite { q: u64 },
    PEqualsQ { q: u64 },
    Ramified { q: u64, p: u64, e: usize },
    Degenerate { q: u64, p: u64 },
    QTooSmall { q: u64, min: u64 },
    PNotOdd { p: u64 },
    NotPsl2 { label: String },
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::QComposite { q } => write!(f, "q = {q} is not prime"),
            Precondition::PEqualsQ { q } => write!(f, "p = q = {q} is excluded"),
            Precondition::Ramified { q, p, e } => {
                write!(
                    f,
                    "ideal above p = {p} is ramified in Z[lambda_{q}] (e = {e})"
                )
            }
            Precondition::Degenerate { q, p } => {
                write!(
                    f,
                    "mu_{q} lies in the ideal above p = {p} (degenerate reduction)"
                )
            }
            Precondition::QTooSmall { q, min } => write!(f, "q = {q} is below the minimum {min}"),
            Precondition::PNotOdd { p } => write!(f, "p = {p} must be an odd prime"),
            Precondition::NotPsl2 { label } => {
                write!(f, "Galois group is {label}, not PSL2 of the residue field")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("q must be an odd integer >= 3, got {0}")]
    InvalidQ(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("n must be positive")]
    ZeroIndex,
    #[error("polynomial must be monic")]
    NonMonic,
    #[error("polynomial is not irreducible mod {p}")]
    Reducible { p: u64 },
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("ideal belongs to q = {ideal_q}, element to q = {elem_q}")]
    MismatchedQ { ideal_q: u64, elem_q: u64 },
    #[error("matrix determinant is not 1")]
    NotUnimodular,
    #[error("cap exceeded: {what} would exceed {cap} elements")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("precondition violated: {0}")]
    Precondition(Precondition),
    #[error("fiber sums to {sum}, expected the covering degree {degree}")]
    FiberSum { sum: String, degree: String },
    #[error("genus is not a nonnegative integer: {0}")]
    NonIntegralGenus(String),
    #[error("oracle mismatch for q = {q}, p = {p}, ideal {ideal}: {detail}")]
    OracleMismatch {
        q: u64,
        p: u64,
        ideal: usize,
        detail: String,
    },
    #[error("prediction mismatch: {0}")]
    PredictionMismatch(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<Precondition> for Error {
    fn from(p: Precondition) -> Self {
        Error::Precondition(p)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
