use thiserror::Error;

use crate::arith::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("fiber over T/S = {root} has rank {rank}, expected 2")]
    UnexpectedFiberRank { root: String, rank: usize },

    #[error("fiber over T/S = {root} splits into rational lines")]
    RationalLines { root: String },

    #[error("line is contained in the quartic")]
    LineOnCurve,

    #[error("the zero line does not define a line")]
    ZeroLine,

    #[error("the zero vector has no stabilizer of index 63")]
    ZeroVector,

    #[error("resultant of two zero polynomials")]
    ZeroPolynomials,

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot factor {0}")]
    FactorizationFailed(String),

    #[error("no parameter tuple found below bound {0}")]
    SearchExhausted(u64),

    #[error("value out of supported range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("quartic is singular; re-sample u (suggested u = {suggested_u})")]
    NotSmooth { suggested_u: String },

    #[error("parameter validation failed: {}", .0.summary())]
    Validation(Box<ValidationReport>),

    #[error("2-subgroup of order {order} cannot be enlarged inside a group with 2-part {target}")]
    SylowStalled { order: usize, target: usize },

    #[error("no elementary abelian subgroup of order 32 passes both fixed-point conditions")]
    NoCertifiedSubgroup,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
