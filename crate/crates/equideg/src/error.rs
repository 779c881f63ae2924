use alloc::string::String;

/// Failures reported by the computational kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group too large: order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("generators do not define a group on {0} points")]
    InvalidGenerators(usize),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{what}: index {index} must divide {m}")]
    Divisibility { what: &'static str, index: u32, m: u32 },
    #[error("incompatible subgroup pair: {0}")]
    IncompatiblePair(String),
    #[error("inexact division in recurrence at {context}: {numerator} / {denominator}")]
    InexactDivision {
        context: String,
        numerator: i128,
        denominator: i128,
    },
    #[error("class {0} has an infinite Weyl group and is not a Burnside generator")]
    InfiniteWeyl(String),
    #[error("unknown class: {0}")]
    UnknownClass(String),
    #[error("invalid representation index: {0}")]
    InvalidRepresentation(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("zero eigenvalue: {0}")]
    ZeroEigenvalue(String),
    #[error("steady-state degeneracy: {0}")]
    SteadyState(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
