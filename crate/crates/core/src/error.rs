use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    /// Exact division left a nonzero remainder.
    NotDivisible,
    /// The basis of a condition space (or a kernel list) is linearly dependent.
    Degenerate(String),
    /// An operator coefficient is not polynomial-exponential.
    NotPolyExp,
    /// The polynomial does not lie in the ring `A_C`.
    NotInRing,
    /// `|λ·x|` exceeded the evaluation bound.
    Overflow,
    /// A sample point sits too close to a pole.
    NearPole,
    Parse(String),
    Invalid(String),
    /// A certification that must hold by construction failed.
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NotDivisible => f.write_str("not exactly divisible"),
            Error::Degenerate(m) => write!(f, "degenerate input: {}", m),
            Error::NotPolyExp => f.write_str("coefficient is not polynomial-exponential"),
            Error::NotInRing => f.write_str("polynomial is not in the ring A_C"),
            Error::Overflow => f.write_str("exponent too large for floating evaluation"),
            Error::NearPole => f.write_str("sample point too close to a pole"),
            Error::Parse(m) => write!(f, "parse error: {}", m),
            Error::Invalid(m) => write!(f, "invalid input: {}", m),
            Error::Internal(m) => write!(f, "internal certification failure: {}", m),
        }
    }
}

impl core::error::Error for Error {}
