use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into three families, see [`ErrorClass`]: bad input parameters,
/// falsified mathematical claims, and internal or capacity failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported, p must be an odd prime")]
    EvenCharacteristic,
    #[error("field of size {p}^{m} exceeds the 2^24 table cap")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("parameter {name} must be positive")]
    NonPositive { name: &'static str },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{r} does not divide the extension degree {m}")]
    NotADivisor { r: u32, m: u32 },
    #[error("element {index} does not lie in the subfield of degree {r}")]
    NotInSubfield { index: u32, r: u32 },
    #[error("element index {index} out of range for a field of size {q}")]
    InvalidElement { index: u64, q: u64 },
    #[error("s = m/d = {s} must be odd and at least 5")]
    InvalidS { s: u32 },
    #[error("t = {t} must divide d = {d} with d/t odd")]
    InvalidT { t: u32, d: u32 },
    #[error("parity-check factor {which} is degenerate: {reason}")]
    DegenerateFactor { which: String, reason: String },
    #[error("cyclotomic sum is not rational: tail counts {tail:?}")]
    NotRational { tail: Vec<u64> },
    #[error("rank {rank} of a nonzero form is below s - 4 = {bound}")]
    RankBoundViolation { rank: usize, bound: usize },
    #[error("{name}: expected {expected}, found {actual}")]
    LemmaMismatch {
        name: String,
        expected: String,
        actual: String,
    },
    #[error("exact integer capacity exceeded in {0}")]
    IntegerOverflow(&'static str),
    #[error("closed-form frequency {0} is not a non-negative integer")]
    NonIntegralFrequency(String),
    #[error("weight for T = {0} is not an integer")]
    NonIntegralWeight(i64),
    #[error("moment system solution {0} is not a non-negative integer")]
    NonIntegralSolution(String),
    #[error("moment system is singular")]
    SingularSystem,
    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("value {0} is outside the admissible set")]
    InadmissibleValue(i64),
}

/// Coarse grouping used to map failures onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The inputs were rejected before any computation.
    InvalidInput,
    /// A computed quantity contradicts a claimed identity.
    Falsified,
    /// Capacity limits, budget limits and implementation faults.
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            NonPrime(_)
            | EvenCharacteristic
            | FieldTooLarge { .. }
            | NonPositive { .. }
            | NotADivisor { .. }
            | NotInSubfield { .. }
            | InvalidElement { .. }
            | InvalidS { .. }
            | InvalidT { .. } => ErrorClass::InvalidInput,
            DegenerateFactor { .. }
            | RankBoundViolation { .. }
            | LemmaMismatch { .. }
            | NonIntegralFrequency(_)
            | NonIntegralWeight(_)
            | NonIntegralSolution(_)
            | InadmissibleValue(_) => ErrorClass::Falsified,
            DivisionByZero
            | NotRational { .. }
            | IntegerOverflow(_)
            | SingularSystem
            | BudgetExceeded(_) => ErrorClass::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
