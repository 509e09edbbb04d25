use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field size {q} exceeds the supported maximum {cap}")]
    CapExceeded { q: u32, cap: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not a valid element encoding for a field of size {q}")]
    BadEncoding { value: u32, q: u32 },
    #[error("level {level} is outside 0..={m}")]
    BadLevel { level: usize, m: usize },
    #[error("count {count} is outside 0..={max}")]
    CountOutOfRange { count: u128, max: u128 },
    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: u128, max: u128 },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration needs {} evaluations, budget is {budget}", size_text(*.required))]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("ambient mismatch: expected {expected} variables, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("witness has {found} rational points, expected {expected}")]
    WitnessInvalid { expected: u128, found: u128 },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Saturated counts print as a bound rather than as `u128::MAX`.
fn size_text(n: u128) -> String {
    if n == u128::MAX {
        "more than 3.4e38".to_string()
    } else {
        n.to_string()
    }
}
