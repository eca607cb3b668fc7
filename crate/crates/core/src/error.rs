use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Gram block is not symmetric positive definite: {0}")]
    NotSpd(String),
    #[error("linear form {0} is the zero form")]
    ZeroForm(usize),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("divisor {0} is not a scalar times a product of linear forms")]
    NonLinearPole(String),
    #[error("division by zero")]
    ZeroDivision,
    #[error("germ is not holomorphic at zero")]
    NotHolomorphic,
    #[error("variable index {index} out of range 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("permutation of size {found} does not match ambient dimension {expected}")]
    PermutationSizeMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a permutation of 1..=n")]
    NotPermutation(Vec<usize>),
    #[error("{k}! permutations exceed the factorial budget k <= {budget}")]
    DegreeBudgetExceeded { k: usize, budget: usize },
    #[error("polar certificate violated: {0}")]
    PolarCertificate(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
