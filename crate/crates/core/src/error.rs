use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element {element:?} does not belong to group with invariant factors {factors:?}")]
    SpecMismatch {
        element: Vec<u64>,
        factors: Vec<u64>,
    },

    #[error("operands live in different groups ({left:?} vs {right:?})")]
    GroupMismatch { left: Vec<u64>, right: Vec<u64> },

    #[error("rank {rank} out of range for group of order {order}")]
    RankOutOfRange { rank: u64, order: u64 },

    #[error("coefficient overflow in group-ring arithmetic")]
    Overflow,

    #[error("group order {found} does not match the required order {expected}")]
    OrderMismatch { expected: u64, found: u64 },

    #[error(
        "expected a set (0/1 coefficients) but coefficient {coefficient} appears at rank {rank}"
    )]
    NotASet { rank: usize, coefficient: i64 },

    #[error("invalid ball parameters: {0}")]
    InvalidBall(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("group of even order {0} has self-inverse non-identity elements")]
    EvenOrder(u64),

    #[error("search refused: {candidates} candidates exceed the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not an admissible modulus (must be an odd prime)")]
    NotAdmissiblePrime(u64),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
