use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse Cartan type {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("unsupported rank {rank} for family {family}: {constraint}")]
    RankConstraint {
        family: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("rank mismatch: expected {expected}, got {actual}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("simple index {index} out of range 0..{rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("coordinate {value} exceeds the supported bound {bound}")]
    CoordinateTooLarge { value: i64, bound: i64 },

    #[error("operation requires a simple Cartan type, got {0}")]
    NotSimple(String),

    #[error("sublattice has infinite index in Z^{0}")]
    InfiniteIndex(usize),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("{what}: size {actual} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        actual: u128,
    },

    /// A computed value contradicts a proven identity. Always a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}
