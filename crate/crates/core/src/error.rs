use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("generators act on different degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("cycle notation: {0}")]
    Parse(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation needs a nontrivial group")]
    TrivialGroup,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("property violated: {0}")]
    PropertyViolated(String),
    #[error("invalid refinement chain: {0}")]
    InvalidChain(String),
    #[error("extensions have different quotient groups")]
    QuotientMismatch,
    #[error("map is not a group action: {0}")]
    NotAction(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("bound {requested} exceeds the memory budget of {budget} entries")]
    BudgetExceeded { requested: u64, budget: u64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
    #[error("invalid base field data: {0}")]
    InvalidField(String),
    #[error("output: {0}")]
    Output(String),
    #[error("no cyclotomic data covers modulus {0}")]
    UnsupportedModulus(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
