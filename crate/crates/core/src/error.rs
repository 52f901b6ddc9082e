use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system type {0}{1}")]
    UnsupportedType(char, usize),
    #[error("unsupported rank {0} for a matrix realization (expected 2..=4)")]
    UnsupportedRank(usize),
    #[error("{0} is not a valid quadratic discriminant (need squarefree, not a square)")]
    InvalidDiscriminant(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no solution for the Cartan part constraints")]
    NoSolution,
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("r-matrix verification failed: {0}")]
    VerificationFailed(String),
    #[error("bialgebra axiom {axiom} fails at basis element {witness}")]
    AxiomViolation { axiom: &'static str, witness: usize },
    #[error("map is not a Lie algebra morphism (fails on basis pair ({0}, {1}))")]
    NotLieMorphism(usize, usize),
    #[error("diagram automorphism does not satisfy the pi conditions for this quadruple")]
    PiConditionViolated,
    #[error("fixed space has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("descended cobracket leaves the fixed form at basis element {0}")]
    NotClosed(usize),
}
