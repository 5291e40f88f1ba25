use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter index must be positive")]
    ZeroLetter,
    #[error("words must be non-empty")]
    EmptyWord,
    #[error("invalid word {0:?}: {1}")]
    InvalidWord(String, String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("letter {0} is outside the domain of the permutation")]
    LetterOutsideDomain(String),
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("unsupported query: {0}")]
    Unsupported(String),
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("semigroup {0} has no zero element")]
    NoZero(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("bound out of range: {0}")]
    Bounds(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("word {0} is not in the carrier")]
    ForeignWord(String),
    #[error("congruences live on different carriers")]
    CarrierMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a partial order: {0}")]
    NotAnOrder(String),
    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("invalid trace step {step}: {message}")]
    InvalidTrace { step: usize, message: String },
}
