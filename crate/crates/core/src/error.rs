use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive integers")]
    ZeroGenerator,
    #[error("generators have gcd {gcd} > 1, conductor is infinite")]
    NonCoprime { gcd: u64 },
    #[error("1 is a generator: the semigroup is N (smooth point)")]
    Smooth,
    #[error("{quantity} {value} exceeds the supported bound {bound}")]
    TooLarge {
        quantity: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("element {element} is outside [0, {bound})")]
    OutOfRange { element: usize, bound: usize },
    #[error("set is not stable: {element} + {generator} is missing")]
    NotStable { element: usize, generator: usize },
    #[error("expected codimension {expected}, got {found}")]
    WrongCodim { expected: usize, found: usize },
    #[error("operation requires curve type {expected}, semigroup is {found}")]
    WrongCurveType {
        expected: &'static str,
        found: &'static str,
    },
    #[error("module must contain 0 (normalized)")]
    NotNormalized,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("index {index} outside [{min}, {max}]")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("family has no constant term: t-order over the parameter field is {order}")]
    NotAUnit { order: usize },
    #[error("generic rank {found} is below the expected {expected}")]
    RankDrop { expected: usize, found: usize },
    #[error("field size {q} not supported (use 2 or 3)")]
    UnsupportedField { q: u32 },
}

impl Error {
    /// Stable machine-readable name, used in CLI error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "EmptyGenerators",
            Error::ZeroGenerator => "ZeroGenerator",
            Error::NonCoprime { .. } => "NonCoprime",
            Error::Smooth => "Smooth",
            Error::TooLarge { .. } => "TooLarge",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::NotStable { .. } => "NotStable",
            Error::WrongCodim { .. } => "WrongCodim",
            Error::WrongCurveType { .. } => "WrongCurveType",
            Error::NotNormalized => "NotNormalized",
            Error::Precondition(_) => "Precondition",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::Syntax { .. } => "SyntaxError",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::RankDrop { .. } => "RankDrop",
            Error::UnsupportedField { .. } => "UnsupportedField",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
