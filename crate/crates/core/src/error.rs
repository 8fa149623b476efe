use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("precision exhausted at {bits} bits: interval still contains zero")]
    PrecisionExhausted { bits: u32 },

    #[error("index {index} out of range for ground set of size {m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vectors do not span the ambient space (rank {rank} < {n})")]
    NoSpan { rank: usize, n: usize },

    #[error("polytope is not simple: vertex with {active} active facets in dimension {n}")]
    NotSimple { active: usize, n: usize },

    #[error("polytope is empty, unbounded or lower-dimensional: {0}")]
    DegeneratePolytope(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("search exceeded its cap: {0}")]
    Cap(String),
}

impl Error {
    /// Short machine-readable tag used in JSON reports.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::DivisionByZero => "division-by-zero",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::NotAFace(_) => "not-a-face",
            Error::Dimension(_) => "dimension-mismatch",
            Error::NoSpan { .. } => "no-span",
            Error::NotSimple { .. } => "not-simple",
            Error::DegeneratePolytope(_) => "degenerate-polytope",
            Error::Shape(_) => "shape-mismatch",
            Error::Input(_) => "invalid-input",
            Error::Invariant(_) => "invariant-violated",
            Error::Cap(_) => "cap-exceeded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
