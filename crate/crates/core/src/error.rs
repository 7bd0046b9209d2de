use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("precedence list is not a permutation of the {0} letters")]
    NotPermutation(usize),
    #[error("letter {letter} has weight 0; theta-lex needs positive weights to be an N-order")]
    ZeroWeight { letter: String },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error(
        "order kind `{0}` is rejected: series computations require an admissible N-order \
         (every bounded-above set of words must be finite); only deg-lex, lex and theta-lex \
         with positive integer weights are supported"
    )]
    UnsupportedKind(String),
    #[error("word uses letter index {index} but the order covers only {letters} letters")]
    AlphabetMismatch { index: usize, letters: usize },
    #[error("the {0} order is not admissible and cannot drive a rewriting system")]
    NotAdmissible(String),
    #[error("the {0} order is not an N-order and cannot drive series reduction")]
    NotNOrder(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation on the zero polynomial")]
    ZeroPolynomial,
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier { name: String, line: usize, column: usize },
    #[error("relation {index} (`{text}`) has nonzero constant term {constant}")]
    ConstantTerm { index: usize, text: String, constant: String },
    #[error("relation {index}: {source}")]
    Relation {
        index: usize,
        #[source]
        source: Box<ParseError>,
    },
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{what} exceeds the safety cap of {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
