use jacobi_core::Error as CoreError;

/// Malformed input at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Math(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 1 for mathematical failures, 2 for unreadable or malformed input and
    /// 3 for precondition violations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Math(_) => 1,
            CliError::Core(e) => match e {
                CoreError::Syntax { .. } | CoreError::UnknownIdentifier { .. } | CoreError::NotPolynomial => 2,
                CoreError::NoPolynomialSolution { .. } | CoreError::DivisionNearZero { .. } | CoreError::NotContact { .. } => 1,
                _ => 3,
            },
        }
    }
}
