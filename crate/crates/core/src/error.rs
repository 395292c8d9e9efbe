use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("type error: {0}")]
    Type(String),

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("codec error: {0}")]
    Codec(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("grid of {cells} cells exceeds the cap of {cap}")]
    Capacity { cells: u128, cap: u64 },

    #[error("invalid generator spec: {0}")]
    Spec(String),

    /// A parse or type failure pinned to one table cell.
    #[error("rule {rule}, column {column}: {source}")]
    Cell {
        rule: String,
        column: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn at_cell(self, rule: &str, column: &str) -> Self {
        Error::Cell {
            rule: rule.to_string(),
            column: column.to_string(),
            source: Box::new(self),
        }
    }

    /// The innermost error, looking through cell locations.
    pub fn root(&self) -> &Error {
        match self {
            Error::Cell { source, .. } => source.root(),
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
