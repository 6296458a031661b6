use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Validation { path: String, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind { name: String, expected: &'static str, found: &'static str },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] topact::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type CliResult<T> = Result<T, CliError>;
