use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {func}: argument {value} outside the admissible range")]
    Domain { func: &'static str, value: f64 },

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent grid lengths: expected {expected}, found {found} for `{field}`")]
    GridLength {
        field: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("singular linear system at row {row} (condition estimate {condition:.3e})")]
    Singular { row: usize, condition: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
