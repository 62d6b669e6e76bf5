use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("search exhausted at limit {limit}")]
    Exhausted { limit: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("registry case {id}: {message}")]
    Registry { id: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
