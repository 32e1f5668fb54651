use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    Invalid(ValidationReport),

    #[error("no feasible selection exists")]
    Infeasible,

    #[error("selection does not match the instance: {0}")]
    BadSelection(String),

    #[error("instance is not clique-structured: {0}")]
    NotCliqueStructured(String),

    #[error("enumeration of {count} selections exceeds the limit of {limit}")]
    EnumerationLimit { count: u128, limit: u128 },

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
