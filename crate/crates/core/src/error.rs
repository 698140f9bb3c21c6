use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("size bound exceeded: {what} = {value} > {limit}")]
    Size { what: String, value: u64, limit: u64 },
    #[error("truncation exceeded: {0}")]
    TruncationExceeded(String),
    #[error("classification error: {0}")]
    Classification(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain_error",
            Error::Argument(_) => "argument_error",
            Error::Composition(_) => "composition_error",
            Error::Size { .. } => "size_error",
            Error::TruncationExceeded(_) => "truncation_exceeded",
            Error::Classification(_) => "not_finite_type",
            Error::Construction(_) => "construction_error",
            Error::FieldMismatch(_) => "field_mismatch",
            Error::Parse(_) => "malformed_input",
        }
    }

    pub(crate) fn size(what: &str, value: u64, limit: u64) -> Self {
        Error::Size {
            what: what.to_string(),
            value,
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
