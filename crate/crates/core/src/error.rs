use thiserror::Error;

/// Errors raised by the algebra layer and the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial has degree zero in variable {0}")]
    ZeroDegreeInVariable(usize),

    #[error("empty or all-zero generator list")]
    EmptyIdeal,

    #[error("{0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable code used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VariableMismatch { .. } => "E_VARIABLE_MISMATCH",
            Error::VariableOutOfRange { .. } => "E_VARIABLE_RANGE",
            Error::ZeroPolynomial => "E_ZERO_POLYNOMIAL",
            Error::NotHomogeneous => "E_NOT_HOMOGENEOUS",
            Error::ZeroDegreeInVariable(_) => "E_ZERO_DEGREE",
            Error::EmptyIdeal => "E_EMPTY_IDEAL",
            Error::Domain(_) => "E_DOMAIN",
            Error::Internal(_) => "E_INTERNAL",
            Error::Parse { .. } => "E_PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
