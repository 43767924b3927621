use mbqc_core::estimators::EstimatorError;
use mbqc_core::mbqc::{MbqcError, PatternFileError};
use mbqc_core::numeric::NumericError;
use mbqc_core::protocols::ProtocolError;
use mbqc_core::zx::{ZxError, ZxParseError};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, or a request over a cap.
    #[error("{0}")]
    Usage(String),
    /// The computation itself failed (impossible branch, nonpositive purity, ...).
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PatternFileError> for CliError {
    fn from(e: PatternFileError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ZxParseError> for CliError {
    fn from(e: ZxParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::TooManyQubits { .. } | NumericError::DimensionOverflow { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<MbqcError> for CliError {
    fn from(e: MbqcError) -> Self {
        match e {
            MbqcError::Numeric(n) => n.into(),
            MbqcError::ImpossibleBranch { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ZxError> for CliError {
    fn from(e: ZxError) -> Self {
        match e {
            ZxError::Numeric(n) => n.into(),
            ZxError::Pattern(p) => p.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ProtocolError> for CliError {
    fn from(e: ProtocolError) -> Self {
        match e {
            ProtocolError::Numeric(n) => n.into(),
            ProtocolError::Mbqc(m) => m.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<EstimatorError> for CliError {
    fn from(e: EstimatorError) -> Self {
        match e {
            EstimatorError::Numeric(n) => n.into(),
            EstimatorError::NonPositivePurity(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
