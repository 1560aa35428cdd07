use regorb_core::boundlib::BoundError;
use regorb_core::graphcert::GraphError;
use regorb_core::orbitengine::EngineError;
use regorb_core::repkit::RepError;
use regorb_core::spechtmod::SpechtError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Failure(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) | CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Parse(_) => 4,
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Parse { .. } => CliError::Parse(e.to_string()),
            RepError::ClosureBudget(_) | RepError::Undecided { .. } => CliError::Budget(e.to_string()),
            RepError::BadScalarOrder { .. } | RepError::NotSymmetric | RepError::NoParityMap(_) | RepError::TooSmall(_) => {
                CliError::Usage(e.to_string())
            }
            RepError::Io(_) => CliError::Failure(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Budget(_) | EngineError::TupleBudget(_) => CliError::Budget(e.to_string()),
            EngineError::Rep(r) => r.into(),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<SpechtError> for CliError {
    fn from(e: SpechtError) -> Self {
        match e {
            SpechtError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            SpechtError::InvalidPartition(_) | SpechtError::NotRegular { .. } | SpechtError::FdpmRange { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Budget(_) => CliError::Budget(e.to_string()),
            GraphError::Unsupported { .. } | GraphError::Vertex { .. } => CliError::Usage(e.to_string()),
            GraphError::Specht(s) => s.into(),
        }
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("io error: {e}"))
    }
}
