use lgcy_core::cayley::CayleyError;
use lgcy_core::mirror::MirrorError;
use lgcy_core::modular::ModularError;
use lgcy_core::npoint::NpointError;
use lgcy_core::theta::ThetaError;
use lgcy_core::virasoro::VirasoroError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("{what} too small: need at least {needed}, got {given}")]
    InsufficientOrder { what: &'static str, needed: u64, given: u64 },
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
    #[error("computation failed: {0}")]
    Computation(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::InvalidRequest(_) => 2,
            CliError::InsufficientOrder { .. } => 3,
            _ => 4,
        }
    }
}

impl From<NpointError> for CliError {
    fn from(e: NpointError) -> Self {
        match e {
            NpointError::OrderTooSmall { needed, available } => CliError::InsufficientOrder {
                what: "z-order",
                needed: needed.into(),
                given: available.into(),
            },
            NpointError::InvalidLegs(_) | NpointError::InvalidPsi(_) => CliError::InvalidRequest(e.to_string()),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::OrderTooSmall { needed, available } => CliError::InsufficientOrder {
                what: "order",
                needed: needed as u64,
                given: available as u64,
            },
            CayleyError::TableTooSmall { needed, available } => CliError::InsufficientOrder {
                what: "b-table bound",
                needed: needed.into(),
                given: available.into(),
            },
            CayleyError::Unsupported(_) | CayleyError::NoGenus(_) | CayleyError::Unstable => {
                CliError::InvalidRequest(e.to_string())
            }
            CayleyError::Npoint(n) => n.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<MirrorError> for CliError {
    fn from(e: MirrorError) -> Self {
        match e {
            MirrorError::OrderTooSmall { given, minimum } => CliError::InsufficientOrder {
                what: "order",
                needed: minimum as u64,
                given: given as u64,
            },
            MirrorError::Pole(_) => CliError::InvalidRequest(e.to_string()),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<VirasoroError> for CliError {
    fn from(e: VirasoroError) -> Self {
        CliError::InvalidRequest(e.to_string())
    }
}

impl From<ThetaError> for CliError {
    fn from(e: ThetaError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<ModularError> for CliError {
    fn from(e: ModularError) -> Self {
        match e {
            ModularError::InsufficientOrder { needed, available } => CliError::InsufficientOrder {
                what: "order",
                needed: needed as u64,
                given: available.max(0) as u64,
            },
            ModularError::InvalidWeight(_) => CliError::InvalidRequest(e.to_string()),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<lgcy_core::series::SeriesError> for CliError {
    fn from(e: lgcy_core::series::SeriesError) -> Self {
        CliError::Computation(e.to_string())
    }
}
