use flopcalc::catalog::CatalogError;
use flopcalc::coeff::{CoeffError, ParseError};
use flopcalc::contraction::ContractionError;
use flopcalc::flops::FlopsError;
use flopcalc::ncgb::GbError;
use flopcalc::pathalg::PathAlgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}:{source}")]
    Parse { origin: String, source: ParseError },
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Domain(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    /// A check ran to completion and failed; the report has already been written.
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::CheckFailed(_) | CliError::Output(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Budget(_) => "budget",
            CliError::Domain(_) => "domain",
            CliError::CheckFailed(_) => "check",
            CliError::Output(_) => "io",
        }
    }

    pub fn parse(origin: impl Into<String>, source: ParseError) -> Self {
        CliError::Parse { origin: origin.into(), source }
    }
}

fn from_gb(e: GbError) -> CliError {
    match e {
        GbError::Budget { .. } => CliError::Budget(e.to_string()),
        other => CliError::Domain(other.to_string()),
    }
}

impl From<GbError> for CliError {
    fn from(e: GbError) -> Self {
        from_gb(e)
    }
}

impl From<FlopsError> for CliError {
    fn from(e: FlopsError) -> Self {
        match e {
            FlopsError::Gb(g) => from_gb(g),
            FlopsError::Parse(p) => CliError::parse("input", p),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ContractionError> for CliError {
    fn from(e: ContractionError) -> Self {
        match e {
            ContractionError::Gb(g) => from_gb(g),
            ContractionError::BadVertex(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownName(_) | CatalogError::BadLength(_) => CliError::Usage(e.to_string()),
            CatalogError::Parse(p) => CliError::parse("catalog", p),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<PathAlgError> for CliError {
    fn from(e: PathAlgError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        CliError::Domain(e.to_string())
    }
}
