use gkdefect::fixtures::FixtureError;
use gkdefect::invariants::InvariantError;
use gkdefect::padic::PadicError;
use gkdefect::regulators::RegulatorError;
use gkdefect::scan::ScanError;
use gkdefect::theta::ThetaError;

/// Exit status classes: 1 domain, 2 precision, 3 internal.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Precision(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Precision(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Precision(m) | CliError::Internal(m) => m,
        }
    }
}

fn padic(e: PadicError) -> CliError {
    match e {
        PadicError::PrecisionExhausted => CliError::Precision(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        padic(e)
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        match e {
            FixtureError::Padic(p) => padic(p),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<RegulatorError> for CliError {
    fn from(e: RegulatorError) -> Self {
        match e {
            RegulatorError::Padic(p) => padic(p),
            RegulatorError::Fixture(f) => f.into(),
            RegulatorError::Shape(_) => CliError::Internal(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Capacity { .. } | ScanError::Degenerate(_) => CliError::Precision(e.to_string()),
            ScanError::Padic(p) => padic(p),
            ScanError::Regulator(r) => r.into(),
            ScanError::Precondition(_) => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ThetaError> for CliError {
    fn from(e: ThetaError) -> Self {
        match e {
            ThetaError::Padic(p) => padic(p),
            ThetaError::Regulator(r) => r.into(),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}
