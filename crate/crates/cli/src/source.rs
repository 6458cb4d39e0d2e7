use std::path::PathBuf;

use clap::Args;
use gkdefect::fixtures::{admit, quadratic_document, AdmittedField, NumberField, SCHEMA_VERSION};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Args, Clone, Debug)]
pub struct FieldArgs {
    /// Fixture file(s); several run as a batch.
    #[arg(long)]
    pub fixture: Vec<PathBuf>,
    /// Use the built-in Q(√d) instead of a fixture.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "fixture")]
    pub quadratic: Option<i64>,
    /// Odd prime; defaults to the first prime listed in the fixture.
    #[arg(long)]
    pub prime: Option<u64>,
}

/// A parsed field with its provenance.
pub struct Source {
    pub field: NumberField,
    pub sha256: String,
}

impl Source {
    pub fn id(&self) -> &str {
        &self.field.id
    }

    /// The chosen prime, or the first one the fixture lists.
    pub fn prime(&self, requested: Option<u64>) -> Result<u64, CliError> {
        requested
            .or_else(|| self.field.primes.first().map(|d| d.p))
            .ok_or_else(|| CliError::Domain(format!("{}: no prime given and none listed", self.id())))
    }

    pub fn admit(&self, p: u64, n: u32) -> Result<AdmittedField, CliError> {
        Ok(admit(&self.field, p, n)?)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl FieldArgs {
    pub fn sources(&self) -> Result<Vec<Source>, CliError> {
        if let Some(d) = self.quadratic {
            let p = self
                .prime
                .ok_or_else(|| CliError::Domain("--quadratic needs --prime".into()))?;
            let doc = quadratic_document(d, &[p])?;
            let text = doc.to_toml();
            return Ok(vec![Source {
                field: NumberField::from_document(&doc)?,
                sha256: digest(text.as_bytes()),
            }]);
        }
        if self.fixture.is_empty() {
            return Err(CliError::Domain("give --fixture or --quadratic".into()));
        }
        self.fixture
            .iter()
            .map(|path| {
                let bytes = std::fs::read(path)
                    .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
                let text = String::from_utf8(bytes.clone())
                    .map_err(|_| CliError::Domain(format!("{}: not UTF-8", path.display())))?;
                let field = gkdefect::fixtures::load_fixture(&text)
                    .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
                Ok(Source {
                    field,
                    sha256: digest(&bytes),
                })
            })
            .collect()
    }

    pub fn single(&self) -> Result<Source, CliError> {
        let mut v = self.sources()?;
        if v.len() != 1 {
            return Err(CliError::Domain("this subcommand takes exactly one field".into()));
        }
        Ok(v.remove(0))
    }
}

/// The header every structured report carries.
#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub fixture: Option<String>,
    pub fixture_sha256: Option<String>,
    pub p: Option<u64>,
    #[serde(rename = "N")]
    pub precision: u32,
    pub seed: Option<u64>,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &'static str, source: Option<&Source>, p: Option<u64>, precision: u32, seed: Option<u64>, report: T) -> Self {
        let ids = source.map(|s| (s.id().to_string(), s.sha256.clone()));
        Self::with_input(command, ids, p, precision, seed, report)
    }

    /// For inputs that are not field fixtures.
    pub fn with_input(
        command: &'static str,
        input: Option<(String, String)>,
        p: Option<u64>,
        precision: u32,
        seed: Option<u64>,
        report: T,
    ) -> Self {
        let (fixture, fixture_sha256) = input.unzip();
        Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            fixture,
            fixture_sha256,
            p,
            precision,
            seed,
            report,
        }
    }
}
