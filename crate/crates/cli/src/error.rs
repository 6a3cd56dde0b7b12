use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read config {path}: {source}")]
    ConfigRead { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    ConfigParse { path: PathBuf, source: toml::de::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] emitpair_core::Error),
    #[error("oracle campaign failed: {failures} check(s) above tolerance, report in {report}")]
    OracleFailed { failures: usize, report: PathBuf },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use emitpair_core::Error as E;
        match self {
            CliError::Core(E::ZeroNormState { .. } | E::InvalidTable(_)) => 2,
            CliError::OracleFailed { .. } => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
