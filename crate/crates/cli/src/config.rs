//! Resolved run configurations. Values come from the built-in defaults,
//! then an optional TOML file, then command-line flags.

use std::path::Path;
use std::str::FromStr;

use emitpair_core::MixtureExchange;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>) -> CliResult<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead { path: path.into(), source })?;
    toml::from_str(&text).map_err(|source| CliError::ConfigParse { path: path.into(), source })
}

/// Overwrites `slot` when the flag was given.
pub fn apply<T>(slot: &mut T, flag: Option<T>) {
    if let Some(v) = flag {
        *slot = v;
    }
}

/// Canonical JSON of the resolved configuration and its SHA-256.
pub fn fingerprint<T: Serialize>(config: &T) -> (String, String) {
    let json = serde_json::to_string(config).expect("configs serialize");
    let hash = hex::encode(Sha256::digest(json.as_bytes()));
    (json, hash)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig2Config {
    pub s: f64,
    pub gamma0: f64,
    pub t_max: f64,
    pub steps: usize,
    pub mixture_exchange: MixtureExchange,
}

impl Default for Fig2Config {
    fn default() -> Self {
        Fig2Config { s: 0.7, gamma0: 1.0, t_max: 5.0, steps: 200, mixture_exchange: MixtureExchange::On }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub s_from: f64,
    pub s_to: f64,
    pub points: usize,
    pub gamma0: f64,
    pub mixture_exchange: MixtureExchange,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { s_from: 0.0, s_to: 0.9, points: 10, gamma0: 1.0, mixture_exchange: MixtureExchange::On }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneConfig {
    pub dim: usize,
    pub separation: f64,
    pub sigma: f64,
    pub k: f64,
    /// Emission direction; defaults to the last axis.
    pub omega: Option<Vec<f64>>,
    /// Absorption beam direction; defaults to the first axis.
    pub beam: Option<Vec<f64>>,
    pub mass: f64,
    pub delay: f64,
    pub gamma0: f64,
    pub t_max: f64,
    pub steps: usize,
    pub mixture_exchange: MixtureExchange,
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            dim: 3,
            separation: 2.0,
            sigma: 1.0,
            k: 1.0,
            omega: None,
            beam: None,
            mass: 1.0,
            delay: 0.0,
            gamma0: 1.0,
            t_max: 5.0,
            steps: 200,
            mixture_exchange: MixtureExchange::On,
        }
    }
}

impl SceneConfig {
    /// Fills the default directions so the fingerprint records them.
    pub fn resolve_directions(&mut self) -> CliResult<()> {
        if self.dim == 0 {
            return Err(CliError::Usage("dim must be >= 1".into()));
        }
        let axis = |i: usize| {
            let mut v = vec![0.0; self.dim];
            v[i] = 1.0;
            v
        };
        if self.beam.is_none() {
            self.beam = Some(axis(0));
        }
        if self.omega.is_none() {
            self.omega = Some(axis(self.dim - 1));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    pub seeds: u64,
    pub first_seed: u64,
    pub tol: f64,
    pub coherence: f64,
    pub ambient_dim: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { seeds: 100, first_seed: 0, tol: 1e-12, coherence: 0.6, ambient_dim: 12 }
    }
}

/// Comma-separated vector flag, e.g. `0,0,1`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorArg(pub Vec<f64>);

impl FromStr for VectorArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad component {x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(VectorArg)
    }
}
