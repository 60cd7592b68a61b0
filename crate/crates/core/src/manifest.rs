//! Run manifests: enough provenance to reproduce any command's numeric
//! output bit-for-bit.
//!
//! Every CLI invocation emits one manifest (a single JSON line on stderr).
//! Deterministic payloads stay on stdout and carry no timestamps, so two runs
//! with the same seed diff clean; the manifest carries the volatile fields.

use crate::mc::{GENERATOR_NAME, GENERATOR_VERSION};
use serde::Serialize;
use serde_json::Value;

/// Pinned random-generator identification.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorInfo {
    pub name: &'static str,
    pub version: &'static str,
    /// Substream convention: one stream per fixed-size sample chunk.
    pub substream: &'static str,
}

impl GeneratorInfo {
    pub fn pinned() -> Self {
        Self {
            name: GENERATOR_NAME,
            version: GENERATOR_VERSION,
            substream: "stream = chunk index, chunk = 4096 samples",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
    pub tool_version: &'static str,
    pub timestamp: String,
    pub elapsed_seconds: f64,
}

impl RunManifest {
    /// Manifest for a deterministic (seedless) command.
    pub fn deterministic(command: &str, parameters: Value, elapsed_seconds: f64) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            seed: None,
            generator: None,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339(),
            elapsed_seconds,
        }
    }

    /// Manifest for a command that consumed randomness.
    pub fn seeded(command: &str, parameters: Value, seed: u64, elapsed_seconds: f64) -> Self {
        Self {
            seed: Some(seed),
            generator: Some(GeneratorInfo::pinned()),
            ..Self::deterministic(command, parameters, elapsed_seconds)
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("manifest serialization cannot fail")
    }
}
