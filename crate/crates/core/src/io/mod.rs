//! Instance ingestion and generation: a TSPLIB subset, a small JSON schema,
//! and a seeded random generator.

mod generator;
mod json;
mod tsplib;

pub use generator::{gen_random, GeneratorSpec};
pub use json::{parse_json, write_json};
pub use tsplib::parse_tsplib;

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::solvers::{Instance, SolveError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("unsupported TSPLIB {key}: {value}")]
    Unsupported { key: String, value: String },
    #[error("dimension {0} outside 1..=32")]
    Dimension(i64),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid weight {0}: must be an integer in [0, 2^63)")]
    Weight(String),
    #[error("invalid generator spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Instance(#[from] SolveError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    Tsplib,
    Json,
    Generated,
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SourceFormat::Tsplib => "tsplib",
            SourceFormat::Json => "json",
            SourceFormat::Generated => "generated",
        })
    }
}

/// A parsed or generated instance with its metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub name: String,
    pub comment: Option<String>,
    pub source_format: SourceFormat,
    pub instance: Instance,
}

/// Reads a file as TSPLIB or JSON. Without an explicit format, `.json`
/// files are read as JSON and everything else as TSPLIB.
pub fn read_instance(
    path: &Path,
    format: Option<SourceFormat>,
) -> Result<InstanceDocument, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let format = format.unwrap_or_else(|| {
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        {
            SourceFormat::Json
        } else {
            SourceFormat::Tsplib
        }
    });
    match format {
        SourceFormat::Json => parse_json(&text),
        _ => parse_tsplib(&text),
    }
}
