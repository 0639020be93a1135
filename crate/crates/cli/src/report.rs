use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use isowedge::Tolerance;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Machine-readable record of one command run.
///
/// Fields are serialized in declaration order; everything except
/// `wall_time_ms` is a function of the inputs.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub arguments: Value,
    /// SHA-256 over the input files, in argument order.
    pub input_digest: String,
    pub tolerance: Tolerance,
    pub seed: Option<u64>,
    pub exit_code: u8,
    pub results: Value,
    pub wall_time_ms: f64,
}

pub fn digest(inputs: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for input in inputs {
        hasher.update((input.len() as u64).to_le_bytes());
        hasher.update(input.as_bytes());
    }
    hex::encode(hasher.finalize())
}

impl RunReport {
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        if path.as_os_str() == "-" {
            print!("{text}");
            Ok(())
        } else {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
    }
}
