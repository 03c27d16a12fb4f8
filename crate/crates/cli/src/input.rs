//! Instance files: whitespace-separated positive integers; `#` starts a
//! comment that runs to the end of the line.

use crate::{CliError, Result};
use sha2::{Digest, Sha256};
use std::io::Read;
use std::path::Path;

/// Raw bytes of the instance from a file, or stdin for `None` or `-`.
pub fn read_source(path: Option<&Path>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p != Path::new("-") => {
            buf = std::fs::read(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(buf)
}

pub fn parse_values(bytes: &[u8]) -> Result<Vec<u64>> {
    let text =
        std::str::from_utf8(bytes).map_err(|_| CliError::Input("input is not UTF-8".into()))?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| {
                if tok.bytes().all(|c| c.is_ascii_digit()) {
                    CliError::Limits(format!(
                        "line {}: {tok} does not fit in 64 bits",
                        lineno + 1
                    ))
                } else {
                    CliError::Input(format!(
                        "line {}: {tok:?} is not a positive integer",
                        lineno + 1
                    ))
                }
            })?;
            if v == 0 {
                return Err(CliError::Input(format!(
                    "line {}: values must be positive",
                    lineno + 1
                )));
            }
            values.push(v);
        }
    }
    Ok(values)
}

/// Hex SHA-256 of the raw input bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
