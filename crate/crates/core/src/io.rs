//! Number formatting and run manifests.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Significant digits of every float written to CSV.
pub const SIG_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits in the shortest of fixed or
/// exponent notation, without trailing zeros (like C's `%.12g`).
pub fn fmt_sig(x: f64) -> String {
    fmt_sig_digits(x, SIG_DIGITS)
}

pub fn fmt_sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Record of one command invocation, written next to its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Flag name (without dashes) to value, as given on the command line.
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    pub wall_time_seconds: f64,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: 0.0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// `<output>.manifest.json`
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    pub fn write_next_to(&self, output: &Path) -> Result<PathBuf> {
        let path = Self::path_for(output);
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| Error::InvalidInput(format!("manifest serialization: {e}")))?;
        fs::write(&path, json + "\n")
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("malformed manifest {}: {e}", path.display())))
    }
}
