//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment (whole-line or trailing);
//! blank lines are ignored. Keys are case-sensitive and may not repeat.
//! Every key must be consumed by the command that reads the file — unknown
//! keys are rejected by name, so typos never silently fall back to defaults.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::{CliError, Result};

/// A parsed configuration file with read-tracking for unknown-key rejection.
#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

impl Config {
    /// Parse configuration text.
    pub fn parse(text: &str) -> Result<Config> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(format!(
                    "config line {}: expected `key = value`, got `{line}`",
                    idx + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(CliError::config(format!(
                    "config line {}: empty key",
                    idx + 1
                )));
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::config(format!(
                    "config line {}: duplicate key `{key}`",
                    idx + 1
                )));
            }
        }
        Ok(Config { values, used: RefCell::new(BTreeSet::new()) })
    }

    /// Parse a configuration file from disk.
    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::config(format!("cannot read config file {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    /// An empty configuration (all defaults).
    pub fn empty() -> Config {
        Config::default()
    }

    fn mark_used(&self, key: &str) {
        self.used.borrow_mut().insert(key.to_string());
    }

    /// Raw string value, if present.
    pub fn get_str(&self, key: &str) -> Option<String> {
        self.mark_used(key);
        self.values.get(key).cloned()
    }

    /// Float value, if present.
    pub fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get_str(key) {
            None => Ok(None),
            Some(text) => text.parse::<f64>().map(Some).map_err(|_| {
                CliError::config(format!("config key `{key}`: expected a number, got `{text}`"))
            }),
        }
    }

    /// Integer value, if present.
    pub fn get_usize(&self, key: &str) -> Result<Option<usize>> {
        match self.get_str(key) {
            None => Ok(None),
            Some(text) => text.parse::<usize>().map(Some).map_err(|_| {
                CliError::config(format!(
                    "config key `{key}`: expected a nonnegative integer, got `{text}`"
                ))
            }),
        }
    }

    /// Float value with a default.
    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.get_f64(key)?.unwrap_or(default))
    }

    /// Mandatory string value.
    pub fn require_str(&self, key: &str) -> Result<String> {
        self.get_str(key)
            .ok_or_else(|| CliError::config(format!("missing required config key `{key}`")))
    }

    /// Mandatory float value.
    pub fn require_f64(&self, key: &str) -> Result<f64> {
        self.get_f64(key)?
            .ok_or_else(|| CliError::config(format!("missing required config key `{key}`")))
    }

    /// Mandatory integer value.
    pub fn require_usize(&self, key: &str) -> Result<usize> {
        self.get_usize(key)?
            .ok_or_else(|| CliError::config(format!("missing required config key `{key}`")))
    }

    /// Reject any key that no reader consumed, naming the offenders.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        let unknown: Vec<&str> = self
            .values
            .keys()
            .filter(|k| !used.contains(*k))
            .map(|k| k.as_str())
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(CliError::config(format!(
                "unknown config key(s): {}",
                unknown.join(", ")
            )))
        }
    }
}
