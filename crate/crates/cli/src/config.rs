use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

/// Values loaded from a JSON config file. Keys use the snake_case form of the
/// flag names; an explicit flag always takes precedence.
#[derive(Debug, Default)]
pub struct Config {
    values: Map<String, Value>,
}

impl Config {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        match serde_json::from_str(&text) {
            Ok(Value::Object(values)) => Ok(Config { values }),
            Ok(_) => Err(CliError::Config("top level must be an object".into())),
            Err(e) => Err(CliError::Config(format!("{}: {e}", path.display()))),
        }
    }

    pub fn lookup<T: DeserializeOwned>(&self, key: &str) -> CliResult<Option<T>> {
        self.values
            .get(key)
            .map(|v| {
                serde_json::from_value(v.clone())
                    .map_err(|e| CliError::Config(format!("key '{key}': {e}")))
            })
            .transpose()
    }

    /// Flag value, else config value, else `None`.
    pub fn pick<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.lookup(key),
        }
    }

    pub fn pick_or<T: DeserializeOwned>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> CliResult<T> {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }

    pub fn require<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> CliResult<T> {
        self.pick(flag, key)?.ok_or_else(|| {
            CliError::Usage(format!(
                "missing --{} (or '{key}' in the config file)",
                key.replace('_', "-")
            ))
        })
    }

    pub fn flag(&self, flag: bool, key: &str) -> CliResult<bool> {
        if flag {
            return Ok(true);
        }
        Ok(self.lookup(key)?.unwrap_or(false))
    }
}
