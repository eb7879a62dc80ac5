//! Settings resolution: command-line flags, then the `key=value` file named
//! by `HELIXFORGE_CONFIG`, then built-in defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use helixforge::Error;

pub const CONFIG_ENV: &str = "HELIXFORGE_CONFIG";

#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Domain(format!("config line {}: expected key=value", n + 1))
            })?;
            values.insert(
                k.trim().trim_start_matches("--").to_string(),
                v.trim().to_string(),
            );
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        ConfigFile::parse(&fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag value if given, else the config entry, else `None`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Error> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                Error::Domain(format!("config key `{key}` has invalid value `{raw}`"))
            }),
        }
    }

    pub fn pick_or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Error> {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }
}
