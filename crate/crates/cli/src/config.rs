//! Flat `key = value` configuration files. Keys mirror the long command-line
//! flags without the leading dashes; `_` and `-` are interchangeable.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('_', "-")
}

impl Config {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", n + 1)))?;
            let key = normalize(key);
            if key.is_empty() {
                return Err(CliError::Config(format!("line {}: empty key", n + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(&normalize(key)).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Config(format!("bad value '{v}' for '{key}'"))),
        }
    }

    /// Flag value if given, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }

    /// Flag value if given, else the config value.
    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_pairs() {
        let c = Config::parse("# tolerances\nquad_rel_tol = 1e-8\n--kind=triplet  # inline\n\n").unwrap();
        assert_eq!(c.get::<f64>("quad-rel-tol").unwrap(), Some(1e-8));
        assert_eq!(c.raw("kind"), Some("triplet"));
        assert_eq!(c.pick(Some(2.0), "z", 5.0).unwrap(), 2.0);
        assert_eq!(c.pick(None, "z", 5.0).unwrap(), 5.0);
        assert_eq!(c.pick::<f64>(None, "quad_rel_tol", 1.0).unwrap(), 1e-8);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Config::parse("novalue").is_err());
        assert!(Config::parse(" = 3").is_err());
        let c = Config::parse("z = two").unwrap();
        assert!(c.get::<f64>("z").is_err());
    }
}
