//! Run configuration: defaults, a flat `key=value` file, and validation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{Format, Suite};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Grid and quadrature resolution per axis for surfaces.
    pub resolution: usize,
    /// Grid resolution per axis for `n ≥ 3` field computations.
    pub grid_3d: usize,
    /// Finite-difference stencil order (2 or 4).
    pub order: usize,
    /// Multiplies every tolerance.
    pub tol_scale: f64,
    pub seed: u64,
    pub format: Format,
    pub suites: Vec<Suite>,
    pub entries: Vec<String>,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            resolution: 128,
            grid_3d: 48,
            order: 4,
            tol_scale: 1.0,
            seed: 0x5eed,
            format: Format::Text,
            suites: Suite::ALL.to_vec(),
            entries: Vec::new(),
            out: None,
        }
    }
}

fn bad(key: &str, value: &str) -> Error {
    Error::Usage(format!("invalid value '{value}' for '{key}'"))
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

impl RunConfig {
    /// Parse a `key=value` file; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<BTreeMap<String, String>> {
        let mut out = BTreeMap::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("config line {}: expected key=value", k + 1)))?;
            out.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(out)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "resolution" => self.resolution = value.parse().map_err(|_| bad(key, value))?,
            "grid-3d" => self.grid_3d = value.parse().map_err(|_| bad(key, value))?,
            "order" => self.order = value.parse().map_err(|_| bad(key, value))?,
            "tol-scale" => self.tol_scale = value.parse().map_err(|_| bad(key, value))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            "format" => self.format = Format::parse(value)?,
            "suite" => self.suites = list(value).map(Suite::parse).collect::<Result<_>>()?,
            "entry" => self.entries = list(value).map(String::from).collect(),
            "out" => self.out = Some(value.to_string()),
            _ => return Err(Error::Usage(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    pub fn apply(&mut self, pairs: &BTreeMap<String, String>) -> Result<()> {
        for (k, v) in pairs {
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 16 || self.grid_3d < 16 {
            return Err(Error::Usage("resolution must be at least 16".into()));
        }
        if !(self.tol_scale > 0.0 && self.tol_scale.is_finite()) {
            return Err(Error::Usage("tolerance scale must be positive".into()));
        }
        if ![2, 4].contains(&self.order) {
            return Err(Error::Usage("stencil order must be 2 or 4".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Usage("no suite selected".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_override() {
        let pairs = RunConfig::parse_file("# run\nresolution = 64\nsuite=boundary, topology\nseed=7 # fixed\n").unwrap();
        let mut c = RunConfig::default();
        c.apply(&pairs).unwrap();
        assert_eq!(c.resolution, 64);
        assert_eq!(c.suites, vec![Suite::Boundary, Suite::Topology]);
        c.set("resolution", "32").unwrap();
        assert_eq!((c.resolution, c.seed), (32, 7));
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse_file("resolution 64").is_err());
        let mut c = RunConfig::default();
        assert!(c.set("suite", "geometry").is_err());
        assert!(c.set("colour", "red").is_err());
        c.resolution = 8;
        assert!(c.validate().is_err());
        let c = RunConfig { tol_scale: 0.0, ..RunConfig::default() };
        assert!(c.validate().is_err());
    }
}
