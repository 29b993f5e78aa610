//! Flat key=value parameters merged from a config file and command-line flags.

use occulab_core::error::{Error, Result};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    map: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl Params {
    /// Parses `key=value` lines; `#` starts a comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("config line {}: expected key=value", i + 1)))?;
            map.insert(normalize(k), v.trim().to_string());
        }
        Ok(Params { map })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.map.insert(normalize(key), value.into());
    }

    /// Overlays `other`, whose entries win.
    pub fn overlay(&mut self, other: &Params) {
        for (k, v) in &other.map {
            self.map.insert(k.clone(), v.clone());
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        self.raw(key).map_or(Ok(default), |v| parse_f64(key, v))
    }

    pub fn f64_req(&self, key: &str) -> Result<f64> {
        let v = self.raw(key).ok_or_else(|| Error::config(format!("missing --{key}")))?;
        parse_f64(key, v)
    }

    pub fn list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(v) => v.split(',').map(|x| parse_f64(key, x)).collect(),
        }
    }

    pub fn list_req(&self, key: &str) -> Result<Vec<f64>> {
        let v = self.raw(key).ok_or_else(|| Error::config(format!("missing --{key}")))?;
        v.split(',').map(|x| parse_f64(key, x)).collect()
    }

    /// Counts accept scientific notation such as `1e7`.
    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => parse_count(key, v),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.raw(key) {
            None => Ok(default),
            Some("true" | "1" | "yes" | "on") => Ok(true),
            Some("false" | "0" | "no" | "off") => Ok(false),
            Some(v) => Err(Error::config(format!("--{key}: expected a boolean, got `{v}`"))),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.raw(key).unwrap_or(default)
    }
}

pub fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim().parse::<f64>().map_err(|_| Error::config(format!("--{key}: `{v}` is not a number")))
}

pub fn parse_count(key: &str, v: &str) -> Result<u64> {
    let v = v.trim();
    if let Ok(n) = v.parse::<u64>() {
        return Ok(n);
    }
    let x = parse_f64(key, v)?;
    if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 {
        Ok(x as u64)
    } else {
        Err(Error::config(format!("--{key}: `{v}` is not a non-negative integer")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_syntax() {
        let p = Params::parse("# comment\nn = 1e7\n\nT=2,3,4  # trailing\nearly_stop=false\n").unwrap();
        assert_eq!(p.u64_or("n", 0).unwrap(), 10_000_000);
        assert_eq!(p.list_req("T").unwrap(), vec![2.0, 3.0, 4.0]);
        assert!(!p.bool_or("early-stop", true).unwrap());
        assert!(Params::parse("novalue").is_err());
    }

    #[test]
    fn overlay_prefers_the_newer_value() {
        let mut a = Params::parse("s=0.5\nseed=1").unwrap();
        let b = Params::parse("seed=7").unwrap();
        a.overlay(&b);
        assert_eq!(a.u64_or("seed", 0).unwrap(), 7);
        assert_eq!(a.f64_or("s", 0.0).unwrap(), 0.5);
    }

    #[test]
    fn counts_reject_fractions() {
        assert!(parse_count("n", "1.5").is_err());
        assert!(parse_count("n", "-3").is_err());
        assert_eq!(parse_count("n", "2.5e3").unwrap(), 2500);
    }
}
