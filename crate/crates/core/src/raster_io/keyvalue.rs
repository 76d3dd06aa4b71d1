use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Ordered `key=value` lines. Blank lines and `#` comments are skipped;
/// keys must be unique.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyValues {
    entries: Vec<(String, String)>,
}

impl KeyValues {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = KeyValues::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Validation(format!("line {}: expected key=value, got {line:?}", n + 1))
            })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(Error::Validation(format!("line {}: empty key", n + 1)));
            }
            kv.insert(key, value.trim())?;
        }
        Ok(kv)
    }

    pub fn insert(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if self.get(key).is_some() {
            return Err(Error::Validation(format!("duplicate key {key:?}")));
        }
        self.entries.push((key.to_owned(), value.into()));
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Validation(format!("missing key {key:?}")))
    }

    pub fn require_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.require(key)?;
        raw.parse()
            .map_err(|_| Error::Validation(format!("key {key:?}: cannot parse {raw:?}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Serializes with an optional leading comment line.
    pub fn to_text(&self, comment: Option<&str>) -> String {
        let mut s = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(s, "# {line}");
            }
        }
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }
}
