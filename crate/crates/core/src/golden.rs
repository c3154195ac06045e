//! Reference-value files produced by an independent high-precision
//! implementation.
//!
//! One record per line, `key = value # tolerance`, with `#` at the start of a
//! line marking a comment. Values keep all digits as written; a tolerance of
//! `0` demands exact agreement. Comparison is mixed absolute/relative:
//! `|got − expected| ≤ tol · max(|expected|, 1)`.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRecord {
    pub key: String,
    /// The value as written, possibly with more digits than `f64` holds.
    pub value: String,
    pub tolerance: f64,
}

impl GoldenRecord {
    pub fn expected(&self) -> Result<f64> {
        self.value
            .parse()
            .map_err(|e| Error::Domain(format!("golden `{}`: value `{}`: {e}", self.key, self.value)))
    }

    /// Checks `got` against the record; the error carries both numbers.
    pub fn check(&self, got: f64) -> std::result::Result<(), String> {
        let expected = self.expected().map_err(|e| e.to_string())?;
        let allowed = self.tolerance * expected.abs().max(1.0);
        let diff = (got - expected).abs();
        if diff <= allowed {
            Ok(())
        } else {
            Err(format!("{}: got {got:e}, expected {expected:e}, |diff| {diff:e} > {allowed:e}", self.key))
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct GoldenSet {
    records: BTreeMap<String, GoldenRecord>,
}

impl GoldenSet {
    pub fn parse(text: &str) -> Result<Self> {
        let mut records = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| Error::Parse { line: i + 1, message: message.to_owned() };
            let (body, tol) = line.split_once('#').ok_or_else(|| err("missing `# tolerance`"))?;
            let (key, value) = body.split_once('=').ok_or_else(|| err("missing `=`"))?;
            let tolerance: f64 = tol.trim().parse().map_err(|_| err("tolerance is not a number"))?;
            if !(tolerance >= 0.0) {
                return Err(err("tolerance must be nonnegative"));
            }
            let record = GoldenRecord { key: key.trim().to_owned(), value: value.trim().to_owned(), tolerance };
            if records.insert(record.key.clone(), record).is_some() {
                return Err(err("duplicate key"));
            }
        }
        Ok(Self { records })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&GoldenRecord> {
        self.records.get(key)
    }

    /// Records whose key starts with `prefix`, in key order.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a GoldenRecord> + 'a {
        self.records.range(prefix.to_owned()..).take_while(move |(k, _)| k.starts_with(prefix)).map(|(_, r)| r)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GoldenRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Splits `name(a,b,c)` into `("name", ["a", "b", "c"])`; any suffix after
/// the closing parenthesis (such as `.re`) is returned as the third element.
pub fn split_key(key: &str) -> Option<(&str, Vec<&str>, &str)> {
    let open = key.find('(')?;
    let close = key[open..].find(')')? + open;
    let args = key[open + 1..close].split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Some((&key[..open], args, &key[close + 1..]))
}
