//! Table of maximal Thurston–Bennequin numbers, keyed by the canonical text
//! of a (fact-free) knot expression.
//!
//! File format: one entry per line, `name<TAB>tb-value<TAB>source-note`.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TbEntry {
    pub value: i64,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TbTable {
    entries: BTreeMap<String, TbEntry>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("TB table line {line}: {message}")]
pub struct TbTableError {
    pub line: usize,
    pub message: String,
}

pub const UNKNOT: &str = "unknot";

impl Default for TbTable {
    fn default() -> Self {
        Self::builtin()
    }
}

impl TbTable {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    /// Seeded with `TB(unknot) = -1`.
    pub fn builtin() -> Self {
        let mut t = Self::empty();
        t.insert(UNKNOT, -1, "builtin: maximal tb of the unknot");
        t
    }

    pub fn insert(&mut self, name: impl Into<String>, value: i64, source: impl Into<String>) {
        self.entries.insert(
            name.into(),
            TbEntry {
                value,
                source: source.into(),
            },
        );
    }

    pub fn get(&self, name: &str) -> Option<&TbEntry> {
        self.entries.get(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses table text. Names are stored verbatim (trimmed); the caller is
    /// responsible for writing them in canonical expression syntax.
    pub fn parse(text: &str) -> Result<Self, TbTableError> {
        let mut table = Self::empty();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let err = |message: String| TbTableError {
                line: n + 1,
                message,
            };
            let mut fields = line.split('\t');
            let name = fields.next().unwrap_or_default().trim();
            if name.is_empty() {
                return Err(err("empty knot name".into()));
            }
            let value = fields
                .next()
                .ok_or_else(|| err("missing tb value (fields are tab-separated)".into()))?
                .trim();
            let value: i64 = value
                .parse()
                .map_err(|_| err(format!("tb value {value:?} is not an integer")))?;
            let source = fields.next().unwrap_or_default().trim();
            if fields.next().is_some() {
                return Err(err("too many fields".into()));
            }
            table.insert(name, value, source);
        }
        Ok(table)
    }

    /// Adds every entry of `other`, replacing duplicates.
    pub fn extend(&mut self, other: TbTable) {
        self.entries.extend(other.entries);
    }
}
