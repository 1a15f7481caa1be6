//! Persistent JSON cache of interpolated Kac polynomials.
//!
//! The file holds an array of records, one per quiver hash:
//! `[{"quiver_hash": "...", "entries": [{"d": [1,1], "poly": {"0":1,"1":1}, "primes": [2,3,5]}]}]`.
//! The cache is advisory: a missing file is an empty cache, and deleting it
//! forces recomputation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{IntPoly, KacError};
use crate::quiver::DimVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub d: Vec<u32>,
    pub poly: IntPoly,
    /// Primes whose counts produced `poly`, including the stability prime.
    pub primes: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Record {
    quiver_hash: String,
    entries: Vec<CacheEntry>,
}

#[derive(Debug)]
pub struct KacCache {
    path: Option<PathBuf>,
    records: Vec<Record>,
}

impl KacCache {
    /// A cache that never touches the disk.
    pub fn in_memory() -> Self {
        KacCache {
            path: None,
            records: Vec::new(),
        }
    }

    /// Loads `path`, or starts empty when it does not exist.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, KacError> {
        let path = path.as_ref().to_path_buf();
        let records = match fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| KacError::Cache(format!("{}: {e}", path.display())))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(KacError::Cache(format!("{}: {e}", path.display()))),
        };
        Ok(KacCache {
            path: Some(path),
            records,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, quiver_hash: &str, d: &DimVector) -> Option<&CacheEntry> {
        self.records
            .iter()
            .find(|r| r.quiver_hash == quiver_hash)
            .and_then(|r| r.entries.iter().find(|e| e.d == d.0))
    }

    /// Inserts or replaces the entry for `(quiver_hash, entry.d)`.
    pub fn insert(&mut self, quiver_hash: &str, entry: CacheEntry) {
        let idx = match self
            .records
            .iter()
            .position(|r| r.quiver_hash == quiver_hash)
        {
            Some(i) => i,
            None => {
                self.records.push(Record {
                    quiver_hash: quiver_hash.to_string(),
                    entries: Vec::new(),
                });
                self.records.len() - 1
            }
        };
        let entries = &mut self.records[idx].entries;
        match entries.iter_mut().find(|e| e.d == entry.d) {
            Some(slot) => *slot = entry,
            None => entries.push(entry),
        }
    }

    /// All `(quiver_hash, entry)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &CacheEntry)> {
        self.records
            .iter()
            .flat_map(|r| r.entries.iter().map(move |e| (r.quiver_hash.as_str(), e)))
    }

    pub fn len(&self) -> usize {
        self.records.iter().map(|r| r.entries.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes the file atomically (temporary file, then rename).
    pub fn save(&self) -> Result<(), KacError> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let err = |e: std::io::Error| KacError::Cache(format!("{}: {e}", path.display()));
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(err)?;
        }
        let text = serde_json::to_string_pretty(&self.records)
            .map_err(|e| KacError::Cache(e.to_string()))?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(err)?;
        fs::rename(&tmp, path).map_err(err)
    }
}
