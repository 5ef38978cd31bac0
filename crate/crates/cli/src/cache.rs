//! JSON files keyed by operation, parameters and code version.
//!
//! Entries whose stamp does not match are recomputed and overwritten.
//! Writes go to a temporary file in the same directory and are renamed
//! into place, so readers never see a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::SCHEMA_VERSION;

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    version: u32,
    code_version: String,
    operation: String,
    parameters: String,
    value: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, operation: &str, parameters: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        for part in [operation, parameters, CODE_VERSION] {
            h.update(part.as_bytes());
            h.update([0]);
        }
        h.update(SCHEMA_VERSION.to_le_bytes());
        let digest = hex::encode(&h.finalize()[..12]);
        Some(dir.join(format!("{operation}-{digest}.json")))
    }

    /// Reads a matching entry, if there is one.
    pub fn load<T: DeserializeOwned>(&self, operation: &str, parameters: &str) -> Option<T> {
        let path = self.path_for(operation, parameters)?;
        let text = fs::read_to_string(path).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        let fresh = entry.version == SCHEMA_VERSION
            && entry.code_version == CODE_VERSION
            && entry.operation == operation
            && entry.parameters == parameters;
        fresh.then_some(entry.value)
    }

    pub fn store<T: Serialize>(&self, operation: &str, parameters: &str, value: &T) -> Result<(), CliError> {
        let Some(path) = self.path_for(operation, parameters) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir)?;
        let entry = Entry {
            version: SCHEMA_VERSION,
            code_version: CODE_VERSION.to_string(),
            operation: operation.to_string(),
            parameters: parameters.to_string(),
            value,
        };
        let tmp = dir.join(format!(".{}.{}.tmp", path.file_name().unwrap().to_string_lossy(), std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Returns the cached value or computes and stores it. A failed store
    /// is reported on stderr and otherwise ignored.
    pub fn get_or_compute<T, F>(&self, operation: &str, parameters: &str, compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        if let Some(v) = self.load(operation, parameters) {
            return Ok(v);
        }
        let v = compute()?;
        if let Err(e) = self.store(operation, parameters, &v) {
            eprintln!("warning: cache write failed: {e}");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_stale_entries() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let v = vec!["1/2".to_string(), "-3".to_string()];
        cache.store("demo", "k=1", &v).unwrap();
        assert_eq!(cache.load::<Vec<String>>("demo", "k=1"), Some(v.clone()));
        assert_eq!(cache.load::<Vec<String>>("demo", "k=2"), None);

        let path = cache.path_for("demo", "k=1").unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\"version\":1", "\"version\":0");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load::<Vec<String>>("demo", "k=1"), None);

        let mut calls = 0;
        let got = cache
            .get_or_compute("demo", "k=1", || {
                calls += 1;
                Ok(v.clone())
            })
            .unwrap();
        assert_eq!((got, calls), (v.clone(), 1));
        assert_eq!(cache.load::<Vec<String>>("demo", "k=1"), Some(v));
    }

    #[test]
    fn disabled_cache_never_stores() {
        let cache = Cache::disabled();
        cache.store("demo", "x", &1u32).unwrap();
        assert_eq!(cache.load::<u32>("demo", "x"), None);
    }
}
