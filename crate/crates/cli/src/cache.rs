//! Cache of generated sequence files keyed by (descriptor, length).
//!
//! Files live under `$RAREBIT_CACHE`, or `rarebit/` in the platform cache
//! directory. `index.json` maps each key to a file name and the SHA-256 of
//! its content; an entry whose file is missing or altered is ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::seqfile::write_atomic;

pub const ENV_VAR: &str = "RAREBIT_CACHE";

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct IndexEntry {
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn key(descriptor: &str, len: usize) -> String {
    format!("{descriptor}#{len}")
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$RAREBIT_CACHE` if set, else the per-user cache directory.
    pub fn from_env() -> Result<Self> {
        if let Some(dir) = std::env::var_os(ENV_VAR) {
            return Ok(Cache::at(dir));
        }
        let base = dirs::cache_dir().context("no per-user cache directory on this platform; set RAREBIT_CACHE")?;
        Ok(Cache::at(base.join("rarebit")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn index_path(&self) -> PathBuf {
        self.dir.join("index.json")
    }

    fn load_index(&self) -> Result<BTreeMap<String, IndexEntry>> {
        match fs::read(self.index_path()) {
            Ok(bytes) => serde_json::from_slice(&bytes).context("cache index is corrupt"),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(BTreeMap::new()),
            Err(e) => Err(e).context("reading cache index"),
        }
    }

    /// Cached bytes for the key, if present and intact.
    pub fn get(&self, descriptor: &str, len: usize) -> Result<Option<Vec<u8>>> {
        let index = self.load_index()?;
        let Some(entry) = index.get(&key(descriptor, len)) else {
            return Ok(None);
        };
        match fs::read(self.dir.join(&entry.file)) {
            Ok(bytes) if sha256_hex(&bytes) == entry.sha256 => Ok(Some(bytes)),
            _ => Ok(None),
        }
    }

    /// Stores bytes under the key and returns their SHA-256.
    pub fn put(&self, descriptor: &str, len: usize, bytes: &[u8]) -> Result<String> {
        let digest = sha256_hex(bytes);
        let file = format!("{}.rbsq", &sha256_hex(key(descriptor, len).as_bytes())[..32]);
        write_atomic(&self.dir.join(&file), bytes)?;
        let mut index = self.load_index()?;
        index.insert(
            key(descriptor, len),
            IndexEntry {
                file,
                sha256: digest.clone(),
            },
        );
        write_atomic(&self.index_path(), &serde_json::to_vec_pretty(&index)?)?;
        Ok(digest)
    }
}
