use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::record::VERSION;

/// Content-addressed JSON store keyed by a hash of `(kind, key, version)`.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key<K: Serialize>(kind: &str, key: &K) -> String {
        let body = serde_json::to_string(key).expect("cache keys serialize");
        let mut h = Sha256::new();
        h.update(kind.as_bytes());
        h.update([0]);
        h.update(VERSION.as_bytes());
        h.update([0]);
        h.update(body.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// A stored value, or `None` on a miss. Unreadable entries are misses
    /// and produce a warning on stderr.
    pub fn load<T: DeserializeOwned>(&self, hash: &str) -> Option<T> {
        let path = self.path(hash);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str(&text) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("warning: ignoring corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    /// Writes to a temporary file in the cache directory and renames it into
    /// place. Failures produce a warning on stderr.
    pub fn store<T: Serialize>(&self, hash: &str, value: &T) {
        let result = (|| -> std::io::Result<()> {
            fs::create_dir_all(&self.dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            serde_json::to_writer(&mut tmp, value)?;
            tmp.flush()?;
            tmp.persist(self.path(hash)).map_err(|e| e.error)?;
            Ok(())
        })();
        if let Err(e) = result {
            eprintln!("warning: cannot write cache entry in {}: {e}", self.dir.display());
        }
    }

    pub fn get_or_compute<T, K, F>(cache: Option<&Cache>, kind: &str, key: &K, compute: F) -> crate::Result<T>
    where
        T: Serialize + DeserializeOwned,
        K: Serialize,
        F: FnOnce() -> crate::Result<T>,
    {
        let Some(cache) = cache else {
            return compute();
        };
        let hash = Cache::key(kind, key);
        if let Some(v) = cache.load(&hash) {
            return Ok(v);
        }
        let v = compute()?;
        cache.store(&hash, &v);
        Ok(v)
    }
}
