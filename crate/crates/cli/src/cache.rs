//! Persistent count cache: one JSON `CacheEntry` per line.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use peaklab::maximality::CountCache;
use peaklab::Composition;
use serde::{Deserialize, Serialize};

pub const VERSION_TAG: &str = concat!("peaklab-", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub count: String,
    pub version: String,
}

impl CacheEntry {
    pub fn new(c: &Composition, count: &BigUint) -> Self {
        CacheEntry { key: c.to_string(), count: count.to_string(), version: VERSION_TAG.to_string() }
    }

    /// The entry as a usable pair, or `None` if it is stale or malformed.
    fn decode(&self) -> Option<(Composition, BigUint)> {
        if self.version != VERSION_TAG {
            return None;
        }
        let c: Composition = self.key.parse().ok()?;
        if !c.is_admissible() {
            return None;
        }
        Some((c, self.count.parse().ok()?))
    }
}

/// A file-backed cache; the file is only ever appended to.
pub struct CacheFile {
    path: PathBuf,
    stored: HashSet<Composition>,
}

impl CacheFile {
    /// Loads `path` into `into`, skipping unreadable, malformed and
    /// other-version lines. A missing file is an empty cache.
    pub fn load(path: &Path, into: &CountCache) -> io::Result<Self> {
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Ok(CacheFile { path: path.to_path_buf(), stored: HashSet::new() })
            }
            Err(e) => return Err(e),
        };
        let mut stored = HashSet::new();
        for line in BufReader::new(file).lines() {
            let line = line?;
            let Ok(entry) = serde_json::from_str::<CacheEntry>(&line) else {
                continue;
            };
            if let Some((c, v)) = entry.decode() {
                stored.insert(c.clone());
                into.insert(c, v);
            }
        }
        Ok(CacheFile { path: path.to_path_buf(), stored })
    }

    /// Appends every entry of `cache` the file does not hold yet.
    pub fn save(&mut self, cache: &CountCache) -> io::Result<()> {
        let fresh: Vec<_> = cache.entries().into_iter().filter(|(c, _)| !self.stored.contains(c)).collect();
        if fresh.is_empty() {
            return Ok(());
        }
        let file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut out = BufWriter::new(file);
        for (c, v) in &fresh {
            serde_json::to_writer(&mut out, &CacheEntry::new(c, v))?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        self.stored.extend(fresh.into_iter().map(|(c, _)| c));
        Ok(())
    }
}
