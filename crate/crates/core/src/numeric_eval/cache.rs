//! Persistent value cache: JSON lines, one record per line, append-only
//! with last-record-wins semantics.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::index_algebra::Index;

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    index: Index,
    digits: u32,
    value: String,
}

pub struct ValueCache {
    path: PathBuf,
    map: DashMap<(Index, u32), String>,
    writer: Mutex<File>,
}

impl ValueCache {
    /// Opens (creating if needed) a cache file and loads every parseable
    /// record.  Unparseable lines — e.g. a torn final line after a crash —
    /// are skipped; later records override earlier ones.
    pub fn open(path: impl AsRef<Path>) -> std::io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let map = DashMap::new();
        match File::open(&path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    if let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) {
                        map.insert((rec.index, rec.digits), rec.value);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        let writer = Mutex::new(OpenOptions::new().create(true).append(true).open(&path)?);
        Ok(ValueCache { path, map, writer })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, index: &Index, digits: u32) -> Option<String> {
        self.map.get(&(index.clone(), digits)).map(|v| v.clone())
    }

    pub fn put(&self, index: &Index, digits: u32, value: &str) -> std::io::Result<()> {
        let line = serde_json::to_string(&CacheRecord {
            index: index.clone(),
            digits,
            value: value.to_string(),
        })
        .expect("cache record serializes");
        {
            let mut f = self.writer.lock().expect("cache writer poisoned");
            writeln!(f, "{line}")?;
            f.flush()?;
        }
        self.map.insert((index.clone(), digits), value.to_string());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(entries: &[u32]) -> Index {
        Index::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn round_trip_and_last_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        {
            let c = ValueCache::open(&path).unwrap();
            c.put(&idx(&[3]), 60, "1.202").unwrap();
            c.put(&idx(&[3]), 60, "1.2020569").unwrap();
            c.put(&idx(&[1, 3]), 60, "0.2705808").unwrap();
            assert_eq!(c.get(&idx(&[3]), 60).unwrap(), "1.2020569");
        }
        let c = ValueCache::open(&path).unwrap();
        assert_eq!(c.get(&idx(&[3]), 60).unwrap(), "1.2020569");
        assert_eq!(c.get(&idx(&[1, 3]), 60).unwrap(), "0.2705808");
        assert_eq!(c.get(&idx(&[3]), 50), None);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn skips_torn_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        std::fs::write(
            &path,
            "{\"index\":[3],\"digits\":60,\"value\":\"1.202\"}\n{\"index\":[5],\"dig",
        )
        .unwrap();
        let c = ValueCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&idx(&[3]), 60).unwrap(), "1.202");
    }
}
