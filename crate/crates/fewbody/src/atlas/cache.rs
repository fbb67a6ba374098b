//! Append-only JSON-lines cache of variational runs, keyed by the canonical
//! system and the full solver configuration. The key is the serialized
//! record itself, so a lookup hit always means the full key matched; stored
//! energies reproduce bitwise on a hit.

use crate::systems::ParticleSystem;
use crate::varsolve::{SolverConfig, VariationalResult};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CacheKey {
    system: ParticleSystem,
    config: SolverConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheLine {
    key: CacheKey,
    result: VariationalResult,
}

/// Keyed store of variational results backed by a JSON-lines file.
/// Reads may be shared; writes are serialized through `&mut self`.
#[derive(Debug)]
pub struct RunCache {
    path: PathBuf,
    entries: HashMap<String, VariationalResult>,
}

impl RunCache {
    /// Open (or create) a cache file, loading all existing records.
    pub fn open(path: &Path) -> std::io::Result<Self> {
        let mut entries = HashMap::new();
        if path.exists() {
            let file = std::fs::File::open(path)?;
            for line in BufReader::new(file).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: CacheLine = serde_json::from_str(&line)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
                let key = serde_json::to_string(&parsed.key)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
                entries.insert(key, parsed.result);
            }
        }
        Ok(Self { path: path.to_path_buf(), entries })
    }

    fn key_string(system: &ParticleSystem, config: &SolverConfig) -> String {
        serde_json::to_string(&CacheKey { system: system.clone(), config: config.clone() })
            .expect("cache key serializes")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, system: &ParticleSystem, config: &SolverConfig) -> Option<VariationalResult> {
        self.entries.get(&Self::key_string(system, config)).cloned()
    }

    /// Append a record to the file and the in-memory index.
    pub fn insert(
        &mut self,
        system: &ParticleSystem,
        config: &SolverConfig,
        result: &VariationalResult,
    ) -> std::io::Result<()> {
        let key = Self::key_string(system, config);
        if self.entries.contains_key(&key) {
            return Ok(());
        }
        let line = serde_json::to_string(&CacheLine {
            key: CacheKey { system: system.clone(), config: config.clone() },
            result: result.clone(),
        })
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(file, "{line}")?;
        self.entries.insert(key, result.clone());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varsolve::svm_optimize;

    #[test]
    fn round_trip_and_bitwise_hit() {
        let dir = std::env::temp_dir().join(format!("fewbody-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.jsonl");
        let _ = std::fs::remove_file(&path);

        let sys = ParticleSystem::new(&[0.0, 1.0, 1.0], &[1.0, -1.0, -1.0]).unwrap();
        let cfg = SolverConfig { max_basis: 12, ..Default::default() };
        let res = svm_optimize(&sys, &cfg).unwrap();

        let mut cache = RunCache::open(&path).unwrap();
        assert!(cache.get(&sys, &cfg).is_none());
        cache.insert(&sys, &cfg, &res).unwrap();
        assert_eq!(cache.get(&sys, &cfg).unwrap(), res);

        // reopen: the record survives and reproduces bitwise
        let cache2 = RunCache::open(&path).unwrap();
        let hit = cache2.get(&sys, &cfg).unwrap();
        assert_eq!(hit.energy.to_bits(), res.energy.to_bits());

        // a different config misses
        let other = SolverConfig { max_basis: 13, ..Default::default() };
        assert!(cache2.get(&sys, &other).is_none());
        let _ = std::fs::remove_file(&path);
    }
}
