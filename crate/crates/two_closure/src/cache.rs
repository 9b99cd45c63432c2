//! Append-only result cache: JSON lines keyed by a SHA-256 digest of the
//! group spec, the command, its parameters, and the crate version, so a
//! cache never serves results across incompatible code.
//!
//! Corrupt lines are skipped with a warning and the result recomputed. On
//! a cache hit, a randomized 10% sample is recomputed and compared; a
//! cached record that disagrees with a fresh run fails hard rather than
//! being silently preferred either way.

use std::collections::{BTreeMap, HashMap};
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CACHE_ENV_VAR: &str = "TWO_CLOSURE_CACHE";

/// Cache location when the caller gives none: `$TWO_CLOSURE_CACHE`, if set.
pub fn default_cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV_VAR).map(PathBuf::from)
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheRecord {
    key: String,
    command: String,
    spec: String,
    params: BTreeMap<String, String>,
    version: String,
    outcome: Value,
    timestamp: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    /// Computed now and appended.
    Fresh,
    /// Served from the cache.
    Hit,
    /// Served from the cache and confirmed by recomputation.
    Reverified,
}

impl CacheStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CacheStatus::Fresh => "fresh",
            CacheStatus::Hit => "hit",
            CacheStatus::Reverified => "reverified",
        }
    }
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: HashMap<String, Value>,
    /// Fraction of hits recomputed for comparison; 0.1 unless a test
    /// pins it.
    pub reverify_rate: f64,
}

impl Cache {
    /// Opens (or starts) a cache at `path`. A missing file is an empty
    /// cache; unreadable lines are reported and dropped.
    pub fn open(path: &Path) -> Cache {
        let mut records = HashMap::new();
        if let Ok(text) = std::fs::read_to_string(path) {
            for (lineno, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(line) {
                    Ok(record) => {
                        records.insert(record.key, record.outcome);
                    }
                    Err(e) => {
                        eprintln!(
                            "warning: {}:{}: corrupt cache line ignored ({e})",
                            path.display(),
                            lineno + 1
                        );
                    }
                }
            }
        }
        Cache { path: path.to_path_buf(), records, reverify_rate: 0.1 }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn key(command: &str, spec: &str, params: &BTreeMap<String, String>) -> String {
        let mut hasher = Sha256::new();
        hasher.update(env!("CARGO_PKG_VERSION").as_bytes());
        hasher.update([0]);
        hasher.update(command.as_bytes());
        hasher.update([0]);
        hasher.update(spec.as_bytes());
        for (k, v) in params {
            hasher.update([0]);
            hasher.update(k.as_bytes());
            hasher.update([1]);
            hasher.update(v.as_bytes());
        }
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        hex
    }

    /// Returns the cached outcome for `(command, spec, params)` or computes,
    /// appends, and returns it. Hits are recomputed on a randomized sample
    /// and must match the stored outcome exactly.
    pub fn get_or_compute(
        &mut self,
        command: &str,
        spec: &str,
        params: &BTreeMap<String, String>,
        compute: impl Fn() -> Result<Value>,
    ) -> Result<(Value, CacheStatus)> {
        let key = Self::key(command, spec, params);
        if let Some(stored) = self.records.get(&key) {
            if rand::thread_rng().gen_bool(self.reverify_rate) {
                let fresh = compute()?;
                if &fresh != stored {
                    return Err(Error::VerificationFailed(format!(
                        "cache record {key} for `{command} {spec}` disagrees with a fresh run"
                    )));
                }
                return Ok((fresh, CacheStatus::Reverified));
            }
            return Ok((stored.clone(), CacheStatus::Hit));
        }
        let outcome = compute()?;
        self.append(key, command, spec, params, &outcome)?;
        Ok((outcome, CacheStatus::Fresh))
    }

    fn append(
        &mut self,
        key: String,
        command: &str,
        spec: &str,
        params: &BTreeMap<String, String>,
        outcome: &Value,
    ) -> Result<()> {
        let record = CacheRecord {
            key: key.clone(),
            command: command.to_string(),
            spec: spec.to_string(),
            params: params.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            outcome: outcome.clone(),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut line = serde_json::to_string(&record)?;
        line.push('\n');
        file.write_all(line.as_bytes())?;
        self.records.insert(key, outcome.clone());
        Ok(())
    }
}
