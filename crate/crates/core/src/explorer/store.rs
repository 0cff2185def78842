//! Append-only witness store: content-addressed JSON files, each embedding
//! the search config and the witness field.

use super::{ExplorerError, SearchConfig, SearchConfigJson, SearchResult};
use crate::io::{field_from_json, field_to_json, FieldJson};
use crate::fourier::OperatorField;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

/// A persisted search outcome.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessRecord {
    pub config: SearchConfigJson,
    pub best_ratio: f64,
    pub violated: bool,
    pub trace: Vec<(u64, f64)>,
    pub field: FieldJson,
}

impl WitnessRecord {
    pub fn new(cfg: &SearchConfig, result: &SearchResult) -> Self {
        WitnessRecord {
            config: cfg.into(),
            best_ratio: result.best_ratio,
            violated: result.violated,
            trace: result.trace.clone(),
            field: field_to_json(&result.witness, None),
        }
    }

    pub fn witness_field(&self, cap: u64) -> Result<OperatorField, ExplorerError> {
        Ok(field_from_json(&self.field, cap)?)
    }
}

/// A directory of witness files named by the content hash of their payload.
/// Writing the same record twice is a no-op, so the store only grows.
#[derive(Debug, Clone)]
pub struct WitnessStore {
    dir: PathBuf,
}

impl WitnessStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, ExplorerError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)
            .map_err(|e| ExplorerError::Store(format!("create {}: {e}", dir.display())))?;
        Ok(WitnessStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn persist(&self, record: &WitnessRecord) -> Result<PathBuf, ExplorerError> {
        let payload = serde_json::to_string_pretty(record)
            .map_err(|e| ExplorerError::Store(e.to_string()))?;
        let mut hasher = Sha256::new();
        hasher.update(payload.as_bytes());
        let name = format!("{}.json", &hex::encode(hasher.finalize())[..16]);
        let path = self.dir.join(name);
        if !path.exists() {
            std::fs::write(&path, payload)
                .map_err(|e| ExplorerError::Store(format!("write {}: {e}", path.display())))?;
        }
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<WitnessRecord, ExplorerError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExplorerError::Store(format!("read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ExplorerError::Store(e.to_string()))
    }

    /// All stored witness files, sorted by name.
    pub fn list(&self) -> Result<Vec<PathBuf>, ExplorerError> {
        let mut out = Vec::new();
        for entry in std::fs::read_dir(&self.dir)
            .map_err(|e| ExplorerError::Store(format!("read {}: {e}", self.dir.display())))?
        {
            let entry = entry.map_err(|e| ExplorerError::Store(e.to_string()))?;
            let path = entry.path();
            if path.extension().is_some_and(|e| e == "json") {
                out.push(path);
            }
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{sharpness_search, Target};
    use crate::groups::GroupSpec;

    fn small_cfg(seed: u64) -> SearchConfig {
        SearchConfig {
            target: Target::Pp { p: 4.0 },
            group: GroupSpec::parse("Z2", 64).unwrap(),
            dim: 2,
            trials: 30,
            restarts: 2,
            perturbation_scale: 0.2,
            seed,
            budget_secs: None,
        }
    }

    #[test]
    fn near_equality_results_are_persisted_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let store = WitnessStore::open(dir.path()).unwrap();
        let cfg = small_cfg(4);
        let result = sharpness_search(&cfg, Some(&store)).unwrap();
        assert!(result.best_ratio >= 1.0 - 1e-6);
        let files = store.list().unwrap();
        assert_eq!(files.len(), 1);
        let record = WitnessStore::load(&files[0]).unwrap();
        assert_eq!(record.best_ratio, result.best_ratio);
        let field = record.witness_field(64).unwrap();
        assert_eq!(field, result.witness);
        assert_eq!(record.config.resolve(64).unwrap(), cfg);
    }

    #[test]
    fn persisting_twice_is_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let store = WitnessStore::open(dir.path()).unwrap();
        let cfg = small_cfg(5);
        let result = sharpness_search(&cfg, None).unwrap();
        let record = WitnessRecord::new(&cfg, &result);
        let p1 = store.persist(&record).unwrap();
        let p2 = store.persist(&record).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(store.list().unwrap().len(), 1);
    }
}
