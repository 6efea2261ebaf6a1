//! On-disk memo of invariant dimensions, keyed by weight (its length is the rank).

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use twistvol::invariants::{sl2_invariant_dim, InvariantTable};
use twistvol::{RootSystemA, Weight};

use crate::commands::CliError;

#[derive(Serialize, Deserialize)]
struct Entry {
    weight: Vec<i64>,
    dim: u64,
}

pub struct DiskCache {
    path: PathBuf,
    table: InvariantTable,
}

impl DiskCache {
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let table = InvariantTable::new();
        match fs::read_to_string(path) {
            Ok(text) => {
                let entries: Vec<Entry> = serde_json::from_str(&text)
                    .map_err(|e| CliError::Cache(format!("{}: {e}", path.display())))?;
                for e in entries {
                    table.insert(Weight::new(e.weight), e.dim);
                }
            }
            Err(e) if e.kind() == ErrorKind::NotFound => {}
            Err(e) => return Err(CliError::Cache(format!("{}: {e}", path.display()))),
        }
        Ok(Self { path: path.to_path_buf(), table })
    }

    /// Cached value, re-verified against the oracle in debug builds.
    pub fn invariant_dim(&self, rs: &RootSystemA, lam: &Weight) -> Result<u64, CliError> {
        if let Some(v) = self.table.get(lam) {
            if cfg!(debug_assertions) && sl2_invariant_dim(rs, lam)? != v {
                return Err(CliError::Cache(format!("stale entry for {lam} in {}", self.path.display())));
            }
            return Ok(v);
        }
        Ok(self.table.get_or_compute(rs, lam)?)
    }

    pub fn save(&self) -> Result<(), CliError> {
        let entries: Vec<Entry> =
            self.table.entries().into_iter().map(|(w, dim)| Entry { weight: w.coords().to_vec(), dim }).collect();
        let text = serde_json::to_string(&entries).expect("serializable cache");
        fs::write(&self.path, text).map_err(|e| CliError::Cache(format!("{}: {e}", self.path.display())))
    }
}
