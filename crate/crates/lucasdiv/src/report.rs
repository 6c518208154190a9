//! Report rows, checkpoints and scan persistence for the CLI.
//!
//! Big integers are serialized as decimal strings so every JSON consumer
//! can read them; the CSV header is part of the stable output contract.

use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::solver::{DivRecord, ScanConfig};

pub const SCHEMA_VERSION: &str = "1";

/// CSV header for theorem-scan streams.
pub const CSV_HEADER: &str = "a,b,k,m,s_min,n_witness,structural,bound_ok";

/// Renders one scan record as a CSV line (no trailing newline).
pub fn record_to_csv(r: &DivRecord) -> String {
    let s_min = r.s_min.map(|s| s.to_string()).unwrap_or_default();
    let n = r.n_witness.map(|n| n.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{}",
        r.a, r.b, r.k, r.m, s_min, n, r.structural, r.bound_ok
    )
}

/// Parses a CSV line back into a record; inverse of [`record_to_csv`].
pub fn record_from_csv(line: &str) -> Result<DivRecord> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 8 {
        return Err(Error::RejectedInput(format!(
            "expected 8 CSV fields, got {}",
            fields.len()
        )));
    }
    let parse_opt = |s: &str| -> Result<Option<u64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse()
                .map(Some)
                .map_err(|e| Error::RejectedInput(format!("bad integer {s:?}: {e}")))
        }
    };
    let parse_bool = |s: &str| -> Result<bool> {
        s.parse()
            .map_err(|e| Error::RejectedInput(format!("bad bool {s:?}: {e}")))
    };
    Ok(DivRecord {
        a: fields[0]
            .parse()
            .map_err(|e| Error::RejectedInput(format!("bad a: {e}")))?,
        b: fields[1]
            .parse()
            .map_err(|e| Error::RejectedInput(format!("bad b: {e}")))?,
        k: fields[2]
            .parse()
            .map_err(|e| Error::RejectedInput(format!("bad k: {e}")))?,
        m: fields[3]
            .parse()
            .map_err(|e| Error::RejectedInput(format!("bad m: {e}")))?,
        s_min: parse_opt(fields[4])?,
        n_witness: parse_opt(fields[5])?,
        structural: parse_bool(fields[6])?,
        bound_ok: parse_bool(fields[7])?,
    })
}

/// Hash of the full configuration; a resumed run must match it exactly.
pub fn config_hash(config: &ScanConfig) -> String {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let mut h = Sha256::new();
    h.update(canonical.as_bytes());
    hex::encode(h.finalize())
}

/// Scan checkpoint, written every [`CHECKPOINT_EVERY`] rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config_hash: String,
    /// Grid coordinate `(a, b, k, m)` of the last completed record.
    pub last_completed: (i64, i64, u64, u64),
    pub rows_emitted: u64,
}

pub const CHECKPOINT_EVERY: u64 = 1000;

impl Checkpoint {
    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let mut f = std::fs::File::create(&tmp)?;
        serde_json::to_writer(&mut f, self)?;
        f.flush()?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let data = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&data)?)
    }

    /// Refuses a checkpoint recorded under a different configuration.
    pub fn check_config(&self, config: &ScanConfig) -> Result<()> {
        let h = config_hash(config);
        if h != self.config_hash {
            return Err(Error::CheckpointMismatch(format!(
                "checkpoint hash {} does not match config hash {h}",
                self.config_hash
            )));
        }
        Ok(())
    }
}

/// JSON summary printed at the end of a scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanSummary {
    pub schema_version: String,
    pub grid_size: u64,
    pub violations: u64,
    pub wall_seconds: f64,
}
