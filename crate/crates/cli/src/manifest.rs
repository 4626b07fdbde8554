//! Run manifests. Every invocation records what produced its output — argv,
//! config snapshot, seed, thread count, code version, and a SHA-256 of the
//! exact bytes written — so any result can be reproduced bit-for-bit.
//!
//! The manifest goes to `<out>.manifest.json` when --out is set, otherwise
//! to stderr, keeping the primary stream clean for diffing.

use anyhow::{Context, Result};
use serde_json::json;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

pub struct RunInfo {
    pub seed: u64,
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub config: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes the primary output (stdout or --out), then the manifest beside it.
pub fn emit(info: &RunInfo, primary: &str) -> Result<()> {
    match &info.out {
        Some(path) => std::fs::write(path, primary)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(primary.as_bytes())?;
            stdout.flush()?;
        }
    }

    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let manifest = json!({
        "code_version": env!("CARGO_PKG_VERSION"),
        "command_line": std::env::args().collect::<Vec<_>>(),
        "config": info.config,
        "output_path": info
            .out
            .as_ref()
            .map_or_else(|| "stdout".to_string(), |p| p.display().to_string()),
        "output_sha256": sha256_hex(primary.as_bytes()),
        "seed": info.seed,
        "threads": info.threads,
        "timestamp_unix": timestamp,
    });

    match &info.out {
        Some(path) => {
            let mpath = PathBuf::from(format!("{}.manifest.json", path.display()));
            std::fs::write(&mpath, crate::output::json_doc(&manifest))
                .with_context(|| format!("writing {}", mpath.display()))?;
        }
        None => eprintln!("{manifest}"),
    }
    Ok(())
}
