//! Content-addressed resolution cache.
//!
//! Keys are SHA-256 hashes of the ring data, the module presentation and
//! the (H, D) window, so entries can never be confused across configs.
//! Files are versioned binary blobs: magic, format version, payload hash,
//! then the JSON-encoded differentials. A corrupt file is ignored with a
//! warning and the resolution is recomputed.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use redcx_core::gradedmod::GradedModule;
use redcx_core::resolve::{preload_resolution, Resolution};
use redcx_core::ringkernel::QuotientRing;
use redcx_core::Limits;

use crate::serialize::{resolution_diffs_from_json, resolution_diffs_to_json};

const MAGIC: &[u8; 4] = b"RCXC";
const VERSION: u32 = 1;

/// Content hash of (ring, module presentation, H, D).
pub fn cache_key(ring: &QuotientRing, module: &GradedModule, steps: usize, max_degree: i64) -> String {
    let mut hasher = Sha256::new();
    hasher.update(ring.characteristic().to_le_bytes());
    for v in ring.var_names() {
        hasher.update(v.as_bytes());
        hasher.update([0u8]);
    }
    for g in ring.groebner_basis() {
        hasher.update(ring.display_poly(g).as_bytes());
        hasher.update([0u8]);
    }
    let pres = module.presentation();
    for &s in pres.target().shifts() {
        hasher.update(s.to_le_bytes());
    }
    hasher.update([1u8]);
    for &s in pres.source().shifts() {
        hasher.update(s.to_le_bytes());
    }
    for row in pres.entries() {
        for e in row {
            hasher.update(ring.display_poly(e).as_bytes());
            hasher.update([0u8]);
        }
    }
    hasher.update((steps as u64).to_le_bytes());
    hasher.update(max_degree.to_le_bytes());
    hex(&hasher.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.rcxc"))
}

pub fn cache_put(dir: &Path, key: &str, res: &Resolution) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let ring = res.module().ring();
    let payload =
        serde_json::to_vec(&resolution_diffs_to_json(res.diffs(), ring)).expect("serializable");
    let mut data = Vec::with_capacity(payload.len() + 44);
    data.extend_from_slice(MAGIC);
    data.extend_from_slice(&VERSION.to_le_bytes());
    let digest = Sha256::digest(&payload);
    data.extend_from_slice(&digest);
    data.extend_from_slice(&payload);
    std::fs::write(entry_path(dir, key), data)
}

pub fn cache_get(
    dir: &Path,
    key: &str,
    ring: &Arc<QuotientRing>,
    module: &Arc<GradedModule>,
    limits: &Limits,
) -> Option<Resolution> {
    let path = entry_path(dir, key);
    let data = std::fs::read(&path).ok()?;
    let parsed = (|| -> anyhow::Result<Resolution> {
        if data.len() < 40 || &data[0..4] != MAGIC {
            anyhow::bail!("bad magic");
        }
        let version = u32::from_le_bytes(data[4..8].try_into().unwrap());
        if version != VERSION {
            anyhow::bail!("unsupported cache version {version}");
        }
        let stored_digest = &data[8..40];
        let payload = &data[40..];
        let digest = Sha256::digest(payload);
        if digest.as_slice() != stored_digest {
            anyhow::bail!("payload hash mismatch");
        }
        let v: serde_json::Value = serde_json::from_slice(payload)?;
        let diffs = resolution_diffs_from_json(&v, ring)?;
        Ok(preload_resolution(module, diffs, limits)?)
    })();
    match parsed {
        Ok(res) => Some(res),
        Err(e) => {
            eprintln!("warning: ignoring corrupt cache entry {}: {e}", path.display());
            None
        }
    }
}
