//! Run manifests: config echo, named verdicts, timings, and a digest of
//! every emitted file. The CSVs are byte-reproducible for a fixed config and
//! seed; the manifest's timing block is the one intentionally varying part.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// One named pass/fail check with a human-readable detail line. Every number
/// in the detail also lives in an emitted CSV, so verdicts can be recomputed
/// offline.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Name, size, and SHA-256 of an emitted file.
#[derive(Debug, Clone, Serialize)]
pub struct FileDigest {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(name: &str, content: &[u8]) -> FileDigest {
        let mut hasher = Sha256::new();
        hasher.update(content);
        let digest = hasher.finalize();
        let sha256 = digest.iter().fold(String::with_capacity(64), |mut s, b| {
            use std::fmt::Write;
            let _ = write!(s, "{b:02x}");
            s
        });
        FileDigest {
            name: name.to_string(),
            bytes: content.len() as u64,
            sha256,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub experiment: String,
    pub version: String,
    pub master_seed: u64,
    pub threads: usize,
    pub config: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
    pub timing_seconds: BTreeMap<String, f64>,
    pub files: Vec<FileDigest>,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }
}
