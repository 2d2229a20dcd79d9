//! Run manifests: every output file gets a sibling `<file>.manifest.json`
//! recording the exact invocation, seed, tool version, input digests, and
//! timestamps. Re-running the same invocation reproduces the numeric
//! payload byte for byte (the manifest itself carries the timestamps, the
//! payload never does).

use serde_json::json;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::time::SystemTime;

pub struct ManifestBuilder {
    invocation: String,
    seed: Option<u64>,
    inputs: Vec<(String, String)>,
    started: SystemTime,
}

impl ManifestBuilder {
    pub fn new(invocation: &str) -> Self {
        ManifestBuilder {
            invocation: invocation.to_string(),
            seed: None,
            inputs: Vec::new(),
            started: SystemTime::now(),
        }
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    pub fn input_file(&mut self, path: &Path, contents: &[u8]) -> &mut Self {
        let digest = Sha256::digest(contents);
        self.inputs
            .push((path.display().to_string(), format!("{digest:x}")));
        self
    }

    /// Writes `payload` to `path` and the manifest next to it.
    pub fn write_output(&self, path: &Path, payload: &[u8]) -> std::io::Result<()> {
        std::fs::write(path, payload)?;
        let manifest = json!({
            "command": self.invocation,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs.iter()
                .map(|(p, d)| json!({"path": p, "sha256": d}))
                .collect::<Vec<_>>(),
            "output": {
                "path": path.display().to_string(),
                "sha256": format!("{:x}", Sha256::digest(payload)),
            },
            "started_at": system_time_string(self.started),
            "finished_at": system_time_string(SystemTime::now()),
        });
        let manifest_path = manifest_path_for(path);
        std::fs::write(
            manifest_path,
            serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
        )
    }
}

pub fn manifest_path_for(output: &Path) -> PathBuf {
    let mut name = output
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_string());
    name.push_str(".manifest.json");
    output.with_file_name(name)
}

fn system_time_string(t: SystemTime) -> String {
    match t.duration_since(SystemTime::UNIX_EPOCH) {
        Ok(d) => format!("{}.{:09}", d.as_secs(), d.subsec_nanos()),
        Err(_) => "before-epoch".to_string(),
    }
}
