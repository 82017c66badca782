use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    /// Arguments as given, without the program name.
    pub argv: Vec<String>,
    /// Fully resolved configuration.
    pub config: serde_json::Value,
    pub tool_version: String,
    pub seed: Option<u64>,
    /// sha256 of every input file read.
    pub input_digests: BTreeMap<String, String>,
    pub output_digest: String,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        argv: Vec<String>,
        config: serde_json::Value,
        seed: Option<u64>,
        inputs: &[PathBuf],
        output: &[u8],
    ) -> std::io::Result<Self> {
        let mut input_digests = BTreeMap::new();
        for p in inputs {
            input_digests.insert(p.display().to_string(), sha256_hex(&std::fs::read(p)?));
        }
        Ok(Self {
            command: command.into(),
            argv,
            config,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            seed,
            input_digests,
            output_digest: sha256_hex(output),
            timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        })
    }

    /// Manifest path that accompanies an output file.
    pub fn path_for(out: &Path) -> PathBuf {
        let mut s = out.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_and_path() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(RunManifest::path_for(Path::new("a/t.csv")), PathBuf::from("a/t.csv.manifest.json"));
    }
}
