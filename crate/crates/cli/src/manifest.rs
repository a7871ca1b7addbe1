//! Run manifests and the output envelope every command writes.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Enough to re-run a command and check that it reproduces its result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub graph_hash: Option<String>,
    pub command: String,
    /// The fully resolved command, config file and defaults applied.
    pub params: Value,
    pub seed: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub result_digest: String,
}

/// What gets written: the manifest next to the result it describes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub manifest: RunManifest,
    pub result: Value,
}

impl RunManifest {
    pub fn new(
        command: &str,
        params: Value,
        seed: u64,
        graph_hash: Option<String>,
        result: &Value,
    ) -> RunManifest {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            graph_hash,
            command: command.to_string(),
            params,
            seed,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            result_digest: digest(result),
        }
    }
}

/// SHA-256 of the canonical JSON of `result` with wall-clock fields removed.
///
/// `serde_json` maps keep their keys sorted, so the encoding is canonical.
pub fn digest(result: &Value) -> String {
    let mut v = result.clone();
    strip_timing(&mut v);
    let bytes = serde_json::to_vec(&v).expect("json values serialize");
    Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("runtime_secs");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_ignores_timing_and_key_order() {
        let a = json!({"b": 1, "a": [{"runtime_secs": 3.0, "x": 2}]});
        let b: Value = serde_json::from_str(r#"{"a":[{"x":2,"runtime_secs":9.5}],"b":1}"#).unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_ne!(digest(&a), digest(&json!({"b": 2})));
    }
}
