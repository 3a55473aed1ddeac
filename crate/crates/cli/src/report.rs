//! The JSON envelope shared by every command.

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "thetahull";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    /// SHA-256 of the canonical input (polynomial, body document, parameters).
    pub input_hash: String,
    /// SHA-256 of the serialized `body`; wall time is not part of it.
    pub body_hash: String,
    pub body: Value,
    pub wall_time_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

impl Report {
    pub fn new(command: Vec<String>, input: &impl Serialize, body: &impl Serialize, elapsed: Duration) -> Report {
        let input = serde_json::to_vec(input).expect("input serializes");
        let body = serde_json::to_value(body).expect("body serializes");
        let body_bytes = serde_json::to_vec(&body).expect("body serializes");
        Report {
            schema: SCHEMA,
            tool: TOOL,
            version: VERSION,
            command,
            input_hash: sha256_hex(&input),
            body_hash: sha256_hex(&body_bytes),
            body,
            wall_time_ms: elapsed.as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
