use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::session::Session;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// The command and its arguments, as given.
    pub command: Vec<String>,
    /// sha256 over the session text, command, seed and budget.
    pub inputs_digest: String,
    pub outputs: Value,
    /// Named verification checks; the run succeeds iff all are true.
    pub verdicts: BTreeMap<String, bool>,
    pub version: String,
    pub seed: u64,
}

impl Certificate {
    pub fn new(session: &Session, command: &[String], outputs: Value, verdicts: BTreeMap<String, bool>) -> Self {
        Certificate {
            command: command.to_vec(),
            inputs_digest: inputs_digest(session, command),
            outputs,
            verdicts,
            version: VERSION.to_string(),
            seed: session.seed,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        // serde_json's default map is ordered, so going through Value sorts keys
        let v = serde_json::to_value(self).expect("certificate serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn inputs_digest(session: &Session, command: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(session.text.as_bytes());
    h.update([0]);
    for c in command {
        h.update(c.as_bytes());
        h.update([0]);
    }
    h.update(session.seed.to_le_bytes());
    let b = session.budget;
    h.update(b.max_degree.to_le_bytes());
    h.update(b.max_steps.to_le_bytes());
    h.update(b.max_retries.to_le_bytes());
    hex::encode(h.finalize())
}

pub fn emit_certificate(cert: &Certificate, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, cert.to_canonical_json())
}
