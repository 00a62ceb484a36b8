use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use nonrep_core::verify::Verdict;
use nonrep_core::Colouring;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct ColouringReport {
    pub palette: usize,
    pub colours_used: usize,
    pub colours: Vec<usize>,
}

impl From<&Colouring> for ColouringReport {
    fn from(c: &Colouring) -> Self {
        ColouringReport {
            palette: c.palette(),
            colours_used: c.distinct(),
            colours: c.colours().to_vec(),
        }
    }
}

/// The palette a pipeline promises against the one it produced. `certified`
/// says whether the pipeline's preconditions were checked, so that
/// `within` is guaranteed.
#[derive(Debug, Serialize)]
pub struct BoundCheck {
    pub claimed: String,
    pub palette: usize,
    pub within: bool,
    pub certified: bool,
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub schema: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colouring: Option<ColouringReport>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundCheck>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, Value>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
}

impl Certificate {
    pub fn new(command: impl Into<String>) -> Self {
        Certificate {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            parameters: BTreeMap::new(),
            inputs: Vec::new(),
            graph: None,
            colouring: None,
            verdicts: Vec::new(),
            bound: None,
            extra: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.pass &= v.pass;
        self.verdicts.push(v);
    }

    pub fn finish(&mut self) {
        if let Some(b) = &self.bound {
            self.pass &= b.within || !b.certified;
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `text` to `out` through a temporary file in the same directory, or
/// to stdout when `out` is `None`.
pub fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    let Some(out) = out else {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        return stdout.flush();
    };
    let dir = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(out).map_err(|e| e.error)?;
    Ok(())
}
