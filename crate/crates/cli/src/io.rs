use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use cdg_core::document::{parse_graph, ParseOptions, ParsedGraph};
use cdg_core::fixtures;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Failure, OutputArgs};

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub tool_version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub input_digests: BTreeMap<String, String>,
    pub output_digests: BTreeMap<String, String>,
}

/// Tracks what a command read and wrote.
pub struct Run {
    manifest: RunManifest,
}

impl Run {
    pub fn new(command_line: Vec<String>) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self {
            manifest: RunManifest {
                command_line,
                tool_version: env!("CARGO_PKG_VERSION"),
                timestamp,
                input_digests: BTreeMap::new(),
                output_digests: BTreeMap::new(),
            },
        }
    }

    /// Reads a graph from a file, or from the bundled fixture of that name.
    pub fn load_graph(&mut self, source: &str, no_prime_check: bool) -> Result<ParsedGraph, Failure> {
        let text = if Path::new(source).is_file() {
            fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))?
        } else if let Some(text) = fixtures::source(source) {
            text.to_string()
        } else {
            return Err(Failure::Input(format!("{source}: no such file or fixture")));
        };
        self.manifest.input_digests.insert(source.to_string(), digest(text.as_bytes()));
        let parsed = parse_graph(&text, ParseOptions { prime_check: !no_prime_check })
            .map_err(|e| Failure::Input(format!("{source}: {e}")))?;
        for w in &parsed.warnings {
            eprintln!("warning: {source}: {w}");
        }
        Ok(parsed)
    }

    pub fn write(&mut self, path: &Path, contents: &str) -> Result<(), Failure> {
        fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.manifest.output_digests.insert(path.display().to_string(), digest(contents.as_bytes()));
        Ok(())
    }

    /// Emits `value` per the output flags; `text` is the human rendering.
    pub fn emit<T: Serialize>(&mut self, out: &OutputArgs, value: &T, text: &str) -> Result<(), Failure> {
        let json = to_pretty(value);
        if out.json {
            print!("{json}");
        } else {
            print!("{text}");
        }
        if let Some(path) = &out.out {
            self.write(path, &json)?;
        }
        Ok(())
    }

    pub fn write_manifest(&mut self, path: &Path) -> Result<(), Failure> {
        let text = to_pretty(&self.manifest);
        fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("results serialise") + "\n"
}
