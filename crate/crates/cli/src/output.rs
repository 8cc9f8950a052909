//! CSV and JSON-summary emission.
//!
//! CSV cells hold full-precision scientific notation (shortest decimal
//! that round-trips), locale-independent by construction, with a stable
//! documented column order per command.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use rydsqueeze::error::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A cell value in a CSV row.
pub enum Cell {
    UInt(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn write(&self, out: &mut String) {
        match self {
            Cell::UInt(v) => out.push_str(&v.to_string()),
            Cell::Float(v) => out.push_str(&format!("{v:e}")),
            Cell::Text(v) => out.push_str(v),
        }
    }
}

/// Accumulates a CSV document in memory.
pub struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    /// Start a document; `comments` become leading `#` lines.
    pub fn new(comments: &[String], header: &[&str]) -> Self {
        let mut buf = String::new();
        for c in comments {
            buf.push_str("# ");
            buf.push_str(c);
            buf.push('\n');
        }
        buf.push_str(&header.join(","));
        buf.push('\n');
        Self {
            buf,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, cells: &[Cell]) {
        assert_eq!(cells.len(), self.columns, "column count mismatch");
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                self.buf.push(',');
            }
            c.write(&mut self.buf);
        }
        self.buf.push('\n');
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Where results go: a file (plus JSON summary sidecar) or stdout.
pub struct Sink {
    pub out_path: Option<PathBuf>,
}

impl Sink {
    /// Write the CSV document; returns the summary-file path if any.
    pub fn write_csv(&self, csv: Csv) -> Result<Option<PathBuf>> {
        let text = csv.into_string();
        match &self.out_path {
            Some(path) => {
                std::fs::write(path, text)
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
                Ok(Some(summary_path(path)))
            }
            None => {
                print!("{text}");
                Ok(None)
            }
        }
    }

    /// Emit the JSON summary: to the sidecar file when writing to a file,
    /// to stderr otherwise.
    pub fn write_summary(&self, summary: &serde_json::Value) -> Result<()> {
        let text = serde_json::to_string_pretty(summary)
            .map_err(|e| Error::Config(format!("summary serialization failed: {e}")))?;
        match &self.out_path {
            Some(path) => {
                let sp = summary_path(path);
                std::fs::write(&sp, text)
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", sp.display())))?;
            }
            None => {
                let _ = writeln!(std::io::stderr(), "{text}");
            }
        }
        Ok(())
    }

    /// Single-record commands: JSON to the file or stdout.
    pub fn write_record(&self, record: &serde_json::Value) -> Result<()> {
        let text = serde_json::to_string_pretty(record)
            .map_err(|e| Error::Config(format!("record serialization failed: {e}")))?;
        match &self.out_path {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
            None => {
                println!("{text}");
                Ok(())
            }
        }
    }
}

fn summary_path(csv_path: &Path) -> PathBuf {
    let mut name = csv_path.file_stem().unwrap_or_default().to_os_string();
    name.push(".summary.json");
    csv_path.with_file_name(name)
}

pub fn sha256_hex(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Provenance block shared by every summary.
pub fn provenance(command: &str, config_text: &str, seed: Option<u64>) -> serde_json::Value {
    serde_json::json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config_sha256": sha256_hex(config_text),
        "seed": seed,
    })
}
