use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything that determines a command's output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<String>,
    pub p: u32,
    pub e: u32,
    pub nmax: usize,
    pub kmax: usize,
    pub d: usize,
    pub seed: u64,
    pub trials: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub seed: u64,
}

/// Output of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub config: RunConfig,
    pub quantities: Vec<String>,
    /// Formula defining each quantity.
    #[serde(rename = "ref")]
    pub refs: Map<String, Value>,
    pub rows: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub summary: Option<Value>,
    /// False when a checked inequality or identity failed.
    pub passed: bool,
    pub provenance: Provenance,
}

impl ResultRecord {
    pub fn new(config: &RunConfig, quantities: &[(&str, &str)], rows: Vec<Value>) -> Self {
        ResultRecord {
            config: config.clone(),
            quantities: quantities.iter().map(|q| q.0.to_string()).collect(),
            refs: quantities
                .iter()
                .map(|(q, r)| (q.to_string(), Value::String(r.to_string())))
                .collect(),
            rows,
            summary: None,
            passed: true,
            provenance: Provenance {
                version: VERSION.to_string(),
                seed: config.seed,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

/// JSON renders the whole record; CSV renders the rows, with columns in
/// field order of the first row.
pub fn render(record: &ResultRecord, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(record).map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: Vec<String> = match record.rows.first() {
                Some(Value::Object(m)) => m.keys().cloned().collect(),
                _ => Vec::new(),
            };
            if !header.is_empty() {
                w.write_record(&header).map_err(|e| Error::Internal(e.to_string()))?;
            }
            for row in &record.rows {
                let fields: Vec<String> = header.iter().map(|k| row.get(k).map_or_else(String::new, cell)).collect();
                w.write_record(&fields).map_err(|e| Error::Internal(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
        }
    }
}
