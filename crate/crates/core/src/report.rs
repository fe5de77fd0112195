//! Run manifests and CSV/JSON serialization.
//!
//! Every output carries a [`RunManifest`]: CSV files as a leading
//! `# manifest ...` comment line, JSON files as an `{"manifest", "data"}`
//! envelope. Nothing machine-dependent (thread counts, wall-clock times)
//! is written, so identical manifests give byte-identical files.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::census::CensusRecord;
use crate::error::{Error, Result};

/// Environment variable fixing the manifest timestamp (seconds since the
/// Unix epoch), for reproducible files.
pub const SOURCE_DATE_EPOCH_ENV: &str = "SOURCE_DATE_EPOCH";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        let timestamp = std::env::var(SOURCE_DATE_EPOCH_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or_else(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            });
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            seed: None,
        }
    }

    pub fn with_timestamp(mut self, timestamp: u64) -> Self {
        self.timestamp = timestamp;
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// One CSV row of a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub g: usize,
    pub p: u64,
    pub k: u32,
    #[serde(rename = "box")]
    pub box_count: u64,
    pub weil: u64,
    pub real_root: u64,
    pub ordinary: u64,
    pub certified: u64,
    pub both: u64,
    pub ratio_interior: String,
    pub sieve_y: u64,
}

impl From<&CensusRecord> for CensusRow {
    fn from(r: &CensusRecord) -> Self {
        Self {
            g: r.g,
            p: r.p,
            k: r.k,
            box_count: r.counts.box_count,
            weil: r.counts.weil_count,
            real_root: r.counts.real_root_count,
            ordinary: r.counts.ordinary_count,
            certified: r.counts.certified_w2g_count,
            both: r.counts.both_count,
            ratio_interior: r.ratio_interior.clone(),
            sieve_y: r.sieve_y,
        }
    }
}

const MANIFEST_PREFIX: &str = "# manifest ";

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::invalid(format!("i/o: {e}"))
}

pub fn write_census_csv<W: Write>(mut out: W, manifest: &RunManifest, records: &[CensusRecord]) -> Result<()> {
    let header = serde_json::to_string(manifest).map_err(io_error)?;
    writeln!(out, "{MANIFEST_PREFIX}{header}").map_err(io_error)?;
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(CensusRow::from(r)).map_err(io_error)?;
    }
    writer.flush().map_err(io_error)?;
    Ok(())
}

pub fn census_csv_string(manifest: &RunManifest, records: &[CensusRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_census_csv(&mut buf, manifest, records)?;
    String::from_utf8(buf).map_err(io_error)
}

pub fn read_census_csv<R: BufRead>(mut input: R) -> Result<(RunManifest, Vec<CensusRow>)> {
    let mut first = String::new();
    input.read_line(&mut first).map_err(io_error)?;
    let manifest = first
        .trim_end()
        .strip_prefix(MANIFEST_PREFIX)
        .ok_or_else(|| Error::invalid("missing manifest line"))?;
    let manifest: RunManifest = serde_json::from_str(manifest).map_err(io_error)?;
    let mut reader = csv::Reader::from_reader(input);
    let rows = reader
        .deserialize()
        .collect::<std::result::Result<Vec<CensusRow>, _>>()
        .map_err(io_error)?;
    Ok((manifest, rows))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub manifest: RunManifest,
    pub data: T,
}

pub fn to_json<T: Serialize>(manifest: &RunManifest, data: &T) -> Result<String> {
    let envelope = Envelope {
        manifest: manifest.clone(),
        data,
    };
    let mut s = serde_json::to_string_pretty(&envelope).map_err(io_error)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<Envelope<T>> {
    serde_json::from_str(text).map_err(io_error)
}
