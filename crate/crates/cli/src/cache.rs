//! Append-only JSON-lines verdict cache keyed by the job hash.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::job::{run_job, JobSpec, VerdictRecord};
use crate::{CliError, Result};

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    writer: Mutex<()>,
}

/// A record together with its exact stored line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CachedRecord {
    pub line: String,
    pub record: VerdictRecord,
    pub hit: bool,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into(), writer: Mutex::new(()) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The first stored record with this key.
    pub fn lookup(&self, key: &str) -> Result<Option<CachedRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record: VerdictRecord = serde_json::from_str(&line)
                .map_err(|e| CliError::Parse(format!("{}:{}: {e}", self.path.display(), i + 1)))?;
            if record.key == key {
                return Ok(Some(CachedRecord { line, record, hit: true }));
            }
        }
        Ok(None)
    }

    pub fn append(&self, record: &VerdictRecord) -> Result<String> {
        let line = serde_json::to_string(record)?;
        let _guard = self.writer.lock().expect("cache writer");
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        Ok(line)
    }

    /// Returns the cached record when present, otherwise runs the job and appends it.
    pub fn get_or_run(&self, job: &JobSpec) -> Result<CachedRecord> {
        if let Some(hit) = self.lookup(&job.key())? {
            return Ok(hit);
        }
        let record = run_job(job)?;
        let line = self.append(&record)?;
        Ok(CachedRecord { line, record, hit: false })
    }
}
