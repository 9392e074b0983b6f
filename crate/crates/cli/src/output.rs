//! File layouts, the run manifest and the verification report.
//!
//! Every JSON document carries a `schema` field and every CSV file starts
//! with a `# schema: ...` line. Rationals are always written as `"p/q"`.

use std::fs;
use std::path::{Path, PathBuf};

use exact_core::{format_rational, Rational};
use serde::Serialize;
use verifier::suite::is_known_unattainable;
use verifier::{blocking_failures, CheckResult};

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub fn schema(kind: &str) -> String {
    format!("burnside-lab/{kind}/{SCHEMA_VERSION}")
}

pub fn csv_header(kind: &str, columns: &str) -> String {
    format!("# schema: {}\n{columns}\n", schema(kind))
}

pub fn rational(r: &Rational) -> String {
    format_rational(r)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes `content` to `path`, or to standard output when there is none.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|source| CliError::Unwritable { path: p.to_path_buf(), source }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Everything needed to repeat a run.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, P: Serialize> {
    pub schema: String,
    pub command: &'a str,
    pub argv: Vec<String>,
    pub params: &'a P,
    pub seed: Option<u64>,
    pub tool_version: &'static str,
    pub outputs: Vec<PathBuf>,
    pub duration_secs: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    schema: String,
    passed: usize,
    failed: usize,
    blocking: usize,
    known_unattainable: Vec<&'a str>,
    results: &'a [CheckResult],
}

/// Renders results in a stable order: by check name, then parameters.
pub fn emit_report(results: &[CheckResult], format: Format) -> String {
    let mut sorted = results.to_vec();
    sorted.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let failed = sorted.iter().filter(|r| !r.passed()).count();
    let blocking = blocking_failures(&sorted).count();
    match format {
        Format::Json => to_json(&Report {
            schema: schema("report"),
            passed: sorted.len() - failed,
            failed,
            blocking,
            known_unattainable: verifier::KNOWN_UNATTAINABLE.to_vec(),
            results: &sorted,
        }),
        Format::Text | Format::Csv => {
            let mut out = format!("# schema: {}\n", schema("report"));
            for r in &sorted {
                out.push_str(&r.to_string());
                if !r.passed() && is_known_unattainable(r) {
                    out.push_str(" (known unattainable)");
                }
                out.push('\n');
            }
            out.push_str(&format!("{} passed, {failed} failed, {blocking} blocking\n", sorted.len() - failed));
            out
        }
    }
}
