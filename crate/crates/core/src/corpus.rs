//! Manifest-driven benchmark runs over a directory of plain files.
//!
//! A manifest is a UTF-8 TSV file with one entry per line:
//!
//! ```text
//! name  size  sha256|-  [q|-  [natural subsets laplace jp a b c d]]
//! ```
//!
//! Lines starting with `#` are comments. A digest of `-` means only the size
//! is checked. The optional score columns are the expected whole-byte
//! scores for the laws in [`TABLE1_LAWS`] order.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::codec::{evaluate_laws, CodelengthReport, SymbolStream};
use crate::laws::{SuccessionLaw, TABLE1_LAWS};
use crate::{Error, Result};

/// Environment variable naming the corpus directory.
pub const CORPUS_DIR_ENV: &str = "SUCCESSION_CORPUS_DIR";

/// Allowed per-file deviation from an expected score, in bytes.
pub const FILE_TOLERANCE: i64 = 2;

/// Allowed deviation of a column total, in bytes.
pub const TOTAL_TOLERANCE: i64 = 20;

/// Published column totals, in [`TABLE1_LAWS`] order.
pub const CALGARY_TOTALS: [i64; 8] = [2089, 2244, 4350, 2992, 2623, 3338, 2904, 2505];

/// Total size of the Calgary corpus in bytes.
pub const CALGARY_SIZE: u64 = 3_251_493;

const CALGARY_TSV: &str = include_str!("../data/calgary.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub name: String,
    pub size: u64,
    /// Lowercase hex SHA-256, if pinned.
    pub sha256: Option<String>,
    pub expected_q: Option<usize>,
    /// Expected scores in [`TABLE1_LAWS`] order.
    pub expected_scores: Option<[i64; 8]>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
}

impl CorpusManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut names = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let entry =
                parse_entry(trimmed).map_err(|message| Error::Manifest { line, message })?;
            if !names.insert(entry.name.clone()) {
                return Err(Error::DuplicateEntry(entry.name));
            }
            entries.push(entry);
        }
        Ok(CorpusManifest { entries })
    }

    pub fn total_size(&self) -> u64 {
        self.entries.iter().map(|e| e.size).sum()
    }

    /// Column sums of the expected scores, if every entry has them.
    pub fn expected_totals(&self) -> Option<[i64; 8]> {
        let mut totals = [0; 8];
        for e in &self.entries {
            for (t, s) in totals.iter_mut().zip(e.expected_scores?) {
                *t += s;
            }
        }
        Some(totals)
    }
}

fn parse_entry(line: &str) -> std::result::Result<ManifestEntry, String> {
    let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
    if !matches!(fields.len(), 3 | 4 | 12) {
        return Err(format!(
            "expected 3, 4 or 12 tab-separated fields, found {}",
            fields.len()
        ));
    }
    let name = fields[0];
    if name.is_empty() || name.contains(['/', '\\']) || name == "." || name == ".." {
        return Err(format!("invalid file name `{name}`"));
    }
    let size: u64 = fields[1]
        .parse()
        .map_err(|_| format!("invalid size `{}`", fields[1]))?;
    if size == 0 {
        return Err("size must be positive".into());
    }
    let sha256 = match fields[2] {
        "-" => None,
        d if d.len() == 64 && d.bytes().all(|b| b.is_ascii_hexdigit()) => {
            Some(d.to_ascii_lowercase())
        }
        d => return Err(format!("digest `{d}` is not 64 hex characters")),
    };
    let expected_q = match fields.get(3) {
        None | Some(&"-") => None,
        Some(q) => Some(q.parse().map_err(|_| format!("invalid q `{q}`"))?),
    };
    let expected_scores = if fields.len() == 12 {
        let mut scores = [0i64; 8];
        for (s, f) in scores.iter_mut().zip(&fields[4..]) {
            *s = f.parse().map_err(|_| format!("invalid score `{f}`"))?;
        }
        Some(scores)
    } else {
        None
    };
    Ok(ManifestEntry {
        name: name.to_string(),
        size,
        sha256,
        expected_q,
        expected_scores,
    })
}

pub fn load_manifest(path: &Path) -> Result<CorpusManifest> {
    CorpusManifest::parse(&fs::read_to_string(path)?)
}

/// The bundled Calgary manifest with the published scores.
pub fn calgary_manifest() -> CorpusManifest {
    CorpusManifest::parse(CALGARY_TSV).expect("bundled manifest is well formed")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verification {
    Ok,
    Missing,
    SizeMismatch { expected: u64, actual: u64 },
    DigestMismatch { expected: String, actual: String },
    Unreadable(String),
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verification::Ok)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn check_bytes(entry: &ManifestEntry, bytes: &[u8]) -> Verification {
    if bytes.len() as u64 != entry.size {
        return Verification::SizeMismatch {
            expected: entry.size,
            actual: bytes.len() as u64,
        };
    }
    match &entry.sha256 {
        Some(expected) => {
            let actual = sha256_hex(bytes);
            if &actual == expected {
                Verification::Ok
            } else {
                Verification::DigestMismatch {
                    expected: expected.clone(),
                    actual,
                }
            }
        }
        None => Verification::Ok,
    }
}

fn read_entry(entry: &ManifestEntry, dir: &Path) -> std::result::Result<Vec<u8>, Verification> {
    match fs::read(dir.join(&entry.name)) {
        Ok(bytes) => Ok(bytes),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(Verification::Missing),
        Err(e) => Err(Verification::Unreadable(e.to_string())),
    }
}

pub fn verify_file(entry: &ManifestEntry, dir: &Path) -> Verification {
    match read_entry(entry, dir) {
        Ok(bytes) => check_bytes(entry, &bytes),
        Err(v) => v,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileResult {
    pub name: String,
    pub q: usize,
    pub reports: Vec<CodelengthReport>,
    /// Departures from the manifest's expectations beyond tolerance.
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusRun {
    pub laws: Vec<SuccessionLaw>,
    /// Evaluated files in name order.
    pub files: Vec<FileResult>,
    /// Files that failed verification, in name order.
    pub skipped: Vec<(String, Verification)>,
    /// Per-law score totals over the evaluated files.
    pub totals: Vec<i64>,
    /// Total mismatches; only checked when every manifest file was evaluated.
    pub total_mismatches: Vec<String>,
}

impl CorpusRun {
    /// No skipped files and no departures from the expectations.
    pub fn is_clean(&self) -> bool {
        self.skipped.is_empty()
            && self.total_mismatches.is_empty()
            && self.files.iter().all(|f| f.mismatches.is_empty())
    }
}

fn table_column(law: &SuccessionLaw) -> Option<usize> {
    TABLE1_LAWS.iter().position(|l| l == law)
}

/// Loose lower bound `entropy - 8·k·log2(n+1)` on any order-0 codelength.
/// A report below it points at a sign or accumulation error.
pub fn within_envelope(report: &CodelengthReport, k: usize) -> bool {
    let slack = 8.0 * k as f64 * ((report.n + 1) as f64).log2();
    report.bits >= report.entropy_bits - slack
}

fn evaluate_entry(
    entry: &ManifestEntry,
    bytes: &[u8],
    laws: &[SuccessionLaw],
) -> Result<FileResult> {
    let stream = SymbolStream::from_bytes(bytes, 256)?;
    let reports = evaluate_laws(&stream, laws)?;
    let q = stream.frequencies().q();
    let mut mismatches: Vec<String> = reports
        .iter()
        .filter(|r| !within_envelope(r, stream.k()))
        .map(|r| {
            format!(
                "{}: {:.3} bits is below the entropy envelope",
                r.law, r.bits
            )
        })
        .collect();
    if let Some(expected) = entry.expected_q {
        if expected != q {
            mismatches.push(format!("q = {q}, expected {expected}"));
        }
    }
    if let Some(scores) = entry.expected_scores {
        for r in &reports {
            if let Some(col) = table_column(&r.law) {
                let want = scores[col];
                if (r.score_bytes - want).abs() > FILE_TOLERANCE {
                    mismatches.push(format!(
                        "{}: score {} bytes, expected {want}",
                        r.law, r.score_bytes
                    ));
                }
            }
        }
    }
    Ok(FileResult {
        name: entry.name.clone(),
        q,
        reports,
        mismatches,
    })
}

/// Evaluates every verified file under every law. Files are processed in
/// parallel; the output is in name order and does not depend on scheduling.
pub fn run_corpus(
    manifest: &CorpusManifest,
    dir: &Path,
    laws: &[SuccessionLaw],
) -> Result<CorpusRun> {
    let outcomes: Vec<(String, std::result::Result<FileResult, Verification>)> = manifest
        .entries
        .par_iter()
        .map(|entry| {
            let outcome = match read_entry(entry, dir) {
                Err(v) => Err(v),
                Ok(bytes) => match check_bytes(entry, &bytes) {
                    Verification::Ok => evaluate_entry(entry, &bytes, laws)
                        .map_err(|e| Verification::Unreadable(e.to_string())),
                    v => Err(v),
                },
            };
            (entry.name.clone(), outcome)
        })
        .collect();
    let mut files = Vec::new();
    let mut skipped = Vec::new();
    for (name, outcome) in outcomes {
        match outcome {
            Ok(f) => files.push(f),
            Err(v) => skipped.push((name, v)),
        }
    }
    files.sort_by(|a, b| a.name.cmp(&b.name));
    skipped.sort_by(|a, b| a.0.cmp(&b.0));

    let totals: Vec<i64> = (0..laws.len())
        .map(|i| files.iter().map(|f| f.reports[i].score_bytes).sum())
        .collect();
    let mut total_mismatches = Vec::new();
    if skipped.is_empty() && !files.is_empty() {
        if let Some(expected) = manifest.expected_totals() {
            for (law, total) in laws.iter().zip(&totals) {
                if let Some(col) = table_column(law) {
                    if (total - expected[col]).abs() > TOTAL_TOLERANCE {
                        total_mismatches.push(format!(
                            "{law}: total {total} bytes, expected {}",
                            expected[col]
                        ));
                    }
                }
            }
        }
    }
    Ok(CorpusRun {
        laws: laws.to_vec(),
        files,
        skipped,
        totals,
        total_mismatches,
    })
}

/// Source of file contents for [`fetch_corpus`].
pub trait Fetcher {
    fn fetch(&self, url: &str) -> std::result::Result<Vec<u8>, String>;
}

/// Plain HTTP(S) GET.
#[cfg(feature = "fetch")]
#[derive(Debug, Default)]
pub struct HttpFetcher {
    client: reqwest::blocking::Client,
}

#[cfg(feature = "fetch")]
impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &str) -> std::result::Result<Vec<u8>, String> {
        let resp = self
            .client
            .get(url)
            .send()
            .and_then(|r| r.error_for_status())
            .map_err(|e| e.to_string())?;
        resp.bytes().map(|b| b.to_vec()).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FetchReport {
    pub fetched: Vec<String>,
    pub present: Vec<String>,
    /// Files whose download failed, with the reason.
    pub failed: Vec<(String, String)>,
}

/// Downloads every entry that does not verify, from `base_url/name`.
///
/// Files already present and valid are left alone, so repeated calls are
/// cheap. A download that does not match its entry is a hard error and is
/// not written.
pub fn fetch_corpus(
    base_url: &str,
    dir: &Path,
    manifest: &CorpusManifest,
    fetcher: &dyn Fetcher,
) -> Result<FetchReport> {
    fs::create_dir_all(dir)?;
    let mut report = FetchReport::default();
    let base = base_url.trim_end_matches('/');
    for entry in &manifest.entries {
        if verify_file(entry, dir).is_ok() {
            report.present.push(entry.name.clone());
            continue;
        }
        let url = format!("{base}/{}", entry.name);
        let bytes = match fetcher.fetch(&url) {
            Ok(b) => b,
            Err(message) => {
                report.failed.push((entry.name.clone(), message));
                continue;
            }
        };
        match check_bytes(entry, &bytes) {
            Verification::Ok => {}
            v => {
                return Err(Error::DigestMismatch {
                    name: entry.name.clone(),
                    detail: format!("{v:?}"),
                })
            }
        }
        let target = dir.join(&entry.name);
        let partial = partial_path(&target);
        fs::write(&partial, &bytes)?;
        fs::rename(&partial, &target)?;
        report.fetched.push(entry.name.clone());
    }
    Ok(report)
}

fn partial_path(target: &Path) -> PathBuf {
    let mut name = target.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    target.with_file_name(name)
}
