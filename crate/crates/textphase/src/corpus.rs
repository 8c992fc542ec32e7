//! On-disk corpus layout for temperature sweeps.
//!
//! Sweep corpora are flat text files named `<model>_t<temperature>_s<seed>.txt`.
//! A scan walks a directory tree, parses those names, rejects duplicate
//! (model, temperature, seed) triples, and reports every file it skipped.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{0} is not a directory")]
    NotADirectory(PathBuf),
    #[error("duplicate corpus entry for ({model}, {temperature}, {seed}): {first} and {second}")]
    DuplicateTriple {
        model: String,
        temperature: f64,
        seed: u64,
        first: PathBuf,
        second: PathBuf,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// One corpus file plus, when the file came from the generation client,
/// the bookkeeping of how it was produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub model: String,
    pub temperature: f64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_tokens: Option<usize>,
    /// Model tokens accumulated during generation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub token_count: Option<usize>,
    /// Word count of the stored text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calls: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retries: Option<u32>,
    /// True when generation stopped before reaching the token target.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

impl ManifestEntry {
    pub fn new(path: PathBuf, model: String, temperature: f64, seed: u64) -> Self {
        Self {
            path,
            model,
            temperature,
            seed,
            target_tokens: None,
            token_count: None,
            word_count: None,
            calls: None,
            retries: None,
            truncated: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub root: PathBuf,
    pub entries: Vec<ManifestEntry>,
    /// Files under the root that did not match the naming convention.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<PathBuf>,
}

impl CorpusManifest {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, json + "\n")
    }

    pub fn read_json(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CorpusError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        })
    }
}

/// Canonical file name for a sweep text.
pub fn corpus_filename(model: &str, temperature: f64, seed: u64) -> String {
    format!("{model}_t{temperature}_s{seed}.txt")
}

/// Parse `<model>_t<temperature>_s<seed>` from a file stem. The model part
/// may itself contain underscores, so the fields are taken from the right.
pub fn parse_corpus_filename(name: &str) -> Option<(String, f64, u64)> {
    let stem = name.strip_suffix(".txt")?;
    let (rest, seed_part) = stem.rsplit_once("_s")?;
    let seed: u64 = seed_part.parse().ok()?;
    let (model, temp_part) = rest.rsplit_once("_t")?;
    let temperature: f64 = temp_part.parse().ok()?;
    if model.is_empty() || !temperature.is_finite() || temperature < 0.0 {
        return None;
    }
    Some((model.to_string(), temperature, seed))
}

/// Walk `root` and build a manifest of every conforming `.txt` file.
/// Entries come back sorted by (model, temperature, seed).
pub fn scan_corpus(root: &Path) -> Result<CorpusManifest, CorpusError> {
    if !root.is_dir() {
        return Err(CorpusError::NotADirectory(root.to_path_buf()));
    }
    let mut entries: Vec<ManifestEntry> = Vec::new();
    let mut skipped = Vec::new();
    let mut files: Vec<PathBuf> = WalkDir::new(root)
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file())
        .map(|e| e.into_path())
        .collect();
    files.sort();

    for path in files {
        let name = path.file_name().and_then(|n| n.to_str());
        // Sidecar metadata written by the generator is not corpus text.
        if path.extension().is_some_and(|e| e == "json") {
            continue;
        }
        match name.and_then(parse_corpus_filename) {
            Some((model, temperature, seed)) => {
                if let Some(existing) = entries.iter().find(|e| {
                    e.model == model && e.temperature == temperature && e.seed == seed
                }) {
                    return Err(CorpusError::DuplicateTriple {
                        model,
                        temperature,
                        seed,
                        first: existing.path.clone(),
                        second: path,
                    });
                }
                entries.push(ManifestEntry::new(path, model, temperature, seed));
            }
            None => skipped.push(path),
        }
    }
    entries.sort_by(|a, b| {
        (&a.model, a.temperature, a.seed)
            .partial_cmp(&(&b.model, b.temperature, b.seed))
            .expect("temperatures are finite")
    });
    Ok(CorpusManifest {
        root: root.to_path_buf(),
        entries,
        skipped,
    })
}

/// Read a corpus text file.
pub fn read_text(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}
