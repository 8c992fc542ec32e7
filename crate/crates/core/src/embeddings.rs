//! Word-vector tables and centered vector sequences.
//!
//! Embedding files use the common plain-text layout: one `word v1 v2 … vd`
//! line per word, single-space separated, with a consistent component count
//! across lines. A text becomes a [`VectorSequence`] by resolving each token
//! against the table and subtracting the mean vector of the resolved tokens;
//! tokens without an embedding stay at the exact zero vector and are flagged
//! out-of-vocabulary, so they contribute zero correlation downstream.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

/// Errors from parsing an embedding table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    /// A line failed to parse: bad float, missing vector, or a component
    /// count that disagrees with earlier lines. Line numbers are 1-based.
    MalformedLine { line: usize },
    /// The caller demanded a specific dimension and the file has another.
    DimMismatch { expected: usize, found: usize },
    /// No data lines at all.
    EmptyFile,
}

impl fmt::Display for EmbeddingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingError::MalformedLine { line } => {
                write!(f, "malformed embedding line {line}")
            }
            EmbeddingError::DimMismatch { expected, found } => {
                write!(f, "embedding dimension mismatch: expected {expected}, found {found}")
            }
            EmbeddingError::EmptyFile => write!(f, "embedding source contains no entries"),
        }
    }
}

impl core::error::Error for EmbeddingError {}

/// Errors from resolving tokens against a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedError {
    /// Empty token list.
    EmptyInput,
    /// No token resolved to a vector, so the centering mean is undefined.
    AllTokensOov,
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::EmptyInput => write!(f, "no tokens to embed"),
            EmbedError::AllTokensOov => {
                write!(f, "no token has an embedding; centering is undefined")
            }
        }
    }
}

impl core::error::Error for EmbedError {}

/// Immutable word → vector map with a fixed dimension.
///
/// Construction goes through [`EmbeddingTableBuilder`] (or the
/// [`EmbeddingTable::parse_text`] convenience). Vectors are stored in one
/// flat row-major buffer; word order is first-seen order so that
/// serialization is deterministic.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dim: usize,
    words: Vec<String>,
    index: BTreeMap<String, usize>,
    data: Vec<f64>,
    duplicates: usize,
}

impl EmbeddingTable {
    /// Parse a whole embedding file already held in memory.
    pub fn parse_text(text: &str, expected_dim: Option<usize>) -> Result<Self, EmbeddingError> {
        let mut builder = EmbeddingTableBuilder::new(expected_dim);
        for line in text.lines() {
            builder.push_line(line)?;
        }
        builder.finish()
    }

    /// Vector dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of distinct words.
    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// How many duplicate lines were dropped during the load (first wins).
    pub fn duplicate_count(&self) -> usize {
        self.duplicates
    }

    /// Look up the raw (uncentered) vector of a word.
    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index
            .get(word)
            .map(|&i| &self.data[i * self.dim..(i + 1) * self.dim])
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    /// Entries in first-seen order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.words
            .iter()
            .enumerate()
            .map(move |(i, w)| (w.as_str(), &self.data[i * self.dim..(i + 1) * self.dim]))
    }

    /// Render back to the text format, six decimals per component.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (word, vector) in self.iter() {
            out.push_str(word);
            for v in vector {
                let _ = write!(out, " {v:.6}");
            }
            out.push('\n');
        }
        out
    }
}

/// Line-by-line builder for [`EmbeddingTable`], so loaders can stream
/// arbitrarily large files without holding the text in memory.
#[derive(Debug)]
pub struct EmbeddingTableBuilder {
    expected_dim: Option<usize>,
    dim: Option<usize>,
    words: Vec<String>,
    index: BTreeMap<String, usize>,
    data: Vec<f64>,
    duplicates: usize,
    line_no: usize,
}

impl EmbeddingTableBuilder {
    pub fn new(expected_dim: Option<usize>) -> Self {
        Self {
            expected_dim,
            dim: None,
            words: Vec::new(),
            index: BTreeMap::new(),
            data: Vec::new(),
            duplicates: 0,
            line_no: 0,
        }
    }

    /// Feed one line. Blank lines are skipped; trailing `\r` is tolerated.
    pub fn push_line(&mut self, line: &str) -> Result<(), EmbeddingError> {
        self.line_no += 1;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            return Ok(());
        }

        let mut parts = line.split_whitespace();
        let word = parts.next().expect("non-blank line has a first field");
        let start = self.data.len();
        let mut count = 0usize;
        for part in parts {
            let value: f64 = match part.parse() {
                Ok(v) => v,
                Err(_) => {
                    self.data.truncate(start);
                    return Err(EmbeddingError::MalformedLine { line: self.line_no });
                }
            };
            if !value.is_finite() {
                self.data.truncate(start);
                return Err(EmbeddingError::MalformedLine { line: self.line_no });
            }
            self.data.push(value);
            count += 1;
        }
        if count == 0 {
            return Err(EmbeddingError::MalformedLine { line: self.line_no });
        }

        match self.dim {
            None => {
                if let Some(expected) = self.expected_dim {
                    if expected != count {
                        self.data.truncate(start);
                        return Err(EmbeddingError::DimMismatch {
                            expected,
                            found: count,
                        });
                    }
                }
                self.dim = Some(count);
            }
            Some(dim) if dim != count => {
                self.data.truncate(start);
                return Err(EmbeddingError::MalformedLine { line: self.line_no });
            }
            Some(_) => {}
        }

        if self.index.contains_key(word) {
            // First occurrence wins; drop the row we just parsed.
            self.duplicates += 1;
            self.data.truncate(start);
            return Ok(());
        }
        self.index.insert(word.to_owned(), self.words.len());
        self.words.push(word.to_owned());
        Ok(())
    }

    pub fn finish(self) -> Result<EmbeddingTable, EmbeddingError> {
        let dim = match self.dim {
            Some(d) => d,
            None => return Err(EmbeddingError::EmptyFile),
        };
        Ok(EmbeddingTable {
            dim,
            words: self.words,
            index: self.index,
            data: self.data,
            duplicates: self.duplicates,
        })
    }
}

/// A text rendered as an ordered sequence of d-dimensional vectors.
///
/// Produced by [`embed_and_center`]: in-vocabulary positions hold
/// `raw − centroid`, out-of-vocabulary positions hold the exact zero vector.
#[derive(Debug, Clone)]
pub struct VectorSequence {
    dim: usize,
    data: Vec<f64>,
    oov: Vec<bool>,
    centroid: Vec<f64>,
    source_id: String,
}

impl VectorSequence {
    /// Wrap raw vectors without centering. Meant for synthetic series and
    /// tests; the oov mask is all-false and the centroid all-zero.
    pub fn from_vectors(data: Vec<f64>, dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        assert_eq!(data.len() % dim, 0, "data length must be a multiple of dim");
        let len = data.len() / dim;
        Self {
            dim,
            data,
            oov: vec![false; len],
            centroid: vec![0.0; dim],
            source_id: String::new(),
        }
    }

    pub fn with_source_id(mut self, source_id: &str) -> Self {
        self.source_id = source_id.to_owned();
        self
    }

    /// Number of positions `N`.
    pub fn len(&self) -> usize {
        self.oov.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oov.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Flat row-major view of all vectors.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn is_oov(&self, i: usize) -> bool {
        self.oov[i]
    }

    pub fn oov_mask(&self) -> &[bool] {
        &self.oov
    }

    pub fn oov_count(&self) -> usize {
        self.oov.iter().filter(|&&m| m).count()
    }

    /// The mean vector that was subtracted from in-vocabulary positions.
    pub fn centroid(&self) -> &[f64] {
        &self.centroid
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }
}

/// Subtract the mean (over positions where `oov` is false) from those same
/// positions, in place. Returns the subtracted mean. Positions flagged oov
/// are left untouched.
pub fn center_vectors(data: &mut [f64], dim: usize, oov: &[bool]) -> Vec<f64> {
    let mut centroid = vec![0.0; dim];
    let mut resolved = 0usize;
    for (i, &masked) in oov.iter().enumerate() {
        if masked {
            continue;
        }
        resolved += 1;
        let row = &data[i * dim..(i + 1) * dim];
        for (c, v) in centroid.iter_mut().zip(row) {
            *c += v;
        }
    }
    if resolved == 0 {
        return centroid;
    }
    for c in centroid.iter_mut() {
        *c /= resolved as f64;
    }
    for (i, &masked) in oov.iter().enumerate() {
        if masked {
            continue;
        }
        let row = &mut data[i * dim..(i + 1) * dim];
        for (v, c) in row.iter_mut().zip(&centroid) {
            *v -= c;
        }
    }
    centroid
}

/// Resolve `tokens` against `table` and center the resolved vectors.
///
/// The centroid is the mean over in-vocabulary token positions only (every
/// occurrence counts); out-of-vocabulary tokens become the zero vector and
/// are flagged in the oov mask.
pub fn embed_and_center<S: AsRef<str>>(
    tokens: &[S],
    table: &EmbeddingTable,
) -> Result<VectorSequence, EmbedError> {
    if tokens.is_empty() {
        return Err(EmbedError::EmptyInput);
    }
    let dim = table.dim();
    let n = tokens.len();
    let mut data = vec![0.0; n * dim];
    let mut oov = vec![false; n];
    let mut resolved = 0usize;
    for (i, token) in tokens.iter().enumerate() {
        match table.vector(token.as_ref()) {
            Some(v) => {
                data[i * dim..(i + 1) * dim].copy_from_slice(v);
                resolved += 1;
            }
            None => oov[i] = true,
        }
    }
    if resolved == 0 {
        return Err(EmbedError::AllTokensOov);
    }
    let centroid = center_vectors(&mut data, dim, &oov);
    Ok(VectorSequence {
        dim,
        data,
        oov,
        centroid,
        source_id: String::new(),
    })
}
