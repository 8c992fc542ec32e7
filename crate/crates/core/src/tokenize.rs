//! Word-level tokenization.
//!
//! Splits on Unicode whitespace, strips leading/trailing non-alphanumeric
//! characters from each piece (so internal apostrophes and hyphens survive),
//! lowercases, and drops pieces that become empty. This keeps tokens aligned
//! with the word-keyed lexicons that embedding tables use.

use alloc::string::String;
use alloc::vec::Vec;

/// Tokenize a text into lowercase words. Empty input yields an empty list.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|piece| {
            let trimmed = piece.trim_matches(|c: char| !c.is_alphanumeric());
            if trimmed.is_empty() {
                None
            } else {
                Some(trimmed.to_lowercase())
            }
        })
        .collect()
}

/// Provenance of a generated text.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenerationMeta {
    pub model: String,
    pub temperature: f64,
    pub seed: u64,
}

/// A tokenized text plus where it came from.
#[derive(Debug, Clone)]
pub struct TokenSequence {
    pub tokens: Vec<String>,
    pub source_id: String,
    pub meta: Option<GenerationMeta>,
}

impl TokenSequence {
    pub fn from_text(text: &str, source_id: &str) -> Self {
        Self {
            tokens: tokenize(text),
            source_id: String::from(source_id),
            meta: None,
        }
    }

    pub fn with_meta(mut self, meta: GenerationMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}
