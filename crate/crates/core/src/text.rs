//! Tokenize, drop stopwords, stem. Documents and queries go through the same
//! [`analyze`] call so their terms line up.

use std::collections::BTreeSet;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::stem::stem;

/// Bundled Russian stoplist (~150 function words).
pub const DEFAULT_STOPLIST: &str = include_str!("../data/stoplist_ru.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub language: String,
    pub stoplist: BTreeSet<String>,
    pub normalize_yo: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            language: "ru".to_owned(),
            stoplist: parse_stoplist(DEFAULT_STOPLIST),
            normalize_yo: true,
        }
    }
}

impl PipelineConfig {
    pub fn with_stoplist(stoplist: BTreeSet<String>) -> Self {
        PipelineConfig {
            stoplist,
            ..PipelineConfig::default()
        }
    }

    pub fn from_stoplist_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::with_stoplist(parse_stoplist(&text)))
    }

    /// Hex SHA-256 over every field that affects [`analyze`]. Stored in the
    /// index so a query can't silently run with a different pipeline.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"lang\0");
        h.update(self.language.as_bytes());
        h.update(b"\0yo\0");
        h.update([self.normalize_yo as u8]);
        h.update(b"\0stop\0");
        for w in &self.stoplist {
            h.update(w.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}

/// Parses a stoplist: one term per line, `#` comments, surrounding whitespace
/// trimmed. Terms are lowercased and `ё` folded so lookups match tokens.
pub fn parse_stoplist(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase().replace('ё', "е"))
        .collect()
}

/// Maximal runs of Unicode letters, lowercased. With `normalize_yo`, `ё`
/// becomes `е`.
pub fn tokenize_with(text: &str, normalize_yo: bool) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        if c.is_alphabetic() {
            for lc in c.to_lowercase() {
                current.push(if normalize_yo && lc == 'ё' { 'е' } else { lc });
            }
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

pub fn tokenize(text: &str) -> Vec<String> {
    tokenize_with(text, true)
}

pub fn remove_stopwords(tokens: Vec<String>, config: &PipelineConfig) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !config.stoplist.contains(t))
        .collect()
}

pub fn analyze(text: &str, config: &PipelineConfig) -> Vec<String> {
    let tokens = tokenize_with(text, config.normalize_yo);
    remove_stopwords(tokens, config)
        .iter()
        .map(|t| stem(t))
        .collect()
}
