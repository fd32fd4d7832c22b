//! Target-language document collection: loading, indexing and persistence.
//!
//! A corpus is either a directory of `NNNN.txt` files (first line is the
//! title, the rest is the body) or a JSON Lines file with `id`, `title` and
//! `body` fields. Ids are normalized to four zero-padded digits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::text::{analyze, PipelineConfig};
use crate::vector::{build_vector, CorpusStats, TermVector};

pub const INDEX_FORMAT_VERSION: &str = "1";
const INDEX_MAGIC: &str = "# pivot-clir index";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub body: String,
}

/// Normalizes a document id to its four-digit form ("28" -> "0028").
pub fn canonical_id(raw: &str) -> Result<String> {
    let raw = raw.trim();
    if raw.is_empty() || raw.len() > 4 || !raw.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidDocId(raw.to_owned()));
    }
    Ok(format!("{raw:0>4}"))
}

fn split_title(text: &str) -> (String, String) {
    let text = text.trim_start_matches('\u{feff}');
    match text.split_once('\n') {
        Some((first, rest)) => (first.trim().to_owned(), rest.trim().to_owned()),
        None => (text.trim().to_owned(), String::new()),
    }
}

pub fn load_corpus(path: &Path) -> Result<Vec<Document>> {
    if !path.exists() {
        return Err(Error::CorpusNotFound(path.to_owned()));
    }
    let mut docs = if path.is_dir() {
        load_dir(path)?
    } else {
        load_records(path)?
    };
    docs.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = docs.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(Error::DuplicateId(w[0].id.clone()));
    }
    Ok(docs)
}

fn load_dir(dir: &Path) -> Result<Vec<Document>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut docs = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if !path.is_file() || path.extension().and_then(|e| e.to_str()) != Some("txt") {
            continue;
        }
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default();
        let id = canonical_id(stem)?;
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let (title, body) = split_title(&text);
        if body.trim().is_empty() {
            return Err(Error::EmptyBody(id));
        }
        docs.push(Document { id, title, body });
    }
    Ok(docs)
}

#[derive(Deserialize)]
struct Record {
    id: Option<serde_json::Value>,
    title: Option<String>,
    body: String,
}

fn load_records(path: &Path) -> Result<Vec<Document>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.display().to_string(),
        line,
        message,
    };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record =
            serde_json::from_str(line).map_err(|e| parse_err(lineno, e.to_string()))?;
        let id = match rec.id {
            None => format!("{:04}", docs.len()),
            Some(serde_json::Value::String(s)) => canonical_id(&s)?,
            Some(serde_json::Value::Number(n)) => canonical_id(&n.to_string())?,
            Some(other) => return Err(parse_err(lineno, format!("bad id {other}"))),
        };
        if rec.body.trim().is_empty() {
            return Err(Error::EmptyBody(id));
        }
        let title = match rec.title {
            Some(t) if !t.trim().is_empty() => t.trim().to_owned(),
            _ => split_title(&rec.body).0,
        };
        docs.push(Document {
            id,
            title,
            body: rec.body,
        });
    }
    Ok(docs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexedDoc {
    pub title: String,
    pub vector: TermVector,
}

/// Corpus statistics plus one TF-IDF vector per document.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusIndex {
    config: PipelineConfig,
    n: usize,
    df: BTreeMap<String, usize>,
    docs: BTreeMap<String, IndexedDoc>,
}

impl CorpusStats for CorpusIndex {
    fn doc_count(&self) -> usize {
        self.n
    }

    fn doc_freq(&self, term: &str) -> Option<usize> {
        self.df.get(term).copied()
    }
}

impl CorpusIndex {
    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn pipeline_hash(&self) -> String {
        self.config.content_hash()
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.df.len()
    }

    pub fn doc_frequencies(&self) -> &BTreeMap<String, usize> {
        &self.df
    }

    pub fn docs(&self) -> impl Iterator<Item = (&str, &IndexedDoc)> {
        self.docs.iter().map(|(id, d)| (id.as_str(), d))
    }

    pub fn doc(&self, id: &str) -> Option<&IndexedDoc> {
        self.docs.get(id)
    }

    /// Vectorizes free text with this index's pipeline and statistics.
    pub fn vectorize(&self, text: &str) -> TermVector {
        build_vector(&analyze(text, &self.config), self)
    }

    /// Fails unless `config` is the pipeline this index was built with.
    pub fn check_pipeline(&self, config: &PipelineConfig) -> Result<()> {
        let (indexed, current) = (self.pipeline_hash(), config.content_hash());
        if indexed != current {
            return Err(Error::PipelineMismatch { indexed, current });
        }
        Ok(())
    }
}

pub fn build_index(docs: &[Document], config: &PipelineConfig) -> Result<CorpusIndex> {
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut seen = BTreeSet::new();
    for d in docs {
        if !seen.insert(d.id.as_str()) {
            return Err(Error::DuplicateId(d.id.clone()));
        }
    }

    let analyzed: Vec<Vec<String>> = docs
        .par_iter()
        .map(|d| analyze(&format!("{} {}", d.title, d.body), config))
        .collect();

    let mut df = BTreeMap::new();
    for stems in &analyzed {
        let distinct: BTreeSet<&str> = stems.iter().map(String::as_str).collect();
        for t in distinct {
            *df.entry(t.to_owned()).or_insert(0) += 1;
        }
    }

    let mut index = CorpusIndex {
        config: config.clone(),
        n: docs.len(),
        df,
        docs: BTreeMap::new(),
    };
    let vectors: Vec<TermVector> = analyzed
        .par_iter()
        .map(|stems| build_vector(stems, &index))
        .collect();
    for (d, vector) in docs.iter().zip(vectors) {
        index.docs.insert(
            d.id.clone(),
            IndexedDoc {
                title: d.title.clone(),
                vector,
            },
        );
    }
    Ok(index)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next()? {
            '\\' => out.push('\\'),
            't' => out.push('\t'),
            'n' => out.push('\n'),
            'r' => out.push('\r'),
            _ => return None,
        }
    }
    Some(out)
}

/// Renders the index in its line-oriented text form. Weights use Rust's
/// shortest round-trip float formatting, so a reload is exact.
pub fn index_to_string(index: &CorpusIndex) -> String {
    let mut s = String::new();
    let cfg = &index.config;
    let _ = writeln!(s, "{INDEX_MAGIC}");
    let _ = writeln!(s, "version\t{INDEX_FORMAT_VERSION}");
    let _ = writeln!(s, "language\t{}", cfg.language);
    let _ = writeln!(s, "normalize_yo\t{}", cfg.normalize_yo);
    let _ = writeln!(s, "pipeline\t{}", index.pipeline_hash());
    for w in &cfg.stoplist {
        let _ = writeln!(s, "stop\t{}", escape(w));
    }
    let _ = writeln!(s, "n\t{}", index.docs.len());
    for (t, n) in &index.df {
        let _ = writeln!(s, "df\t{}\t{n}", escape(t));
    }
    for (id, d) in &index.docs {
        let _ = writeln!(s, "doc\t{id}\t{}", escape(&d.title));
        for (t, w) in d.vector.iter() {
            let _ = writeln!(s, "w\t{}\t{w}", escape(t));
        }
    }
    let _ = writeln!(s, "end");
    s
}

pub fn save_index(index: &CorpusIndex, path: &Path) -> Result<()> {
    std::fs::write(path, index_to_string(index)).map_err(|e| Error::io(path, e))
}

pub fn load_index(path: &Path) -> Result<CorpusIndex> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_index(&text, &path.display().to_string())
}

/// Parses the text form written by [`index_to_string`]. `origin` names the
/// source in error messages.
pub fn parse_index(text: &str, origin: &str) -> Result<CorpusIndex> {
    let err = |line: usize, message: &str| Error::Parse {
        path: origin.to_owned(),
        line,
        message: message.to_owned(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((_, l)) if l == INDEX_MAGIC => {}
        Some((n, _)) => return Err(err(n, "not a pivot-clir index file")),
        None => return Err(err(1, "empty index file")),
    }

    let mut language = None;
    let mut normalize_yo = None;
    let mut stored_hash = None;
    let mut stoplist = BTreeSet::new();
    let mut n_docs = None;
    let mut df = BTreeMap::new();
    let mut docs: BTreeMap<String, IndexedDoc> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut ended = false;
    let mut version_seen = false;

    for (lineno, line) in lines.by_ref() {
        let mut fields = line.split('\t');
        let tag = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        if !version_seen && tag != "version" {
            return Err(err(lineno, "missing version header"));
        }
        let field = |i: usize| -> Result<String> {
            let raw = rest
                .get(i)
                .ok_or_else(|| err(lineno, &format!("{tag}: missing field {}", i + 1)))?;
            unescape(raw).ok_or_else(|| err(lineno, "bad escape sequence"))
        };
        match tag {
            "version" => {
                let found = field(0)?;
                if found != INDEX_FORMAT_VERSION {
                    return Err(Error::VersionMismatch {
                        found,
                        expected: INDEX_FORMAT_VERSION.to_owned(),
                    });
                }
                version_seen = true;
            }
            "language" => language = Some(field(0)?),
            "normalize_yo" => {
                normalize_yo = Some(
                    field(0)?
                        .parse::<bool>()
                        .map_err(|_| err(lineno, "normalize_yo must be true or false"))?,
                )
            }
            "pipeline" => stored_hash = Some(field(0)?),
            "stop" => {
                stoplist.insert(field(0)?);
            }
            "n" => {
                n_docs = Some(
                    field(0)?
                        .parse::<usize>()
                        .map_err(|_| err(lineno, "bad document count"))?,
                )
            }
            "df" => {
                let count = field(1)?
                    .parse::<usize>()
                    .map_err(|_| err(lineno, "bad document frequency"))?;
                df.insert(field(0)?, count);
            }
            "doc" => {
                let id = canonical_id(&field(0)?).map_err(|e| err(lineno, &e.to_string()))?;
                let title = field(1)?;
                if docs.contains_key(&id) {
                    return Err(err(lineno, &format!("duplicate document {id}")));
                }
                docs.insert(
                    id.clone(),
                    IndexedDoc {
                        title,
                        vector: TermVector::new(),
                    },
                );
                current = Some(id);
            }
            "w" => {
                let id = current
                    .as_ref()
                    .ok_or_else(|| err(lineno, "weight before any doc record"))?;
                let term = field(0)?;
                let w = field(1)?
                    .parse::<f64>()
                    .ok()
                    .filter(|w| *w > 0.0 && w.is_finite())
                    .ok_or_else(|| err(lineno, "weight must be a positive number"))?;
                docs.get_mut(id)
                    .expect("current doc exists")
                    .vector
                    .insert(term, w);
            }
            "end" => {
                ended = true;
                break;
            }
            "" if line.trim().is_empty() => {}
            other => return Err(err(lineno, &format!("unknown record {other:?}"))),
        }
    }
    let last = text.lines().count().max(1);
    if !ended {
        return Err(err(last, "truncated index: missing end record"));
    }
    if let Some((lineno, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(err(lineno, "data after end record"));
    }

    let config = PipelineConfig {
        language: language.ok_or_else(|| err(last, "missing language"))?,
        stoplist,
        normalize_yo: normalize_yo.ok_or_else(|| err(last, "missing normalize_yo"))?,
    };
    let stored_hash = stored_hash.ok_or_else(|| err(last, "missing pipeline hash"))?;
    if stored_hash != config.content_hash() {
        return Err(err(
            last,
            "pipeline hash does not match stored configuration",
        ));
    }
    let n = n_docs.ok_or_else(|| err(last, "missing document count"))?;
    if n != docs.len() {
        return Err(err(
            last,
            &format!("document count {n} but {} doc records", docs.len()),
        ));
    }
    if let Some((t, c)) = df.iter().find(|(_, c)| **c == 0 || **c > n) {
        return Err(err(last, &format!("df({t}) = {c} outside 1..={n}")));
    }
    for (id, d) in &docs {
        if let Some(t) = d.vector.terms().find(|t| !df.contains_key(*t)) {
            return Err(err(last, &format!("doc {id} term {t:?} missing from df")));
        }
    }
    Ok(CorpusIndex {
        config,
        n,
        df,
        docs,
    })
}
