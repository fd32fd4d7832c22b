//! Machine-translation query channel.
//!
//! [`Translator::Glossary`] is an offline phrase table (greedy longest match,
//! unmatched words pass through). [`Translator::Remote`] asks an HTTP
//! endpoint: `GET {endpoint}?q=<query>&source=<lang>&target=<lang>`, and takes
//! the plain-text body as the translation.

use std::collections::HashMap;
use std::path::Path;

use url::Url;

use crate::channel::{Provenance, QueryChannelResult};
use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::fetch::FetchClient;
use crate::text::analyze;
use crate::vector::build_vector;

/// Bundled English -> Russian glossary.
pub const DEFAULT_GLOSSARY: &str = include_str!("../data/glossary_en_ru.tsv");
pub const MAX_PHRASE_WORDS: usize = 5;

#[derive(Debug, Clone, Default)]
pub struct Glossary {
    phrases: HashMap<String, String>,
    longest: usize,
}

fn normalize_phrase(s: &str) -> String {
    s.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

impl Glossary {
    /// Parses `source<TAB>target` lines; `#` starts a comment line.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: origin.to_owned(),
            line,
            message,
        };
        let mut g = Glossary::default();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (src, dst) = line
                .split_once('\t')
                .ok_or_else(|| err(lineno, "expected source<TAB>target".into()))?;
            let src = normalize_phrase(src);
            let dst = dst.trim();
            let words = src.split(' ').count();
            if src.is_empty() || words > MAX_PHRASE_WORDS {
                return Err(err(
                    lineno,
                    format!("source phrase must have 1..={MAX_PHRASE_WORDS} words"),
                ));
            }
            if dst.is_empty() {
                return Err(err(lineno, "empty target phrase".into()));
            }
            if g.phrases.insert(src.clone(), dst.to_owned()).is_some() {
                return Err(err(lineno, format!("duplicate source phrase {src:?}")));
            }
            g.longest = g.longest.max(words);
        }
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn bundled() -> Self {
        Self::parse(DEFAULT_GLOSSARY, "bundled glossary").expect("bundled glossary parses")
    }

    pub fn insert(&mut self, source: &str, target: &str) {
        let src = normalize_phrase(source);
        self.longest = self.longest.max(src.split(' ').count());
        self.phrases.insert(src, target.trim().to_owned());
    }

    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// Greedy left-to-right longest match over the lowercased query words.
    pub fn translate(&self, query: &str) -> String {
        let words: Vec<String> = query.split_whitespace().map(str::to_lowercase).collect();
        let mut out: Vec<&str> = Vec::with_capacity(words.len());
        let mut i = 0;
        while i < words.len() {
            let max = self.longest.min(words.len() - i);
            let hit = (1..=max).rev().find_map(|len| {
                self.phrases
                    .get(&words[i..i + len].join(" "))
                    .map(|t| (len, t.as_str()))
            });
            match hit {
                Some((len, target)) => {
                    out.push(target);
                    i += len;
                }
                None => {
                    out.push(&words[i]);
                    i += 1;
                }
            }
        }
        out.join(" ")
    }
}

#[derive(Debug, Clone)]
pub struct RemoteTranslator {
    pub endpoint: Url,
    pub source_lang: String,
    pub target_lang: String,
    pub client: FetchClient,
}

impl RemoteTranslator {
    pub fn new(
        endpoint: &str,
        source_lang: &str,
        target_lang: &str,
        client: FetchClient,
    ) -> Result<Self> {
        let endpoint = Url::parse(endpoint).map_err(|e| {
            Error::InvalidArgument(format!("bad translate endpoint {endpoint:?}: {e}"))
        })?;
        Ok(RemoteTranslator {
            endpoint,
            source_lang: source_lang.to_owned(),
            target_lang: target_lang.to_owned(),
            client,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Translator {
    Glossary(Glossary),
    Remote(RemoteTranslator),
}

impl Translator {
    pub fn kind(&self) -> &'static str {
        match self {
            Translator::Glossary(_) => "glossary",
            Translator::Remote(_) => "remote",
        }
    }

    pub fn translate(&self, query: &str) -> Result<String> {
        if query.trim().is_empty() {
            return Err(Error::InvalidArgument("query is blank".into()));
        }
        match self {
            Translator::Glossary(g) => Ok(g.translate(query)),
            Translator::Remote(r) => {
                let mut url = r.endpoint.clone();
                url.query_pairs_mut()
                    .append_pair("q", query.trim())
                    .append_pair("source", &r.source_lang)
                    .append_pair("target", &r.target_lang);
                Ok(r.client.get(&url)?.trim().to_owned())
            }
        }
    }

    pub fn mt_query_vector(&self, query: &str, index: &CorpusIndex) -> Result<QueryChannelResult> {
        let translated = self.translate(query)?;
        let vector = build_vector(&analyze(&translated, index.config()), index);
        Ok(QueryChannelResult {
            vector,
            provenance: Provenance::Translation { translated },
        })
    }
}
