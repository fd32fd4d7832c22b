//! Query orchestration: pick a channel (or fuse both), score every document by
//! cosine, filter by threshold and return the top results.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::{Provenance, QueryChannelResult};
use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::translate::Translator;
use crate::vector::{cosine, fuse_union, Fusion, TermVector};
use crate::wiki::{PivotResolution, WikiPivot};

pub const DEFAULT_TOP_K: usize = 15;
pub const DEFAULT_THRESHOLD: f64 = 1e-12;
pub const DEFAULT_FIRST_N_WORDS: usize = 20;
pub const TITLE_WIDTH: usize = 30;

/// The three search modes; numbering follows the original menu options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Fused = 1,
    WikiOnly = 2,
    MtOnly = 3,
}

impl SearchMode {
    pub const ALL: [SearchMode; 3] = [SearchMode::WikiOnly, SearchMode::MtOnly, SearchMode::Fused];

    pub fn name(self) -> &'static str {
        match self {
            SearchMode::Fused => "fused",
            SearchMode::WikiOnly => "wiki",
            SearchMode::MtOnly => "mt",
        }
    }

    pub fn menu_number(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fused" | "1" => Ok(SearchMode::Fused),
            "wiki" | "2" => Ok(SearchMode::WikiOnly),
            "mt" | "3" => Ok(SearchMode::MtOnly),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?} (expected wiki, mt or fused)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WikiFailurePolicy {
    #[default]
    FallbackToMt,
    HardError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub top_k: usize,
    pub threshold: f64,
    pub first_n_words: Option<usize>,
    pub weight_wiki: f64,
    pub weight_mt: f64,
    pub wiki_failure_policy: WikiFailurePolicy,
    pub fusion: Fusion,
    pub target_lang: String,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            top_k: DEFAULT_TOP_K,
            threshold: DEFAULT_THRESHOLD,
            first_n_words: None,
            weight_wiki: 1.0,
            weight_mt: 1.0,
            wiki_failure_policy: WikiFailurePolicy::FallbackToMt,
            fusion: Fusion::Max,
            target_lang: "ru".to_owned(),
        }
    }
}

impl SearchOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_owned()));
        if self.top_k == 0 {
            return bad("top_k must be at least 1");
        }
        if !(self.threshold >= 0.0 && self.threshold.is_finite()) {
            return bad("threshold must be a finite number >= 0");
        }
        if self.first_n_words == Some(0) {
            return bad("first_n_words must be at least 1");
        }
        for w in [self.weight_wiki, self.weight_mt] {
            if !(w >= 0.0 && w.is_finite()) {
                return bad("channel weights must be finite and >= 0");
            }
        }
        if self.target_lang.trim().is_empty() {
            return bad("target language is empty");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedResult {
    pub rank: usize,
    pub doc_id: String,
    pub title_prefix: String,
    pub similarity: f64,
}

/// Everything one search produced, for display and inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    pub wiki: Option<PivotResolution>,
    pub translation: Option<String>,
    /// Set when Fused mode lost its wiki channel and fell back to MT.
    pub degraded: Option<String>,
    pub query_vector: TermVector,
    pub results: Vec<RankedResult>,
}

/// Cosine of `qv` against every indexed document, unfiltered.
pub fn score_all(qv: &TermVector, index: &CorpusIndex) -> BTreeMap<String, f64> {
    let docs: Vec<_> = index.docs().collect();
    docs.par_iter()
        .map(|(id, d)| (id.to_string(), cosine(qv, &d.vector)))
        .collect()
}

pub fn title_prefix(title: &str) -> String {
    title.chars().take(TITLE_WIDTH).collect()
}

/// Filters scores strictly above the threshold, sorts by similarity
/// descending then id ascending, keeps `top_k`, and numbers from 1.
pub fn rank(
    scores: &BTreeMap<String, f64>,
    index: &CorpusIndex,
    top_k: usize,
    threshold: f64,
) -> Vec<RankedResult> {
    let mut hits: Vec<(&str, f64)> = scores
        .iter()
        .filter(|(_, s)| **s > threshold)
        .map(|(id, s)| (id.as_str(), *s))
        .collect();
    hits.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    hits.into_iter()
        .take(top_k)
        .enumerate()
        .map(|(i, (id, s))| RankedResult {
            rank: i + 1,
            doc_id: id.to_owned(),
            title_prefix: index
                .doc(id)
                .map(|d| title_prefix(&d.title))
                .unwrap_or_default(),
            similarity: s,
        })
        .collect()
}

/// Ranks documents against a ready-made query vector.
pub fn rank_vector(
    qv: &TermVector,
    index: &CorpusIndex,
    opts: &SearchOptions,
) -> Vec<RankedResult> {
    rank(&score_all(qv, index), index, opts.top_k, opts.threshold)
}

/// Read-only search context; one engine can serve concurrent queries.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'a> {
    pub index: &'a CorpusIndex,
    pub pivot: &'a WikiPivot,
    pub translator: &'a Translator,
}

impl<'a> Engine<'a> {
    pub fn new(index: &'a CorpusIndex, pivot: &'a WikiPivot, translator: &'a Translator) -> Self {
        Engine {
            index,
            pivot,
            translator,
        }
    }

    fn wiki_channel(&self, query: &str, opts: &SearchOptions) -> Result<QueryChannelResult> {
        self.pivot
            .pivot_query_vector(query, &opts.target_lang, opts.first_n_words, self.index)
    }

    fn mt_channel(&self, query: &str) -> Result<QueryChannelResult> {
        self.translator.mt_query_vector(query, self.index)
    }

    pub fn search(
        &self,
        query: &str,
        mode: SearchMode,
        opts: &SearchOptions,
    ) -> Result<SearchOutcome> {
        opts.validate()?;
        if query.trim().is_empty() {
            return Err(Error::InvalidArgument("query is blank".into()));
        }
        let mut outcome = SearchOutcome {
            mode,
            wiki: None,
            translation: None,
            degraded: None,
            query_vector: TermVector::new(),
            results: Vec::new(),
        };

        let qv = match mode {
            SearchMode::WikiOnly => self.absorb(&mut outcome, self.wiki_channel(query, opts)?),
            SearchMode::MtOnly => self.absorb(&mut outcome, self.mt_channel(query)?),
            SearchMode::Fused => {
                // a zero-weight channel contributes nothing, so it is not run
                let wiki = if opts.weight_wiki > 0.0 {
                    match self.wiki_channel(query, opts) {
                        Ok(r) => Some(self.absorb(&mut outcome, r)),
                        Err(e) if opts.wiki_failure_policy == WikiFailurePolicy::FallbackToMt => {
                            outcome.degraded = Some(e.to_string());
                            None
                        }
                        Err(e) => return Err(e),
                    }
                } else {
                    None
                };
                let mt = if opts.weight_mt > 0.0 {
                    Some(self.absorb(&mut outcome, self.mt_channel(query)?))
                } else {
                    None
                };
                let empty = TermVector::new();
                fuse_union(
                    wiki.as_ref().unwrap_or(&empty),
                    mt.as_ref().unwrap_or(&empty),
                    opts.weight_wiki,
                    opts.weight_mt,
                    opts.fusion,
                )
            }
        };

        outcome.results = rank_vector(&qv, self.index, opts);
        outcome.query_vector = qv;
        Ok(outcome)
    }

    fn absorb(&self, outcome: &mut SearchOutcome, r: QueryChannelResult) -> TermVector {
        match r.provenance {
            Provenance::Wiki(res) => outcome.wiki = Some(res),
            Provenance::Translation { translated } => outcome.translation = Some(translated),
        }
        r.vector
    }
}
