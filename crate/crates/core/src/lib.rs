//! Cross-language retrieval over a Russian document collection.
//!
//! English queries reach the Russian corpus through two channels: the
//! Wikipedia interlanguage pivot ([`wiki`]) and a translator ([`translate`]).
//! Each channel yields a TF-IDF query vector; the engine ranks documents by
//! cosine similarity against one channel or the union of both.

pub mod channel;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod eval;
pub mod fetch;
pub mod report;
pub mod stem;
pub mod text;
pub mod translate;
pub mod vector;
pub mod wiki;

pub use channel::{Provenance, QueryChannelResult};
pub use corpus::{build_index, load_corpus, load_index, save_index, CorpusIndex, Document};
pub use engine::{
    Engine, RankedResult, SearchMode, SearchOptions, SearchOutcome, WikiFailurePolicy,
};
pub use error::{Error, Result};
pub use fetch::FetchClient;
pub use text::{analyze, PipelineConfig};
pub use translate::{Glossary, Translator};
pub use vector::{cosine, fuse_union, Fusion, TermVector};
pub use wiki::WikiPivot;

use std::path::{Path, PathBuf};

/// Directory holding the bundled data files (mini-corpus, replay fixtures,
/// glossary, stoplist, evaluation cases) in a source checkout.
pub fn bundled_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}
