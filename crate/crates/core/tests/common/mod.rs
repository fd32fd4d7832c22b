#![allow(dead_code)]

use std::path::PathBuf;

use pivot_clir::{
    build_index, bundled_data_dir, load_corpus, CorpusIndex, Engine, FetchClient, Glossary,
    PipelineConfig, Translator, WikiPivot,
};

pub fn fixtures_dir() -> PathBuf {
    bundled_data_dir().join("wiki-fixtures")
}

pub fn bundled_index() -> CorpusIndex {
    let docs = load_corpus(&bundled_data_dir().join("corpus")).unwrap();
    build_index(&docs, &PipelineConfig::default()).unwrap()
}

pub fn replay_client() -> FetchClient {
    FetchClient::replay(&fixtures_dir()).unwrap()
}

/// Bundled index, replayed pivot and glossary translator.
pub struct Setup {
    pub index: CorpusIndex,
    pub pivot: WikiPivot,
    pub translator: Translator,
}

impl Setup {
    pub fn new() -> Self {
        Setup {
            index: bundled_index(),
            pivot: WikiPivot::new(replay_client()),
            translator: Translator::Glossary(Glossary::bundled()),
        }
    }

    pub fn engine(&self) -> Engine<'_> {
        Engine::new(&self.index, &self.pivot, &self.translator)
    }
}
