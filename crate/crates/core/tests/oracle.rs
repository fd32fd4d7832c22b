//! Ranking checked against an independent analysis of the bundled corpus.
//!
//! `fixtures/oracle_analyzed.json` holds stems produced by a separate
//! tokenizer/stemmer implementation together with the rankings it computed.
//! Scores are recomputed here from those stems by brute force, without using
//! the library's vector code.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde_json::Value;

use pivot_clir::engine::rank_vector;
use pivot_clir::{analyze, PipelineConfig, SearchOptions};

const ORACLE: &str = include_str!("fixtures/oracle_analyzed.json");

fn oracle() -> Value {
    serde_json::from_str(ORACLE).unwrap()
}

fn stems(v: &Value) -> Vec<String> {
    v["stems"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_owned())
        .collect()
}

struct Naive {
    n: f64,
    df: HashMap<String, f64>,
    docs: Vec<(String, HashMap<String, f64>)>,
}

impl Naive {
    fn new(docs: &[(String, Vec<String>)]) -> Self {
        let mut df: HashMap<String, f64> = HashMap::new();
        for (_, s) in docs {
            let mut seen: Vec<&String> = s.iter().collect();
            seen.sort();
            seen.dedup();
            for t in seen {
                *df.entry(t.clone()).or_default() += 1.0;
            }
        }
        let mut me = Naive {
            n: docs.len() as f64,
            df,
            docs: Vec::new(),
        };
        me.docs = docs
            .iter()
            .map(|(id, s)| (id.clone(), me.weigh(s)))
            .collect();
        me
    }

    fn weigh(&self, stems: &[String]) -> HashMap<String, f64> {
        let mut tf: HashMap<String, f64> = HashMap::new();
        for s in stems.iter().filter(|s| self.df.contains_key(*s)) {
            *tf.entry(s.clone()).or_default() += 1.0;
        }
        tf.into_iter()
            .map(|(t, c)| {
                let w = c * (self.n / self.df[&t]).ln();
                (t, w)
            })
            .filter(|(_, w)| *w > 0.0)
            .collect()
    }

    fn cosine(a: &HashMap<String, f64>, b: &HashMap<String, f64>) -> f64 {
        let na = a.values().map(|v| v * v).sum::<f64>().sqrt();
        let nb = b.values().map(|v| v * v).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            return 0.0;
        }
        a.iter()
            .map(|(t, v)| v * b.get(t).unwrap_or(&0.0))
            .sum::<f64>()
            / (na * nb)
    }

    fn ranking(&self, stems: &[String]) -> Vec<(String, String)> {
        let q = self.weigh(stems);
        let mut scored: Vec<(String, f64)> = self
            .docs
            .iter()
            .map(|(id, d)| (id.clone(), Self::cosine(&q, d)))
            .filter(|(_, s)| *s > 1e-12)
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        scored
            .into_iter()
            .take(15)
            .map(|(id, s)| (id, format!("{s:.6}")))
            .collect()
    }
}

fn engine_ranking(index: &pivot_clir::CorpusIndex, text: &str) -> Vec<(String, String)> {
    rank_vector(&index.vectorize(text), index, &SearchOptions::default())
        .into_iter()
        .map(|r| (r.doc_id, format!("{:.6}", r.similarity)))
        .collect()
}

fn frozen(q: &Value) -> Vec<(String, String)> {
    q["ranking"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p[0].as_str().unwrap().to_owned(),
                p[1].as_str().unwrap().to_owned(),
            )
        })
        .collect()
}

#[test]
fn analysis_matches_independent_pipeline() {
    let o = oracle();
    let cfg = PipelineConfig::default();
    let docs = pivot_clir::load_corpus(&pivot_clir::bundled_data_dir().join("corpus")).unwrap();
    assert_eq!(docs.len(), o["docs"].as_object().unwrap().len());
    for d in &docs {
        let want = &o["docs"][&d.id];
        assert_eq!(want["title"].as_str().unwrap(), d.title);
        assert_eq!(
            analyze(&format!("{} {}", d.title, d.body), &cfg),
            stems(want),
            "doc {}",
            d.id
        );
    }
    for (name, q) in o["queries"].as_object().unwrap() {
        assert_eq!(
            analyze(q["text"].as_str().unwrap(), &cfg),
            stems(q),
            "query {name}"
        );
    }
}

#[test]
fn rankings_match_brute_force() {
    let started = Instant::now();
    let o = oracle();
    let index = common::bundled_index();
    let docs: Vec<(String, Vec<String>)> = o["docs"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(id, d)| (id.clone(), stems(d)))
        .collect();
    let naive = Naive::new(&docs);

    let queries = o["queries"].as_object().unwrap();
    assert_eq!(queries.len(), 5);
    for (name, q) in queries {
        let brute = naive.ranking(&stems(q));
        assert!(!brute.is_empty(), "{name} ranks nothing");
        assert_eq!(brute, frozen(q), "brute force vs frozen oracle for {name}");
        assert_eq!(
            engine_ranking(&index, q["text"].as_str().unwrap()),
            brute,
            "{name}"
        );
    }
    assert!(started.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn document_frequencies_match_brute_force() {
    let o = oracle();
    let index = common::bundled_index();
    let mut df: BTreeMap<String, usize> = BTreeMap::new();
    for d in o["docs"].as_object().unwrap().values() {
        let mut s = stems(d);
        s.sort();
        s.dedup();
        for t in s {
            *df.entry(t).or_default() += 1;
        }
    }
    assert_eq!(index.doc_frequencies(), &df);
}
