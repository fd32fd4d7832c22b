mod common;

use std::collections::BTreeMap;
use std::fs;

use pivot_clir::corpus::index_to_string;
use pivot_clir::text::PipelineConfig;
use pivot_clir::{analyze, build_index, load_corpus, load_index, save_index, Error};

#[test]
fn loads_directory_sorted_by_id() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("0002.txt"), "Второй\nтекст про графы\n").unwrap();
    fs::write(dir.path().join("1.txt"), "Первый\nтекст про функции\n").unwrap();
    fs::write(dir.path().join("notes.md"), "ignored").unwrap();
    let docs = load_corpus(dir.path()).unwrap();
    let ids: Vec<&str> = docs.iter().map(|d| d.id.as_str()).collect();
    assert_eq!(ids, ["0001", "0002"]);
    assert_eq!(docs[0].title, "Первый");
    assert_eq!(docs[0].body, "текст про функции");
}

#[test]
fn loads_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    fs::write(
        &path,
        "{\"id\": \"7\", \"title\": \"Граф\", \"body\": \"вершины и ребра\"}\n\n\
         {\"id\": \"0003\", \"title\": \"Функция\", \"body\": \"монотонная функция\"}\n",
    )
    .unwrap();
    let docs = load_corpus(&path).unwrap();
    assert_eq!(docs.len(), 2);
    assert_eq!(docs[0].id, "0003");
    assert_eq!(docs[1].id, "0007");
}

#[test]
fn duplicate_ids_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    fs::write(
        &path,
        "{\"id\": \"5\", \"title\": \"a\", \"body\": \"раз\"}\n{\"id\": \"0005\", \"title\": \"b\", \"body\": \"два\"}\n",
    )
    .unwrap();
    match load_corpus(&path) {
        Err(Error::DuplicateId(id)) => assert_eq!(id, "0005"),
        other => panic!("expected DuplicateId, got {other:?}"),
    }
}

#[test]
fn bad_json_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    fs::write(&path, "{\"title\": \"a\", \"body\": \"b\"}\n{oops\n").unwrap();
    match load_corpus(&path) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn missing_and_empty_corpora() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        load_corpus(&dir.path().join("nope")),
        Err(Error::CorpusNotFound(_))
    ));
    let docs = load_corpus(dir.path()).unwrap_or_default();
    assert!(matches!(
        build_index(&docs, &PipelineConfig::default()),
        Err(Error::EmptyCorpus)
    ));
}

#[test]
fn document_frequencies_count_documents() {
    let docs = load_corpus(&pivot_clir::bundled_data_dir().join("corpus")).unwrap();
    let cfg = PipelineConfig::default();
    let index = build_index(&docs, &cfg).unwrap();
    let mut df: BTreeMap<String, usize> = BTreeMap::new();
    for d in &docs {
        let stems = analyze(&format!("{} {}", d.title, d.body), &cfg);
        let mut vocab: Vec<_> = stems.into_iter().collect();
        vocab.sort();
        vocab.dedup();
        for t in vocab {
            *df.entry(t).or_default() += 1;
        }
    }
    assert_eq!(index.doc_frequencies(), &df);
    assert_eq!(index.len(), 10);
}

#[test]
fn index_round_trip_is_exact() {
    let index = common::bundled_index();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("idx");
    save_index(&index, &path).unwrap();
    let loaded = load_index(&path).unwrap();
    assert_eq!(loaded, index);
    assert_eq!(index_to_string(&loaded), fs::read_to_string(&path).unwrap());
}

#[test]
fn building_is_deterministic() {
    let a = index_to_string(&common::bundled_index());
    let b = index_to_string(&common::bundled_index());
    assert_eq!(a, b);
}

#[test]
fn index_rejects_other_pipeline() {
    let index = common::bundled_index();
    let other = PipelineConfig::with_stoplist(["и".to_owned()].into_iter().collect());
    assert!(matches!(
        index.check_pipeline(&other),
        Err(Error::PipelineMismatch { .. })
    ));
    index.check_pipeline(&PipelineConfig::default()).unwrap();
}
