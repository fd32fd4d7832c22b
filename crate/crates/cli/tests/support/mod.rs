#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pivot_clir::bundled_data_dir;

pub const BIN: &str = env!("CARGO_BIN_EXE_pivot-clir");

pub struct Workspace {
    pub dir: tempfile::TempDir,
}

impl Workspace {
    /// Temp dir holding an index built from the bundled corpus.
    pub fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let out = Command::new(BIN)
            .arg("index")
            .arg(bundled_data_dir().join("corpus"))
            .arg("--out")
            .arg(dir.path().join("index.tsv"))
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        Workspace { dir }
    }

    pub fn index(&self) -> PathBuf {
        self.dir.path().join("index.tsv")
    }

    /// `sub` with --index and replayed fixtures, then `args`.
    pub fn cmd(&self, sub: &str, args: &[&str]) -> Command {
        let mut c = Command::new(BIN);
        c.arg(sub)
            .arg("--index")
            .arg(self.index())
            .arg("--offline")
            .arg("--fixtures")
            .arg(bundled_data_dir().join("wiki-fixtures"))
            .args(args)
            .env_remove("PIVOT_CLIR_ENDPOINT")
            .env_remove("PIVOT_CLIR_TIMEOUT");
        c
    }

    pub fn run(&self, sub: &str, args: &[&str]) -> Output {
        self.cmd(sub, args).output().unwrap()
    }
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDENS=1` rewrites it.
pub fn check_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        want == actual,
        "{name} differs from golden:\n--- want\n{want}\n--- got\n{actual}"
    );
}

/// Query goldens: file name and the arguments after `query`.
pub const QUERY_GOLDENS: &[(&str, &[&str])] = &[
    (
        "bubble_sort_wiki.txt",
        &["--mode", "wiki", "bubble", "sort"],
    ),
    ("bubble_sort_mt.txt", &["--mode", "mt", "bubble sort"]),
    ("bubble_sort_fused.txt", &["bubble sort"]),
    ("monotonic_function_fused.txt", &["monotonic function"]),
    ("complexity_fused.txt", &["complexity"]),
    (
        "golden_gate_wiki.txt",
        &["--mode", "wiki", "Golden Gate Bridge"],
    ),
    (
        "graph_coloring_first20.txt",
        &["--mode", "wiki", "--first-n-words", "20", "graph coloring"],
    ),
];

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}
