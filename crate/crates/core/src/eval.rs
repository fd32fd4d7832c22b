//! Batch comparison of search modes over a list of queries, reporting where
//! an expected document lands in each mode.
//!
//! Cases file: one `query<TAB>expected_doc_id<TAB>note` per line, the last
//! two fields optional, `#` comment lines.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::corpus::canonical_id;
use crate::engine::{Engine, SearchMode, SearchOptions, SearchOutcome};
use crate::error::{Error, Result};
use crate::report::format_outcome;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalCase {
    pub query: String,
    pub expected_doc_id: Option<String>,
    pub note: Option<String>,
}

pub fn parse_cases(text: &str, origin: &str) -> Result<Vec<EvalCase>> {
    let mut cases = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t').map(str::trim);
        let query = fields.next().unwrap_or_default().to_owned();
        if query.is_empty() {
            return Err(Error::Parse {
                path: origin.to_owned(),
                line: i + 1,
                message: "empty query".into(),
            });
        }
        let opt = |f: Option<&str>| f.filter(|s| !s.is_empty()).map(str::to_owned);
        let expected_doc_id = opt(fields.next());
        let note = opt(fields.next());
        cases.push(EvalCase {
            query,
            expected_doc_id,
            note,
        });
    }
    Ok(cases)
}

pub fn load_cases(path: &Path) -> Result<Vec<EvalCase>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_cases(&text, &path.display().to_string())
}

/// Where the expected document ended up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedRank {
    NotApplicable,
    Invalid,
    Rank(usize),
    Absent,
    Errored,
}

impl std::fmt::Display for ExpectedRank {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpectedRank::NotApplicable => f.write_str("n/a"),
            ExpectedRank::Invalid => f.write_str("invalid"),
            ExpectedRank::Rank(r) => write!(f, "{r}"),
            ExpectedRank::Absent => f.write_str("absent"),
            ExpectedRank::Errored => f.write_str("errored"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeRun {
    pub mode: SearchMode,
    /// The search outcome, or the error kind and message.
    pub outcome: std::result::Result<SearchOutcome, (String, String)>,
    pub expected_rank: ExpectedRank,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    pub case: EvalCase,
    /// Set when the case names a document the corpus does not have.
    pub invalid: Option<String>,
    pub runs: Vec<ModeRun>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModeSummary {
    pub cases: usize,
    pub rank1: usize,
    pub in_top_k: usize,
    pub absent: usize,
    pub errored: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub modes: Vec<SearchMode>,
    pub top_k: usize,
    pub cases: Vec<CaseReport>,
}

impl EvalReport {
    /// Counts over cases with a valid expected document.
    pub fn summary(&self, mode: SearchMode) -> ModeSummary {
        let mut s = ModeSummary::default();
        for run in self
            .cases
            .iter()
            .flat_map(|c| c.runs.iter())
            .filter(|r| r.mode == mode)
        {
            match run.expected_rank {
                ExpectedRank::Rank(r) => {
                    s.cases += 1;
                    s.in_top_k += 1;
                    if r == 1 {
                        s.rank1 += 1;
                    }
                }
                ExpectedRank::Absent => {
                    s.cases += 1;
                    s.absent += 1;
                }
                ExpectedRank::Errored => {
                    s.cases += 1;
                    s.errored += 1;
                }
                ExpectedRank::NotApplicable | ExpectedRank::Invalid => {}
            }
        }
        s
    }
}

fn run_case(
    engine: &Engine<'_>,
    case: &EvalCase,
    modes: &[SearchMode],
    opts: &SearchOptions,
) -> CaseReport {
    let expected = case.expected_doc_id.as_deref().map(|raw| {
        canonical_id(raw)
            .ok()
            .filter(|id| engine.index.doc(id).is_some())
            .ok_or_else(|| raw.to_owned())
    });
    let invalid = match &expected {
        Some(Err(raw)) => Some(format!("unknown document {raw}")),
        _ => None,
    };
    let runs = modes
        .iter()
        .map(|&mode| {
            let outcome = engine
                .search(&case.query, mode, opts)
                .map_err(|e| (e.kind().to_owned(), e.to_string()));
            let expected_rank = match (&expected, &outcome) {
                (None, _) => ExpectedRank::NotApplicable,
                (Some(Err(_)), _) => ExpectedRank::Invalid,
                (Some(Ok(_)), Err(_)) => ExpectedRank::Errored,
                (Some(Ok(id)), Ok(o)) => o
                    .results
                    .iter()
                    .find(|r| &r.doc_id == id)
                    .map_or(ExpectedRank::Absent, |r| ExpectedRank::Rank(r.rank)),
            };
            ModeRun {
                mode,
                outcome,
                expected_rank,
            }
        })
        .collect();
    CaseReport {
        case: case.clone(),
        invalid,
        runs,
    }
}

/// Runs every case in every mode. Cases are evaluated in parallel; the report
/// keeps input order.
pub fn run_batch(
    cases: &[EvalCase],
    engine: &Engine<'_>,
    modes: &[SearchMode],
    opts: &SearchOptions,
) -> Result<EvalReport> {
    opts.validate()?;
    let reports = cases
        .par_iter()
        .map(|c| run_case(engine, c, modes, opts))
        .collect();
    Ok(EvalReport {
        modes: modes.to_vec(),
        top_k: opts.top_k,
        cases: reports,
    })
}

pub fn report_to_text(report: &EvalReport) -> String {
    let mut s = String::new();
    let modes: Vec<&str> = report.modes.iter().map(|m| m.name()).collect();
    let _ = writeln!(s, "EVALUATION REPORT");
    let _ = writeln!(s, "modes: {}", modes.join(" "));
    let _ = writeln!(s, "top-k: {}", report.top_k);
    let _ = writeln!(s, "cases: {}", report.cases.len());
    if report.cases.is_empty() {
        return s;
    }

    for (i, c) in report.cases.iter().enumerate() {
        let _ = writeln!(s);
        let _ = writeln!(s, "=== CASE {}: {}", i + 1, c.case.query);
        let _ = writeln!(
            s,
            "expected: {}",
            c.case.expected_doc_id.as_deref().unwrap_or("n/a")
        );
        if let Some(note) = &c.case.note {
            let _ = writeln!(s, "note: {note}");
        }
        if let Some(why) = &c.invalid {
            let _ = writeln!(s, "INVALID: {why}");
        }
        for run in &c.runs {
            let _ = writeln!(s, "--- mode {} ---", run.mode);
            match &run.outcome {
                Ok(o) => s.push_str(&format_outcome(o)),
                Err((kind, msg)) if msg.starts_with(kind.as_str()) => {
                    let _ = writeln!(s, "ERROR {msg}");
                }
                Err((kind, msg)) => {
                    let _ = writeln!(s, "ERROR {kind}: {msg}");
                }
            }
            let _ = writeln!(s, "expected rank: {}", run.expected_rank);
        }
    }

    let _ = writeln!(s);
    let _ = writeln!(s, "SUMMARY");
    let _ = writeln!(s, "MODE   CASES  RANK1  TOP-K  ABSENT ERRORED");
    for &mode in &report.modes {
        let m = report.summary(mode);
        let _ = writeln!(
            s,
            "{:<6} {:<6} {:<6} {:<6} {:<6} {}",
            mode.name(),
            m.cases,
            m.rank1,
            m.in_top_k,
            m.absent,
            m.errored
        );
    }
    s
}
