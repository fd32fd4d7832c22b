//! Fixed-width result tables.
//!
//! ```text
//! RESULTS:
//! =====
//! RANK   DOC.ID   DOCUMENT TITLE                               SIMILARITY
//! =====
//! 01     0000     Пузырьковая сортировка                       0.194324
//! ```

use std::fmt::Write as _;

use crate::engine::{RankedResult, SearchOutcome, TITLE_WIDTH};

pub const TABLE_HEADER: &str =
    "RANK   DOC.ID   DOCUMENT TITLE                               SIMILARITY";
pub const SEPARATOR: &str = "=====";
const TITLE_COLUMN: usize = 45;

/// One table row: 2-digit rank, 4-digit id, title padded or cut to 30 chars,
/// similarity to 6 decimals.
pub fn format_row(r: &RankedResult) -> String {
    let title: String = r.title_prefix.chars().take(TITLE_WIDTH).collect();
    let pad = TITLE_COLUMN - title.chars().count();
    format!(
        "{:02}     {:>4}     {}{}{:.6}",
        r.rank,
        r.doc_id,
        title,
        " ".repeat(pad),
        r.similarity
    )
}

/// `RESULTS:` block; an empty list renders as `RESULTS: (none)`.
pub fn format_table(results: &[RankedResult]) -> String {
    if results.is_empty() {
        return "RESULTS: (none)\n".to_owned();
    }
    let mut s = String::from("RESULTS:\n");
    let _ = writeln!(s, "{SEPARATOR}");
    let _ = writeln!(s, "{TABLE_HEADER}");
    let _ = writeln!(s, "{SEPARATOR}");
    for r in results {
        let _ = writeln!(s, "{}", format_row(r));
    }
    s
}

/// Provenance lines followed by the results table.
pub fn format_outcome(outcome: &SearchOutcome) -> String {
    let mut s = String::new();
    if let Some(w) = &outcome.wiki {
        let _ = writeln!(s, "ENGLISH WIKI: {}", w.source_url);
        let _ = writeln!(s, "TRANSLATED WIKI: {}", w.target_url);
        if let Some(n) = w.truncated_to {
            let _ = writeln!(s, "TRUNCATED TO: first {n} words");
        }
    }
    if let Some(t) = &outcome.translation {
        let _ = writeln!(s, "Query Translation: {t}");
    }
    if let Some(reason) = &outcome.degraded {
        let _ = writeln!(
            s,
            "NOTICE: wiki channel unavailable ({reason}); using translation only"
        );
    }
    s.push_str(&format_table(&outcome.results));
    s
}
