//! Sparse term vectors: TF-IDF weighting, cosine similarity and channel
//! fusion.

use std::collections::BTreeMap;

/// Sparse map from stem to a strictly positive weight. Zero weights are never
/// stored, so the key set is the vector's support.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TermVector {
    entries: BTreeMap<String, f64>,
}

impl TermVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `weight` for `term`, dropping non-positive or non-finite weights.
    pub fn insert(&mut self, term: impl Into<String>, weight: f64) {
        let term = term.into();
        if weight > 0.0 && weight.is_finite() {
            self.entries.insert(term, weight);
        } else {
            self.entries.remove(&term);
        }
    }

    pub fn get(&self, term: &str) -> Option<f64> {
        self.entries.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn norm(&self) -> f64 {
        self.entries.values().map(|w| w * w).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &TermVector) -> f64 {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .filter_map(|(t, w)| large.entries.get(t).map(|v| w * v))
            .sum()
    }

    /// Every weight multiplied by `c` (`c > 0`).
    pub fn scaled(&self, c: f64) -> TermVector {
        let mut out = TermVector::new();
        for (t, w) in self.iter() {
            out.insert(t, w * c);
        }
        out
    }

    /// Terms by descending weight, ties by term.
    pub fn top_terms(&self, n: usize) -> Vec<(&str, f64)> {
        let mut all: Vec<_> = self.iter().collect();
        all.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        all.truncate(n);
        all
    }
}

impl FromIterator<(String, f64)> for TermVector {
    fn from_iter<I: IntoIterator<Item = (String, f64)>>(iter: I) -> Self {
        let mut v = TermVector::new();
        for (t, w) in iter {
            v.insert(t, w);
        }
        v
    }
}

/// Corpus size and per-term document frequency, as needed for IDF.
pub trait CorpusStats {
    fn doc_count(&self) -> usize;
    fn doc_freq(&self, term: &str) -> Option<usize>;
}

pub fn term_frequencies<S: AsRef<str>>(stems: &[S]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for s in stems {
        *counts.entry(s.as_ref().to_owned()).or_insert(0) += 1;
    }
    counts
}

/// `tf * ln(n / df)`.
///
/// Panics unless `1 <= df <= n`; unknown terms must be filtered first.
pub fn tfidf_weight(tf: usize, df: usize, n: usize) -> f64 {
    assert!(
        df >= 1 && df <= n,
        "document frequency {df} outside 1..={n}"
    );
    if tf == 0 || df == n {
        return 0.0;
    }
    tf as f64 * (n as f64 / df as f64).ln()
}

/// TF-IDF vector for an analyzed text. Terms unknown to `stats`, and terms
/// present in every document, get no entry.
pub fn build_vector<S: AsRef<str>>(stems: &[S], stats: &impl CorpusStats) -> TermVector {
    let n = stats.doc_count();
    let mut v = TermVector::new();
    for (term, tf) in term_frequencies(stems) {
        let Some(df) = stats.doc_freq(&term) else {
            continue;
        };
        let w = tfidf_weight(tf, df, n);
        if w > 0.0 {
            v.insert(term, w);
        }
    }
    v
}

/// Cosine of the angle between `a` and `b`; 0 when either is empty.
pub fn cosine(a: &TermVector, b: &TermVector) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        return 0.0;
    }
    a.dot(b) / denom
}

/// How overlapping terms combine when two channel vectors are fused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fusion {
    #[default]
    Max,
    Sum,
}

impl std::str::FromStr for Fusion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(Fusion::Max),
            "sum" => Ok(Fusion::Sum),
            other => Err(format!(
                "unknown fusion rule {other:?} (expected max or sum)"
            )),
        }
    }
}

/// Union of two weighted vectors. A zero weight drops that side entirely.
///
/// Panics on a negative or non-finite weight.
pub fn fuse_union(
    a: &TermVector,
    b: &TermVector,
    weight_a: f64,
    weight_b: f64,
    rule: Fusion,
) -> TermVector {
    assert!(
        weight_a >= 0.0 && weight_b >= 0.0 && weight_a.is_finite() && weight_b.is_finite(),
        "channel weights must be finite and non-negative"
    );
    let mut out = TermVector::new();
    for (t, w) in a.iter() {
        out.insert(t, weight_a * w);
    }
    for (t, w) in b.iter() {
        let scaled = weight_b * w;
        let merged = match (out.get(t), rule) {
            (None, _) => scaled,
            (Some(prev), Fusion::Max) => prev.max(scaled),
            (Some(prev), Fusion::Sum) => prev + scaled,
        };
        out.insert(t, merged);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn tv(pairs: &[(&str, f64)]) -> TermVector {
        pairs.iter().map(|(t, w)| (t.to_string(), *w)).collect()
    }

    struct Stats(usize, HashMap<&'static str, usize>);

    impl CorpusStats for Stats {
        fn doc_count(&self) -> usize {
            self.0
        }
        fn doc_freq(&self, term: &str) -> Option<usize> {
            self.1.get(term).copied()
        }
    }

    #[test]
    fn frequencies() {
        assert!(term_frequencies::<&str>(&[]).is_empty());
        let f = term_frequencies(&["важн", "важн", "важн"]);
        assert_eq!(f.get("важн"), Some(&3));
        let f = term_frequencies(&["a", "b", "a"]);
        assert_eq!((f["a"], f["b"]), (2, 1));
    }

    #[test]
    fn tfidf_values() {
        assert_eq!(tfidf_weight(0, 5, 100), 0.0);
        assert_eq!(tfidf_weight(1, 100, 100), 0.0);
        assert!((tfidf_weight(3, 1, 100) - 13.815510557964274).abs() < 1e-12);
    }

    #[test]
    #[should_panic]
    fn tfidf_rejects_unknown_term() {
        tfidf_weight(1, 0, 10);
    }

    #[test]
    #[should_panic]
    fn tfidf_rejects_df_above_n() {
        tfidf_weight(1, 11, 10);
    }

    #[test]
    fn vector_building() {
        let stats = Stats(2, HashMap::from([("важн", 1), ("общ", 2)]));
        assert!(build_vector::<&str>(&[], &stats).is_empty());
        let v = build_vector(&["важн"], &stats);
        assert!((v.get("важн").unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(build_vector(&["неизвестно"], &stats).is_empty());
        // df == N carries no weight and is not stored
        assert!(build_vector(&["общ", "общ"], &stats).is_empty());
    }

    #[test]
    fn cosine_examples() {
        assert!((cosine(&tv(&[("x", 2.0)]), &tv(&[("x", 2.0)])) - 1.0).abs() < 1e-15);
        assert_eq!(cosine(&tv(&[("x", 1.0)]), &tv(&[("y", 1.0)])), 0.0);
        let c = cosine(&tv(&[("x", 1.0), ("y", 1.0)]), &tv(&[("x", 1.0)]));
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(cosine(&TermVector::new(), &tv(&[("x", 1.0)])), 0.0);
    }

    #[test]
    fn fusion_examples() {
        let u = fuse_union(
            &tv(&[("x", 1.0)]),
            &tv(&[("y", 2.0)]),
            1.0,
            1.0,
            Fusion::Max,
        );
        assert_eq!(u, tv(&[("x", 1.0), ("y", 2.0)]));

        let a = tv(&[("x", 3.0), ("y", 1.0)]);
        assert_eq!(fuse_union(&a, &a, 1.0, 1.0, Fusion::Max), a);

        let b = tv(&[("x", 2.0), ("z", 4.0)]);
        assert_eq!(
            fuse_union(&a, &b, 1.0, 1.0, Fusion::Max),
            tv(&[("x", 3.0), ("y", 1.0), ("z", 4.0)])
        );
        assert_eq!(
            fuse_union(&a, &b, 1.0, 1.0, Fusion::Sum),
            tv(&[("x", 5.0), ("y", 1.0), ("z", 4.0)])
        );
        assert_eq!(fuse_union(&a, &b, 0.0, 1.0, Fusion::Max), b);
        assert_eq!(
            fuse_union(&a, &b, 2.0, 0.5, Fusion::Max),
            tv(&[("x", 6.0), ("y", 2.0), ("z", 2.0)])
        );
    }

    #[test]
    #[should_panic]
    fn fusion_rejects_negative_weight() {
        fuse_union(
            &TermVector::new(),
            &TermVector::new(),
            -1.0,
            1.0,
            Fusion::Max,
        );
    }

    #[test]
    fn insert_drops_zero() {
        let mut v = tv(&[("x", 1.0)]);
        v.insert("x", 0.0);
        assert!(v.is_empty());
    }

    #[test]
    fn top_terms_order() {
        let v = tv(&[("b", 1.0), ("a", 1.0), ("c", 3.0)]);
        assert_eq!(v.top_terms(2), vec![("c", 3.0), ("a", 1.0)]);
    }
}
