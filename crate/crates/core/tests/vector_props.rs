use proptest::prelude::*;

use pivot_clir::vector::{cosine, fuse_union, Fusion, TermVector};

fn sparse_vector() -> impl Strategy<Value = TermVector> {
    prop::collection::btree_map(0u8..40, 0.001f64..50.0, 0..12)
        .prop_map(|m| m.into_iter().map(|(k, v)| (format!("t{k}"), v)).collect())
}

fn non_empty_vector() -> impl Strategy<Value = TermVector> {
    sparse_vector().prop_filter("needs a term", |v| !v.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cosine_is_symmetric(a in sparse_vector(), b in sparse_vector()) {
        prop_assert!((cosine(&a, &b) - cosine(&b, &a)).abs() <= 1e-12);
    }

    #[test]
    fn cosine_is_bounded(a in sparse_vector(), b in sparse_vector()) {
        let c = cosine(&a, &b);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c), "{c}");
    }

    #[test]
    fn cosine_ignores_scale(a in sparse_vector(), b in sparse_vector(), k in 0.01f64..100.0) {
        prop_assert!((cosine(&a.scaled(k), &b) - cosine(&a, &b)).abs() <= 1e-9);
    }

    #[test]
    fn self_similarity_is_one(a in non_empty_vector()) {
        prop_assert!((cosine(&a, &a) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn union_commutes(a in sparse_vector(), b in sparse_vector(), wa in 0.0f64..3.0, wb in 0.0f64..3.0) {
        for rule in [Fusion::Max, Fusion::Sum] {
            prop_assert_eq!(fuse_union(&a, &b, wa, wb, rule), fuse_union(&b, &a, wb, wa, rule));
        }
    }

    #[test]
    fn max_union_is_idempotent(a in sparse_vector()) {
        prop_assert_eq!(fuse_union(&a, &a, 1.0, 1.0, Fusion::Max), a);
    }

    #[test]
    fn union_support_is_union(a in sparse_vector(), b in sparse_vector()) {
        let f = fuse_union(&a, &b, 1.0, 1.0, Fusion::Max);
        let mut want: Vec<&str> = a.terms().chain(b.terms()).collect();
        want.sort();
        want.dedup();
        prop_assert_eq!(f.terms().collect::<Vec<_>>(), want);
    }
}

#[test]
fn empty_vectors_score_zero() {
    let a: TermVector = [("x".to_owned(), 1.0)].into_iter().collect();
    assert_eq!(cosine(&a, &TermVector::new()), 0.0);
    assert_eq!(cosine(&TermVector::new(), &TermVector::new()), 0.0);
}
