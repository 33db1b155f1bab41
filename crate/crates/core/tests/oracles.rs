mod common;

use std::collections::BTreeSet;

use common::*;
use quandles::enumerate::{
    are_isomorphic, canonical_form, count_quandles, enumerate_parallel, enumerate_quandles, EnumerationTask, Predicate,
};

fn enumerated(n: usize) -> BTreeSet<Raw> {
    enumerate_quandles(&EnumerationTask::new(n)).unwrap().iter().map(to_raw).collect()
}

/// Counts confirmed by the oracles below, frozen as regression values.
const LABELLED: [usize; 6] = [1, 1, 5, 36, 404, 6658];
const CLASSES: [usize; 6] = [1, 1, 3, 7, 22, 73];

#[test]
fn order_three_matches_exhaustive_filter() {
    let naive = all_tables_filter(3);
    assert_eq!(enumerated(3), naive);
    assert_eq!(classes(naive).len(), 3);
}

#[test]
fn small_orders_match_column_products() {
    for n in 1..=5 {
        let oracle = column_product_filter(n);
        assert_eq!(oracle.len(), LABELLED[n - 1], "order {n}");
        assert_eq!(enumerated(n), oracle, "order {n}");
    }
}

#[test]
fn order_six_matches_column_backtracking() {
    let oracle: BTreeSet<Raw> = column_backtrack(6).into_iter().collect();
    assert_eq!(oracle.len(), LABELLED[5]);
    assert!(oracle.iter().all(is_quandle));
    assert_eq!(enumerated(6), oracle);
}

#[test]
fn class_counts_match_naive_canonical_forms() {
    for n in 1..=6 {
        let naive = classes(column_backtrack(n));
        assert_eq!(naive.len(), CLASSES[n - 1], "order {n}");
        let reps: BTreeSet<Raw> =
            enumerate_quandles(&EnumerationTask::new(n).up_to_iso(true)).unwrap().iter().map(|q| naive_canonical(&to_raw(q))).collect();
        assert_eq!(reps, naive, "order {n}");
    }
}

#[test]
fn orbit_stabilizer_sum() {
    for n in 1..=6 {
        let reps = enumerate_quandles(&EnumerationTask::new(n).up_to_iso(true)).unwrap();
        let fact: usize = (1..=n).product();
        let total: usize = reps.iter().map(|q| fact / automorphism_count(&to_raw(q))).sum();
        assert_eq!(total, LABELLED[n - 1], "order {n}");
    }
}

#[test]
fn frozen_counts() {
    assert_eq!(count_quandles(6, false).unwrap(), LABELLED);
    assert_eq!(count_quandles(6, true).unwrap(), CLASSES);
}

#[test]
fn canonical_form_agrees_with_naive_classes() {
    // Two tables share a canonical form exactly when they share a naive one.
    for n in 1..=5 {
        let tables = enumerate_quandles(&EnumerationTask::new(n)).unwrap();
        let mut pairs = BTreeSet::new();
        for q in &tables {
            pairs.insert((to_raw(&canonical_form(q)), naive_canonical(&to_raw(q))));
        }
        let ours: BTreeSet<_> = pairs.iter().map(|p| p.0.clone()).collect();
        let theirs: BTreeSet<_> = pairs.iter().map(|p| p.1.clone()).collect();
        assert_eq!(ours.len(), pairs.len());
        assert_eq!(theirs.len(), pairs.len());
    }
}

#[test]
fn isomorphism_test_agrees_with_naive_classes() {
    let tables = enumerate_quandles(&EnumerationTask::new(4)).unwrap();
    let naive: Vec<Raw> = tables.iter().map(|q| naive_canonical(&to_raw(q))).collect();
    for (a, ca) in tables.iter().zip(&naive).step_by(3) {
        for (b, cb) in tables.iter().zip(&naive) {
            let found = are_isomorphic(a, b);
            assert_eq!(found.is_some(), ca == cb);
            if let Some(sigma) = found {
                assert_eq!(&a.relabel(&sigma).unwrap(), b);
            }
        }
    }
}

#[test]
fn filters_match_oracle_predicates() {
    for n in 1..=6 {
        let all = column_backtrack(n);
        for (pred, oracle) in [(Predicate::Latin, is_latin as fn(&Raw) -> bool), (Predicate::Connected, is_connected)] {
            let expected: BTreeSet<Raw> = all.iter().filter(|t| oracle(t)).cloned().collect();
            let got: BTreeSet<Raw> =
                enumerate_quandles(&EnumerationTask::new(n).filter(Some(pred))).unwrap().iter().map(to_raw).collect();
            assert_eq!(got, expected, "order {n} {pred:?}");
        }
    }
}

#[test]
fn parallel_matches_sequential() {
    for n in [4, 5] {
        let mut seq = enumerate_quandles(&EnumerationTask::new(n)).unwrap();
        seq.sort();
        assert_eq!(enumerate_parallel(&EnumerationTask::new(n), 3).unwrap(), seq);
    }
}

#[test]
fn published_transcription_is_self_consistent() {
    // Every repeat-free connected quandle is latin, so the index lists add
    // up to the number of latin quandles with distinct cycle lengths.
    let listed: usize = REPEAT_FREE_PUBLISHED.iter().map(|(_, m, _)| expand_indices(m).len()).sum();
    assert_eq!(listed, 183);
    for (_, m, _) in REPEAT_FREE_PUBLISHED {
        let idx = expand_indices(m);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(quandles::catalog::compress_indices(&idx), *m);
    }
    for (n, m, profile) in REPEAT_FREE_PUBLISHED {
        let cs: quandles::CycleStructure = profile.parse().unwrap();
        assert_eq!(cs.degree() + 1, *n, "{n} {m}");
        assert!(cs.has_distinct_cycle_lengths());
    }
    for (n, profiles) in REPEATED_PUBLISHED {
        for p in *profiles {
            let cs: quandles::CycleStructure = p.parse().unwrap();
            assert_eq!(cs.degree() + 1, *n, "{n} {p}");
            assert!(!cs.has_distinct_cycle_lengths());
        }
    }
}
